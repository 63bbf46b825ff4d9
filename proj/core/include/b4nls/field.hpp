#pragma once

#include <functional>
#include <vector>

#include "b4nls/grid.hpp"

namespace b4nls {

/// Complex-valued state on a Grid, addressable in physical and spectral form.
///
/// A Field is immutable after construction. The spectral view is derived
/// lazily from the physical samples and cached; do not share one instance
/// across threads while the cache is cold (independent instances are fine).
class Field {
public:
    Field(GridPtr grid, std::vector<cplx> physical);

    static Field from_spectrum(GridPtr grid, std::vector<cplx> spectrum);
    static Field sample(GridPtr grid, const std::function<cplx(double)>& f);
    static Field sample_real(GridPtr grid, const std::function<double(double)>& f);
    static Field zero(GridPtr grid);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::size_t size() const { return phys_.size(); }

    const std::vector<cplx>& values() const { return phys_; }
    const std::vector<cplx>& spectrum() const;

    /// Real part as a new field.
    Field real_part() const;

    bool is_finite() const;

private:
    GridPtr grid_;
    std::vector<cplx> phys_;
    mutable std::vector<cplx> spec_;
    mutable bool have_spec_ = false;
};

} // namespace b4nls
