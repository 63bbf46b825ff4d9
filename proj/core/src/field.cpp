#include "b4nls/field.hpp"

#include <cmath>

#include "b4nls/errors.hpp"

namespace b4nls {

Field::Field(GridPtr grid, std::vector<cplx> physical)
    : grid_(std::move(grid)), phys_(std::move(physical)) {
    if (!grid_)
        throw ConfigError("field: null grid");
    if (phys_.size() != grid_->size())
        throw ConfigError("field: sample count does not match grid size");
}

Field Field::from_spectrum(GridPtr grid, std::vector<cplx> spectrum) {
    if (!grid)
        throw ConfigError("field: null grid");
    if (spectrum.size() != grid->size())
        throw ConfigError("field: spectrum size does not match grid size");
    Field f(grid, grid->inverse(spectrum));
    f.spec_ = std::move(spectrum);
    f.have_spec_ = true;
    return f;
}

Field Field::sample(GridPtr grid, const std::function<cplx(double)>& f) {
    if (!grid)
        throw ConfigError("field: null grid");
    std::vector<cplx> v(grid->size());
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = f(grid->x(j));
    return Field(std::move(grid), std::move(v));
}

Field Field::sample_real(GridPtr grid, const std::function<double(double)>& f) {
    return sample(std::move(grid), [&f](double x) { return cplx(f(x), 0.0); });
}

Field Field::zero(GridPtr grid) {
    if (!grid)
        throw ConfigError("field: null grid");
    std::vector<cplx> v(grid->size(), cplx(0.0, 0.0));
    return Field(std::move(grid), std::move(v));
}

const std::vector<cplx>& Field::spectrum() const {
    if (!have_spec_) {
        grid_->forward_inplace(phys_, spec_);
        have_spec_ = true;
    }
    return spec_;
}

Field Field::real_part() const {
    std::vector<cplx> v(phys_.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = cplx(phys_[j].real(), 0.0);
    return Field(grid_, std::move(v));
}

bool Field::is_finite() const {
    for (const auto& v : phys_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

} // namespace b4nls
