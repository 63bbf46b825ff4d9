#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "b4nls/field.hpp"
#include "b4nls/spectral.hpp"

namespace b4nls::testing {

inline double sup_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double sup_abs(const std::vector<cplx>& a) {
    double m = 0.0;
    for (const auto& z : a) m = std::max(m, std::abs(z));
    return m;
}

/// Random band-limited field with geometrically decaying coefficients;
/// deterministic for a fixed seed.
inline Field random_smooth_field(GridPtr grid, unsigned seed, double decay = 0.35) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::size_t N = grid->size();
    std::vector<cplx> spec(N, cplx(0.0, 0.0));
    for (std::size_t m = 0; m < N; ++m) {
        const double mm = (m < N / 2) ? static_cast<double>(m)
                                      : static_cast<double>(N) - static_cast<double>(m);
        const double amp = std::exp(-decay * mm);
        spec[m] = amp * cplx(unit(rng), unit(rng));
    }
    spec[N / 2] = cplx(0.0, 0.0);
    return Field::from_spectrum(std::move(grid), std::move(spec));
}

/// Plain O(N^2) DFT used as an independent oracle for the FFT-based paths.
inline std::vector<cplx> dft_reference(const std::vector<cplx>& u) {
    const std::size_t N = u.size();
    std::vector<cplx> out(N, cplx(0.0, 0.0));
    const double w = -2.0 * Grid::pi() / static_cast<double>(N);
    for (std::size_t m = 0; m < N; ++m)
        for (std::size_t j = 0; j < N; ++j)
            out[m] += u[j] * std::polar(1.0, w * static_cast<double>(j * m % N));
    return out;
}

} // namespace b4nls::testing
