#include "b4nls/etdrk4.hpp"

#include <array>
#include <cmath>

#include "b4nls/errors.hpp"

namespace b4nls {

namespace {

constexpr int kContourPoints = 32;
constexpr double kContourRadius = 1.0;
constexpr double kContourSwitch = 0.5;

// Closed forms with a removable singularity at z = 0.
std::array<cplx, 4> raw_coefficients(cplx w) {
    const cplx w3 = w * w * w;
    const cplx ew = std::exp(w);
    const cplx q = (std::exp(0.5 * w) - 1.0) / w;
    const cplx f1 = (-4.0 - w + ew * (4.0 - 3.0 * w + w * w)) / w3;
    const cplx f2 = (2.0 + w + ew * (w - 2.0)) / w3;
    const cplx f3 = (-4.0 - 3.0 * w - w * w + ew * (4.0 - w)) / w3;
    return {q, f1, f2, f3};
}

} // namespace

std::array<cplx, 4> etd_coefficient_functions(cplx z) {
    if (std::abs(z) >= kContourSwitch)
        return raw_coefficients(z);
    // mean over a circle of radius 1 centered at z keeps the evaluation away
    // from the z^3 cancellation
    std::array<cplx, 4> acc{};
    for (int j = 0; j < kContourPoints; ++j) {
        const double theta = Grid::pi() * (2.0 * j + 1.0) / kContourPoints;
        const cplx w = z + kContourRadius * std::polar(1.0, theta);
        const auto c = raw_coefficients(w);
        for (int q = 0; q < 4; ++q) acc[q] += c[q];
    }
    for (auto& v : acc) v /= static_cast<double>(kContourPoints);
    return acc;
}

EtdWeights phi_weights(const std::vector<cplx>& symbol, double h) {
    if (!(h > 0.0))
        throw ConfigError("etdrk4: step h must be positive");
    const std::size_t n = symbol.size();
    EtdWeights w;
    w.E.resize(n);
    w.E2.resize(n);
    w.Qw.resize(n);
    w.f1.resize(n);
    w.f2.resize(n);
    w.f3.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        const cplx z = symbol[m] * h;
        w.E[m] = std::exp(z);
        w.E2[m] = std::exp(0.5 * z);
        const auto c = etd_coefficient_functions(z);
        w.Qw[m] = h * c[0];
        w.f1[m] = h * c[1];
        w.f2[m] = h * c[2];
        w.f3[m] = h * c[3];
    }
    return w;
}

std::vector<cplx> evolution_symbol(const Grid& g, double a) {
    std::vector<cplx> L(g.size());
    for (std::size_t m = 0; m < L.size(); ++m) {
        const double k2 = g.k(m) * g.k(m);
        L[m] = cplx(0.0, -(k2 * k2 - 2.0 * a * k2));
    }
    return L;
}

} // namespace b4nls
