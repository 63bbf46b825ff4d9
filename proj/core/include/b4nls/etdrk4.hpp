#pragma once

#include <vector>

#include "b4nls/grid.hpp"

namespace b4nls {

/// Per-mode coefficients of the fourth-order Cox--Matthews exponential
/// time-differencing Runge--Kutta scheme for u_hat' = L u_hat + N(u_hat):
///   an = E2 u + Qw N(u)
///   bn = E2 u + Qw N(an)
///   cn = E2 an + Qw (2 N(bn) - N(u))
///   u+ = E u + f1 N(u) + 2 f2 (N(an) + N(bn)) + f3 N(cn)
struct EtdWeights {
    std::vector<cplx> E;   // exp(L h)
    std::vector<cplx> E2;  // exp(L h / 2)
    std::vector<cplx> Qw;  // h * phi1(L h / 2) / 2
    std::vector<cplx> f1;
    std::vector<cplx> f2;
    std::vector<cplx> f3;
};

/// Evaluate the weights for the diagonal symbol values `symbol` (the L per
/// mode) and step h. Small |L h| (< 0.5) is handled by averaging the closed
/// forms over 32 points on a unit circle around L h; elsewhere the closed
/// forms are evaluated directly.
EtdWeights phi_weights(const std::vector<cplx>& symbol, double h);

/// The four closed-form coefficient functions at a single (complex) z = L h,
/// with the contour / direct switch applied. Returned in the order
/// {Qw/h, f1/h, f2/h, f3/h}. Exposed for verification.
std::array<cplx, 4> etd_coefficient_functions(cplx z);

/// The linear symbol of the evolution: L_m = -i (k^4 - 2 a k^2).
std::vector<cplx> evolution_symbol(const Grid& g, double a);

} // namespace b4nls
