#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace b4nls {

struct GmresParams {
    double rel_tol = 1e-3;
    int restart = 30;
    int max_iters = 200;
};

struct GmresResult {
    std::vector<std::complex<double>> x;
    double rel_residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Restarted GMRES for a matrix-free complex-linear operator, with modified
/// Gram-Schmidt Arnoldi and Givens rotations on the Hessenberg system.
/// Zero initial guess; returns the last iterate even when the tolerance was
/// not met (callers decide whether a partially converged step is usable).
GmresResult gmres(
    const std::function<void(const std::vector<std::complex<double>>&,
                             std::vector<std::complex<double>>&)>& apply,
    const std::vector<std::complex<double>>& rhs, const GmresParams& params);

} // namespace b4nls
