#pragma once

#include <span>
#include <vector>

#include "b4nls/field.hpp"

namespace b4nls {

/// Spectral differentiation: multiplies u_hat by (i*k)^order.
/// Even orders keep the real Nyquist multiplier ((i*k)^order is real);
/// for odd orders the -N/2 mode coefficient is zeroed.
Field derivative(const Field& f, int order);

/// Per-mode derivative multipliers (i*k)^order with the Nyquist rule above.
std::vector<cplx> derivative_symbol(const Grid& g, int order);

/// integral |f|^2 dx by the uniform-grid rectangle rule (weight h).
double mass(const Field& f);

/// E[f] = 1/2 int |f_xx|^2 - a int |f_x|^2 - 1/(alpha+2) int |f|^(alpha+2),
/// derivatives evaluated spectrally.
double energy(const Field& f, double a, double alpha);

/// (integral |f|^p dx)^(1/p); requires p >= 1.
double lp_norm(const Field& f, double p);

/// integral |f|^p dx without the root (the "potential" term uses p=alpha+2).
double lp_norm_pow(const Field& f, double p);

/// L2 norm of the second derivative.
double h2_seminorm(const Field& f);

double linf_norm(const Field& f);

/// Resolution indicator: max |u_hat| over the top 10% of |k| modes,
/// normalized by max |u_hat| overall. Returns 0 for the zero field.
double tail_level(const Field& f);

/// Evaluate the trigonometric interpolant of f at arbitrary points
/// (Nyquist mode treated as a cosine so real data stays real).
std::vector<cplx> sample_interpolant(const Field& f, std::span<const double> points);
cplx sample_interpolant_at(const Field& f, double x);

/// Resample f onto another grid through the trigonometric interpolant.
Field resample(const Field& f, GridPtr target);

/// Circular shift by an integer number of grid cells (positive = toward +x).
Field circular_shift(const Field& f, long cells);

// --- raw-buffer helpers used by the solvers and steppers ---------------

/// |u|^alpha * u evaluated pointwise; alpha handled fast for even integers.
class NonlinearPower {
public:
    explicit NonlinearPower(double alpha);
    double alpha() const { return alpha_; }
    /// |v|^alpha for the modulus-squared m2 = |v|^2.
    double modulus_pow(double m2) const;
    /// out_j = |v_j|^alpha * v_j
    void apply(const std::vector<cplx>& v, std::vector<cplx>& out) const;

private:
    double alpha_;
    int half_;      // alpha/2 when alpha is a small even integer, else -1
};

/// Quadratic norms straight from a spectrum via the discrete Parseval
/// identity: int |d^p u/dx^p|^2 dx = (h/N) sum |sym_m|^2 |u_hat_m|^2.
double quadratic_norm_sq_from_spectrum(const Grid& g, const std::vector<cplx>& spec,
                                       int deriv_order);

double tail_level_from_spectrum(const Grid& g, const std::vector<cplx>& spec);

} // namespace b4nls
