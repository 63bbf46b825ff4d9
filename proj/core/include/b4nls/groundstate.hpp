#pragma once

#include <array>
#include <optional>

#include "b4nls/field.hpp"
#include "b4nls/gmres.hpp"

namespace b4nls {

/// Parameters of the stationary problem
///   Q'''' + 2a Q'' + b Q - |Q|^alpha Q = 0
/// together with the iteration controls of the spectral fixed-point solver.
struct GroundStateProblem {
    double alpha = 8.0;
    double a = 0.0;
    double b = 2.0;
    GridPtr grid;

    /// Starting profile; when absent, initial_amplitude * exp(-x^2) is used.
    std::optional<Field> initial_iterate;
    double initial_amplitude = 1.5;

    double newton_tol = 1e-10;          // stop when ||F||_inf drops below
    /// Relaxed update factor. When unset, full Newton steps are taken and the
    /// factor drops to 0.1 automatically once steps stop descending.
    std::optional<double> relaxation;
    int max_newton_iters = 500;
    GmresParams gmres;

    /// Throws ConfigError unless b > 0 and the symbol k^4 - 2ak^2 + b is
    /// positive for all k (for a > 0 this requires b > a^2).
    void validate() const;

    Field starting_iterate() const;
};

/// Converged solitary-wave profile with its scalar diagnostics.
///
/// residual_sup is reported in the continuum Fourier normalization (the raw
/// DFT residual times the grid spacing), so tolerances are grid-independent.
struct GroundState {
    Field profile;
    GroundStateProblem problem;
    double residual_sup = 0.0;
    int iterations = 0;

    struct Scalars {
        double mass = 0.0;       // M = ||Q||_2^2
        double energy = 0.0;     // E[Q]
        double linf = 0.0;       // ||Q||_inf
        double lp_alpha2 = 0.0;  // ||Q||_{alpha+2}^{alpha+2}
        double grad_sq = 0.0;    // ||Q_x||_2^2
        double h2_sq = 0.0;      // ||Q_xx||_2^2
    } scalars;
};

/// F(Q_hat) = Q_hat - fft(|Q|^alpha Q) / (k^4 - 2a k^2 + b), the spectral
/// fixed-point residual. Input and output are spectra on p.grid.
std::vector<cplx> fixed_point_residual(const std::vector<cplx>& q_hat,
                                       const GroundStateProblem& p);
Field fixed_point_residual(const Field& q, const GroundStateProblem& p);

/// Frechet derivative of the fixed-point map at the (real) profile q,
/// applied to the spectral perturbation v_hat:
///   v_hat - fft((alpha+1) |q|^alpha * v) / (k^4 - 2a k^2 + b).
std::vector<cplx> jacobian_apply(const std::vector<cplx>& v_hat,
                                 const std::vector<cplx>& q_phys,
                                 const GroundStateProblem& p);

/// Newton--GMRES solve of F(Q_hat) = 0 with per-iterate projection onto
/// real, even, positive-peak profiles and relaxed updates.
/// Throws SolveError when max_newton_iters is exhausted.
GroundState solve(const GroundStateProblem& p);

/// Closed-form solitary waves (alpha in {2, 8, 10}, a < 0) sampled on grid,
/// returned with the matching b.
GroundState exact_solution(double alpha, double a, GridPtr grid);

/// Residuals of the four integral identities any true ground state satisfies
/// (two Pokhozhaev identities and two mass/energy relations).
std::array<double, 4> pokhozhaev_residuals(const GroundState& g);

/// Scale magnitudes of the identity constituents, index-matched with
/// pokhozhaev_residuals; use for relative tolerance checks.
std::array<double, 4> pokhozhaev_scales(const GroundState& g);

/// For a = 0 only: maps g to the family member with frequency b_new through
///   Q_b(x) = (b_new/b)^(1/alpha) Q((b_new/b)^(1/4) x),
/// resampled spectrally onto the same grid.
GroundState rescale(const GroundState& g, double b_new);

/// Compute the Scalars block for an arbitrary profile.
GroundState::Scalars ground_state_scalars(const Field& q, double a, double alpha);

} // namespace b4nls
