#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "b4nls/evolution.hpp"
#include "b4nls/groundstate.hpp"

namespace b4nls {

/// Piecewise step-refinement schedule. Integration proceeds in windows of at
/// most steps_per_window uniform steps; the step halves for the next window
/// once the sup norm grew by growth_trigger within one, and a window whose
/// local energy drift exceeds window_drift_tol is rolled back and re-run at
/// half the step. The step never drops below h_floor.
struct RefineSchedule {
    double t_end = 1.0;
    long initial_steps = 10000;  // over [t0, t_end]; sets the starting step
    long steps_per_window = 2000;
    double growth_trigger = 2.0;
    double step_shrink = 0.5;
    double h_floor = 1e-10;
    double window_drift_tol = 1e-5;
    long max_windows = 100000;
    bool keep_snapshots = true; // store the field at each refinement event
};

/// Integrate toward blow-up with piecewise-refined uniform steps. Terminates
/// on the global energy-drift criterion (resolution exhausted), on the
/// amplitude abort threshold of cfg, or when t_end is reached (interpreted by
/// the caller as non-blow-up). The returned trace concatenates all windows;
/// snapshots hold the field at each step-halving event plus the final state.
EvolutionTrace refine_to_blowup(const Field& u0, const EvolutionConfig& cfg,
                                const RefineSchedule& schedule);

struct RateFitParams {
    double window_amp_factor = 10.0; // records with linf >= factor * initial
    bool auto_relax_window = true;   // relax the factor until enough records
    std::size_t min_records = 20;
    std::size_t drop_last = 3;
    double bracket_multiplier = 10.0; // upper bracket: 10 * h_last * n_window
    double scan_abs_tol = 1e-12;
};

struct TstarFit {
    double t_star = 0.0;
    double gamma_linf = 0.0; // slope of log ||u||_inf vs -log(t*-t)
    double rms = 0.0;
    std::array<double, 2> window{0.0, 0.0};
    double window_factor_used = 0.0;
    std::size_t n_records = 0;
};

/// Scan candidate blow-up times t* > t_last, minimizing the RMS of the
/// linear regression of log ||u||_inf against log(t* - t) over the fit
/// window. Throws FitError when the terminal growth cannot support a fit.
TstarFit estimate_tstar(const EvolutionTrace& trace, const RateFitParams& params = {},
                        std::optional<double> model_exponent_hint = std::nullopt);

struct RateFit {
    double gamma_linf = 0.0;
    double gamma_h2 = 0.0;
    double rms_linf = 0.0;
    double rms_h2 = 0.0;
    std::array<double, 2> window{0.0, 0.0};
    double window_factor_used = 0.0;
};

/// Least-squares slopes of log ||u||_inf and log ||u_xx||_2 against
/// -log(t* - t) over the fit window.
RateFit fit_rates(const EvolutionTrace& trace, double t_star,
                  const RateFitParams& params = {});

struct ProfileFit {
    double b_scale = 0.0;        // (b')^(1/alpha) = max|u| / max Q0
    double sup_difference = 0.0; // over the core window |x - x_peak| <= 5 (b')^(-1/4)
    double rel_sup_difference = 0.0; // sup_difference / max|u|
    double core_halfwidth = 0.0;
    double x_peak = 0.0;
    double t_snapshot = 0.0;
    Field difference; // |u| - Q_b' on u's grid
};

/// Fit |u| against the rescaled scale-invariant ground state: the scaling
/// factor comes from the amplitude ratio, the rescaled profile is centered at
/// the (sub-grid refined) argmax of |u|.
ProfileFit fit_profile(const Field& u, const GroundState& q0, double t_snapshot = 0.0);

/// lambda(t) = (max Q0 / ||u(t)||_inf)^(alpha/4) along the trace records.
std::vector<std::pair<double, double>> lambda_trace(const EvolutionTrace& trace,
                                                    const GroundState& q0);

/// Classify the decay of (ln lambda)_tau as algebraic (critical-type) or
/// exponential (supercritical-type) by comparing the residuals of the two
/// one-parameter models over the fit window.
std::string classify_lambda_decay(const EvolutionTrace& trace, const GroundState& q0,
                                  double t_star, const RateFitParams& params = {});

struct ProfileFitSummary {
    double t_snapshot = 0.0;
    double b_scale = 0.0;
    double sup_difference = 0.0;
    double rel_sup_difference = 0.0;
};

struct BlowupReport {
    std::string verdict; // blowup | completed | energy_drift_abort
    std::optional<double> t_star;
    std::optional<double> rate_linf;
    std::optional<double> rate_h2;
    std::array<double, 2> fit_window{0.0, 0.0};
    double window_amp_factor = 0.0;
    double fit_rms_linf = 0.0;
    double fit_rms_h2 = 0.0;
    std::vector<ProfileFitSummary> profile_fits; // last snapshots, oldest first
    std::string lambda_class; // algebraic | exponential | (empty if no fit)
    std::string fit_failure;  // diagnostic when fits were not possible
};

/// Assemble the report from a finished trace: t* estimation, rate fits,
/// profile fits on the last (up to three) snapshots, and the lambda-decay
/// class. Fit failures are recorded instead of thrown.
BlowupReport analyze_blowup(const EvolutionTrace& trace, const GroundState& q0,
                            const RateFitParams& params = {});

/// The reduced self-similar profile equation in the critical case is the
/// stationary problem with a = 0; the reference profile is therefore obtained
/// through the very same solver operation.
GroundState solve_profile_reference(double alpha, double b, GridPtr grid);

} // namespace b4nls
