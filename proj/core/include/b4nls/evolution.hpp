#pragma once

#include <optional>
#include <string>
#include <vector>

#include "b4nls/field.hpp"
#include "b4nls/groundstate.hpp"

namespace b4nls {

struct EvolutionConfig {
    double alpha = 8.0;
    double a = 0.0;
    GridPtr grid;
    double t0 = 0.0;
    double t1 = 1.0;
    long n_steps = 1000;
    long monitor_stride = 10;       // steps between diagnostic records
    double energy_abort_rel = 1e-3; // relative energy-drift abort threshold
    double linf_abort = 1e6;        // amplitude abort threshold
    bool nonlinearity_enabled = true;
    long snapshot_stride = 0; // records between stored snapshots (0 = none)

    /// Measure energy drift against this reference instead of the run's own
    /// initial energy (used by the piecewise blow-up driver).
    std::optional<double> energy_ref;
    std::optional<double> energy_scale_ref;

    /// Soft early stop (not an abort): stop stepping cleanly once the sup
    /// norm exceeds this value. Used by the refinement driver.
    std::optional<double> linf_soft_stop;

    void validate() const;
};

enum class Termination {
    Completed,
    EnergyDriftAbort,
    AmplitudeAbort,
    SoftStop, // internal to the refinement driver; public traces never end here
};

std::string to_string(Termination t);

struct EvolutionRecord {
    double t = 0.0;
    double linf = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double energy_drift_rel = 0.0;
    double h2_seminorm = 0.0;
    double tail_level = 0.0;
};

struct EvolutionTrace {
    std::vector<EvolutionRecord> records;
    std::optional<Field> final_state;
    Termination termination = Termination::Completed;
    std::vector<std::pair<double, Field>> snapshots;

    const EvolutionRecord& front() const { return records.front(); }
    const EvolutionRecord& back() const { return records.back(); }
};

/// Advance u0 with the Cox--Matthews ETDRK4 scheme over cfg's time span.
/// Records diagnostics every monitor_stride steps, aborts early on energy
/// drift or amplitude growth, and throws NumericalError on NaN/Inf.
EvolutionTrace evolve(const Field& u0, const EvolutionConfig& cfg);

/// Energy scale used as the drift denominator floor: the sum of the absolute
/// values of the three energy constituents of u.
double energy_constituent_scale(const Field& u, double a, double alpha);

// --- perturbation experiments ------------------------------------------

enum class InitialKind { AQ, Gaussian, SuperGaussian, Sech };
enum class Verdict { Disperse, ConvergeOscillate, Blowup };

std::string to_string(InitialKind k);
std::string to_string(Verdict v);

struct RefineSchedule; // defined in blowup.hpp

struct ExperimentConfig {
    InitialKind kind = InitialKind::Gaussian;
    double amplitude = 1.0;
    /// Required for kind == AQ: the ground-state problem whose solution is
    /// scaled by `amplitude`.
    std::optional<GroundStateProblem> q_problem;
    EvolutionConfig evolution;

    // refinement controls forwarded to the blow-up driver
    long refine_steps_per_window = 2000;
    double refine_growth_trigger = 2.0;
    double refine_h_floor = 1e-10;
    double refine_window_drift_tol = 1e-5;

    // classification thresholds (configuration, not claims)
    double blowup_amplitude_factor = 6.0; // amplitude abort at factor * ||u0||_inf
    double disperse_factor = 0.25;        // final sup norm below factor * initial
};

struct ExperimentResult {
    EvolutionTrace trace;
    Verdict verdict = Verdict::ConvergeOscillate;
    std::optional<GroundState> ground; // the solved Q for kind == AQ
    Field initial_state;
};

/// Build the initial datum, integrate with piecewise step refinement, and
/// classify the outcome: blow-up when the amplitude abort fired, dispersal
/// when the final sup norm fell below disperse_factor * initial with a
/// decreasing trend, oscillatory convergence otherwise.
ExperimentResult perturbation_experiment(const ExperimentConfig& cfg);

} // namespace b4nls
