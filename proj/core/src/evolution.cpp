#include "b4nls/evolution.hpp"

#include <cmath>

#include "b4nls/blowup.hpp"
#include "b4nls/errors.hpp"
#include "b4nls/etdrk4.hpp"
#include "b4nls/spectral.hpp"

namespace b4nls {

namespace {

bool all_finite(const std::vector<cplx>& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            return false;
    return true;
}

} // namespace

void EvolutionConfig::validate() const {
    if (!grid)
        throw ConfigError("evolution: grid is required");
    if (!(alpha > 0.0))
        throw ConfigError("evolution: alpha must be positive");
    if (!(t1 > t0))
        throw ConfigError("evolution: t1 must exceed t0");
    if (n_steps < 1)
        throw ConfigError("evolution: n_steps must be >= 1");
    if (monitor_stride < 1)
        throw ConfigError("evolution: monitor_stride must be >= 1");
    if (!(energy_abort_rel > 0.0))
        throw ConfigError("evolution: energy_abort_rel must be positive");
    if (!(linf_abort > 0.0))
        throw ConfigError("evolution: linf_abort must be positive");
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::Completed: return "completed";
        case Termination::EnergyDriftAbort: return "energy_drift_abort";
        case Termination::AmplitudeAbort: return "amplitude_abort";
        case Termination::SoftStop: return "soft_stop";
    }
    return "completed";
}

std::string to_string(InitialKind k) {
    switch (k) {
        case InitialKind::AQ: return "AQ";
        case InitialKind::Gaussian: return "gaussian";
        case InitialKind::SuperGaussian: return "supergaussian";
        case InitialKind::Sech: return "sech";
    }
    return "gaussian";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Disperse: return "disperse";
        case Verdict::ConvergeOscillate: return "converge_oscillate";
        case Verdict::Blowup: return "blowup";
    }
    return "converge_oscillate";
}

double energy_constituent_scale(const Field& u, double a, double alpha) {
    const auto& spec = u.spectrum();
    const double uxx2 = quadratic_norm_sq_from_spectrum(u.grid(), spec, 2);
    const double ux2 = quadratic_norm_sq_from_spectrum(u.grid(), spec, 1);
    const double pot = lp_norm_pow(u, alpha + 2.0);
    return 0.5 * uxx2 + std::abs(a) * ux2 + pot / (alpha + 2.0);
}

EvolutionTrace evolve(const Field& u0, const EvolutionConfig& cfg) {
    cfg.validate();
    if (!u0.grid().compatible_with(*cfg.grid))
        throw ConfigError("evolution: initial data lives on a different grid");

    const Grid& g = *cfg.grid;
    const std::size_t N = g.size();
    const double h = (cfg.t1 - cfg.t0) / static_cast<double>(cfg.n_steps);
    const auto L = evolution_symbol(g, cfg.a);
    const EtdWeights w = phi_weights(L, h);
    const NonlinearPower np(cfg.alpha);

    std::vector<cplx> v = u0.spectrum(); // evolving spectral state
    std::vector<cplx> phys = u0.values();

    // work buffers for the four stage evaluations
    std::vector<cplx> Nu(N), Na(N), Nb(N), Nc(N), an(N), bn(N), cn(N), tmp(N);

    // N(v_hat) = i fft(|u|^alpha u)
    auto eval_nonlinear = [&](const std::vector<cplx>& vhat, std::vector<cplx>& out) {
        if (!cfg.nonlinearity_enabled) {
            out.assign(N, cplx(0.0, 0.0));
            return;
        }
        g.inverse_inplace(vhat, tmp);
        for (std::size_t j = 0; j < N; ++j)
            tmp[j] = np.modulus_pow(std::norm(tmp[j])) * tmp[j];
        g.forward_inplace(tmp, out);
        for (auto& z : out) z *= cplx(0.0, 1.0);
    };

    EvolutionTrace trace;

    auto record_at = [&](double t) {
        g.inverse_inplace(v, phys);
        EvolutionRecord r;
        r.t = t;
        for (const auto& z : phys) r.linf = std::max(r.linf, std::abs(z));
        r.mass = quadratic_norm_sq_from_spectrum(g, v, 0);
        const double uxx2 = quadratic_norm_sq_from_spectrum(g, v, 2);
        const double ux2 = quadratic_norm_sq_from_spectrum(g, v, 1);
        double pot = 0.0;
        for (const auto& z : phys)
            pot += np.modulus_pow(std::norm(z)) * std::norm(z);
        pot *= g.spacing();
        r.energy = 0.5 * uxx2 - cfg.a * ux2 - pot / (cfg.alpha + 2.0);
        r.h2_seminorm = std::sqrt(uxx2);
        r.tail_level = tail_level_from_spectrum(g, v);
        return r;
    };

    EvolutionRecord first = record_at(cfg.t0);
    const double e_ref = cfg.energy_ref.value_or(first.energy);
    double scale0;
    if (cfg.energy_scale_ref) {
        scale0 = *cfg.energy_scale_ref;
    } else {
        const double uxx2 = quadratic_norm_sq_from_spectrum(g, v, 2);
        const double ux2 = quadratic_norm_sq_from_spectrum(g, v, 1);
        double pot = 0.0;
        for (const auto& z : phys)
            pot += np.modulus_pow(std::norm(z)) * std::norm(z);
        pot *= g.spacing();
        scale0 = 0.5 * uxx2 + std::abs(cfg.a) * ux2 + pot / (cfg.alpha + 2.0);
    }
    // drift denominator: |E_ref| unless the energy nearly cancels, then the
    // constituent scale keeps the ratio meaningful
    const double drift_denom =
        std::max({std::abs(e_ref), 1e-6 * scale0, 1e-300});

    auto finish_record = [&](EvolutionRecord r) {
        r.energy_drift_rel = std::abs(r.energy - e_ref) / drift_denom;
        trace.records.push_back(r);
        return trace.records.back();
    };
    finish_record(first);

    auto store_snapshot = [&](double t) {
        trace.snapshots.emplace_back(t, Field::from_spectrum(cfg.grid, v));
    };
    if (cfg.snapshot_stride > 0)
        store_snapshot(cfg.t0);

    long records_since_snapshot = 0;
    for (long step = 1; step <= cfg.n_steps; ++step) {
        eval_nonlinear(v, Nu);
        for (std::size_t m = 0; m < N; ++m)
            an[m] = w.E2[m] * v[m] + w.Qw[m] * Nu[m];
        eval_nonlinear(an, Na);
        for (std::size_t m = 0; m < N; ++m)
            bn[m] = w.E2[m] * v[m] + w.Qw[m] * Na[m];
        eval_nonlinear(bn, Nb);
        for (std::size_t m = 0; m < N; ++m)
            cn[m] = w.E2[m] * an[m] + w.Qw[m] * (2.0 * Nb[m] - Nu[m]);
        eval_nonlinear(cn, Nc);
        for (std::size_t m = 0; m < N; ++m)
            v[m] = w.E[m] * v[m] + w.f1[m] * Nu[m] +
                   2.0 * w.f2[m] * (Na[m] + Nb[m]) + w.f3[m] * Nc[m];

        const bool last = (step == cfg.n_steps);
        if (step % cfg.monitor_stride == 0 || last) {
            const double t = cfg.t0 + h * static_cast<double>(step);
            if (!all_finite(v)) {
                const double t_good = trace.records.back().t;
                trace.final_state = Field::from_spectrum(cfg.grid, v);
                throw NumericalError("evolution: state is no longer finite", t_good);
            }
            const EvolutionRecord r = finish_record(record_at(t));
            if (cfg.snapshot_stride > 0 &&
                ++records_since_snapshot >= cfg.snapshot_stride) {
                records_since_snapshot = 0;
                store_snapshot(t);
            }
            if (r.linf > cfg.linf_abort) {
                trace.termination = Termination::AmplitudeAbort;
                break;
            }
            if (r.energy_drift_rel > cfg.energy_abort_rel) {
                trace.termination = Termination::EnergyDriftAbort;
                break;
            }
            if (cfg.linf_soft_stop && r.linf > *cfg.linf_soft_stop) {
                trace.termination = Termination::SoftStop;
                break;
            }
        }
    }

    trace.final_state = Field::from_spectrum(cfg.grid, v);
    return trace;
}

ExperimentResult perturbation_experiment(const ExperimentConfig& cfg) {
    ExperimentResult result{EvolutionTrace{}, Verdict::ConvergeOscillate,
                            std::nullopt, Field::zero(cfg.evolution.grid)};

    // initial datum
    const double A = cfg.amplitude;
    switch (cfg.kind) {
        case InitialKind::AQ: {
            if (!cfg.q_problem)
                throw ConfigError("experiment: AQ kind needs a ground-state problem");
            GroundState q = solve(*cfg.q_problem);
            std::vector<cplx> vals = q.profile.values();
            for (auto& z : vals) z *= A;
            Field u0(q.profile.grid_ptr(), std::move(vals));
            result.ground = std::move(q);
            result.initial_state = resample(u0, cfg.evolution.grid);
            break;
        }
        case InitialKind::Gaussian:
            result.initial_state = Field::sample_real(
                cfg.evolution.grid, [A](double x) { return A * std::exp(-x * x); });
            break;
        case InitialKind::SuperGaussian:
            result.initial_state = Field::sample_real(
                cfg.evolution.grid,
                [A](double x) { return A * std::exp(-x * x * x * x); });
            break;
        case InitialKind::Sech:
            result.initial_state = Field::sample_real(
                cfg.evolution.grid, [A](double x) { return A / std::cosh(x); });
            break;
    }

    const double linf0 = linf_norm(result.initial_state);
    if (linf0 == 0.0)
        throw ConfigError("experiment: zero initial datum");

    RefineSchedule sched;
    sched.t_end = cfg.evolution.t1;
    sched.initial_steps = cfg.evolution.n_steps;
    sched.steps_per_window = cfg.refine_steps_per_window;
    sched.growth_trigger = cfg.refine_growth_trigger;
    sched.h_floor = cfg.refine_h_floor;
    sched.window_drift_tol = cfg.refine_window_drift_tol;

    EvolutionConfig evo = cfg.evolution;
    evo.linf_abort = std::min(evo.linf_abort, cfg.blowup_amplitude_factor * linf0);

    result.trace = refine_to_blowup(result.initial_state, evo, sched);

    if (result.trace.termination == Termination::AmplitudeAbort) {
        result.verdict = Verdict::Blowup;
        return result;
    }

    const auto& rec = result.trace.records;
    const double final_linf = rec.back().linf;
    bool decreasing = false;
    if (rec.size() >= 10) {
        const std::size_t n = rec.size();
        const std::size_t win = std::max<std::size_t>(2, n / 5);
        double late = 0.0, earlier = 0.0;
        for (std::size_t i = n - win; i < n; ++i) late += rec[i].linf;
        for (std::size_t i = n - 2 * win; i < n - win; ++i) earlier += rec[i].linf;
        decreasing = late < earlier;
    } else {
        decreasing = final_linf < rec.front().linf;
    }

    if (final_linf < cfg.disperse_factor * linf0 && decreasing)
        result.verdict = Verdict::Disperse;
    else
        result.verdict = Verdict::ConvergeOscillate;
    return result;
}

} // namespace b4nls
