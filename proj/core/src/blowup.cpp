#include "b4nls/blowup.hpp"

#include <algorithm>
#include <cmath>

#include "b4nls/errors.hpp"
#include "b4nls/spectral.hpp"

namespace b4nls {

namespace {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit f;
    f.slope = (sxx > 0.0) ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

// Indices of the fit-window records: sup norm above factor * initial, with
// the final `drop_last` trace records excluded. The factor relaxes until the
// window holds enough records (never below 2x).
struct Window {
    std::vector<std::size_t> idx;
    double factor_used = 0.0;
};

Window select_window(const std::vector<EvolutionRecord>& rec,
                     const RateFitParams& p) {
    if (rec.size() < p.min_records + p.drop_last)
        throw FitError("rate fit: trace holds too few records");
    const double linf0 = rec.front().linf;
    const std::size_t last = rec.size() - p.drop_last;

    double factor = p.window_amp_factor;
    while (true) {
        Window w;
        w.factor_used = factor;
        for (std::size_t i = 0; i < last; ++i)
            if (rec[i].linf >= factor * linf0) w.idx.push_back(i);
        if (w.idx.size() >= p.min_records)
            return w;
        if (!p.auto_relax_window || factor <= 2.0)
            throw FitError("rate fit: terminal growth phase holds fewer than the "
                           "required number of records");
        factor = std::max(2.0, factor * 0.7);
    }
}

void require_monotone_growth(const std::vector<EvolutionRecord>& rec,
                             const std::vector<std::size_t>& idx) {
    std::size_t increases = 0;
    for (std::size_t q = 1; q < idx.size(); ++q)
        if (rec[idx[q]].linf > rec[idx[q - 1]].linf) ++increases;
    const double frac =
        static_cast<double>(increases) / static_cast<double>(idx.size() - 1);
    const double growth = rec[idx.back()].linf / rec[idx.front()].linf;
    if (frac < 0.9 || growth < 1.5)
        throw FitError("rate fit: terminal growth is not monotone");
}

double regression_rms_at(const std::vector<double>& t, const std::vector<double>& logu,
                         double T) {
    std::vector<double> x(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        x[i] = std::log(T - t[i]);
    return linear_fit(x, logu).rms;
}

} // namespace

EvolutionTrace refine_to_blowup(const Field& u0, const EvolutionConfig& cfg,
                                const RefineSchedule& schedule) {
    cfg.validate();
    if (!(schedule.t_end > cfg.t0))
        throw ConfigError("refine: t_end must exceed t0");
    if (schedule.initial_steps < 1 || schedule.steps_per_window < 1)
        throw ConfigError("refine: step counts must be positive");
    if (!(schedule.step_shrink > 0.0 && schedule.step_shrink < 1.0))
        throw ConfigError("refine: step_shrink must lie in (0, 1)");

    const double E0 = energy(u0, cfg.a, cfg.alpha);
    const double scale0 = energy_constituent_scale(u0, cfg.a, cfg.alpha);
    const double denom = std::max({std::abs(E0), 1e-6 * scale0, 1e-300});

    EvolutionTrace out;
    out.termination = Termination::Completed;

    Field state = u0;
    double t = cfg.t0;
    double h = (schedule.t_end - cfg.t0) / static_cast<double>(schedule.initial_steps);

    auto append = [&out](const EvolutionTrace& w) {
        const std::size_t from = out.records.empty() ? 0 : 1;
        out.records.insert(out.records.end(), w.records.begin() + from,
                           w.records.end());
    };
    auto snapshot = [&](double tt, const Field& f) {
        if (schedule.keep_snapshots)
            out.snapshots.emplace_back(tt, f);
    };

    for (long window = 0; window < schedule.max_windows; ++window) {
        const double remaining = schedule.t_end - t;
        if (remaining <= 0.25 * h) {
            out.termination = Termination::Completed;
            break;
        }
        long steps = schedule.steps_per_window;
        double hw = h;
        if (static_cast<double>(steps) * h >= remaining) {
            steps = std::max<long>(1, std::lround(remaining / h));
            hw = remaining / static_cast<double>(steps); // land exactly on t_end
        }

        EvolutionConfig wcfg = cfg;
        wcfg.t0 = t;
        wcfg.t1 = t + hw * static_cast<double>(steps);
        wcfg.n_steps = steps;
        wcfg.energy_ref = E0;
        wcfg.energy_scale_ref = scale0;
        wcfg.snapshot_stride = 0;
        wcfg.linf_soft_stop = schedule.growth_trigger * linf_norm(state);

        EvolutionTrace wt;
        bool window_blewup = false;
        try {
            wt = evolve(state, wcfg);
        } catch (const NumericalError&) {
            window_blewup = true;
        }

        const double h_next = h * schedule.step_shrink;
        const bool can_refine = h_next >= schedule.h_floor;

        double window_drift = 0.0;
        if (!window_blewup) {
            const double e_start = wt.records.front().energy;
            for (const auto& r : wt.records)
                window_drift = std::max(window_drift, std::abs(r.energy - e_start) / denom);
        }

        const bool needs_rollback =
            window_blewup || window_drift > schedule.window_drift_tol ||
            wt.termination == Termination::EnergyDriftAbort;
        if (needs_rollback && can_refine) {
            h = h_next; // discard the window and retry finer
            continue;
        }

        if (window_blewup)
            throw NumericalError("refine: state lost finiteness at the step floor", t);

        append(wt);
        t = wt.records.back().t;
        state = *wt.final_state;

        if (wt.termination == Termination::EnergyDriftAbort) {
            out.termination = Termination::EnergyDriftAbort; // resolution exhausted
            break;
        }
        if (wt.termination == Termination::AmplitudeAbort) {
            out.termination = Termination::AmplitudeAbort;
            break;
        }
        if (wt.termination == Termination::SoftStop) {
            snapshot(t, state);
            if (can_refine) h = h_next;
        }
        // Completed windows keep the current step.
    }

    snapshot(t, state);
    out.final_state = std::move(state);
    return out;
}

TstarFit estimate_tstar(const EvolutionTrace& trace, const RateFitParams& params,
                        std::optional<double> model_exponent_hint) {
    (void)model_exponent_hint; // the scan needs no seed; kept for call sites
    const auto& rec = trace.records;
    if (trace.termination == Termination::Completed)
        throw FitError("t* fit: trace completed without an abort criterion");

    Window w = select_window(rec, params);
    require_monotone_growth(rec, w.idx);

    std::vector<double> t(w.idx.size()), logu(w.idx.size());
    for (std::size_t q = 0; q < w.idx.size(); ++q) {
        t[q] = rec[w.idx[q]].t;
        logu[q] = std::log(rec[w.idx[q]].linf);
    }

    const double t_last = rec.back().t;
    const double h_last = rec.back().t - rec[rec.size() - 2].t;
    double lo = t_last;
    double span = params.bracket_multiplier * h_last *
                  static_cast<double>(w.idx.size());

    // widen the bracket while the minimum presses against the upper edge
    double best = 0.0;
    for (int expansion = 0; expansion < 60; ++expansion) {
        double a = lo + 1e-3 * span, b = lo + span;
        // golden-section on the regression RMS
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = b - gr * (b - a);
        double d = a + gr * (b - a);
        double fc = regression_rms_at(t, logu, c);
        double fd = regression_rms_at(t, logu, d);
        while (b - a > params.scan_abs_tol) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = regression_rms_at(t, logu, c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = regression_rms_at(t, logu, d);
            }
        }
        best = 0.5 * (a + b);
        if (best < lo + 0.99 * span) break;
        span *= 10.0;
    }

    std::vector<double> x(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        x[i] = std::log(best - t[i]);
    const LinearFit f = linear_fit(x, logu);

    TstarFit fit;
    fit.t_star = best;
    fit.gamma_linf = -f.slope;
    fit.rms = f.rms;
    fit.window = {t.front(), t.back()};
    fit.window_factor_used = w.factor_used;
    fit.n_records = w.idx.size();
    return fit;
}

RateFit fit_rates(const EvolutionTrace& trace, double t_star,
                  const RateFitParams& params) {
    const auto& rec = trace.records;
    Window w = select_window(rec, params);
    require_monotone_growth(rec, w.idx);
    if (t_star <= rec[w.idx.back()].t)
        throw FitError("rate fit: t* must exceed the fit window");

    std::vector<double> x(w.idx.size()), yl(w.idx.size()), yh(w.idx.size());
    for (std::size_t q = 0; q < w.idx.size(); ++q) {
        const auto& r = rec[w.idx[q]];
        x[q] = std::log(t_star - r.t);
        yl[q] = std::log(r.linf);
        yh[q] = std::log(r.h2_seminorm);
    }
    const LinearFit fl = linear_fit(x, yl);
    const LinearFit fh = linear_fit(x, yh);

    RateFit out;
    out.gamma_linf = -fl.slope;
    out.gamma_h2 = -fh.slope;
    out.rms_linf = fl.rms;
    out.rms_h2 = fh.rms;
    out.window = {rec[w.idx.front()].t, rec[w.idx.back()].t};
    out.window_factor_used = w.factor_used;
    return out;
}

ProfileFit fit_profile(const Field& u, const GroundState& q0, double t_snapshot) {
    if (q0.problem.a != 0.0)
        throw ConfigError("profile fit: the reference state must have a = 0");
    const Grid& g = u.grid();
    const std::size_t N = g.size();

    // sub-grid peak of |u| by a local parabola through the discrete argmax
    std::size_t jmax = 0;
    double vmax = -1.0;
    std::vector<double> mag(N);
    for (std::size_t j = 0; j < N; ++j) {
        mag[j] = std::abs(u.values()[j]);
        if (mag[j] > vmax) {
            vmax = mag[j];
            jmax = j;
        }
    }
    if (vmax <= 0.0)
        throw std::domain_error("profile fit: zero field");
    const double ym = mag[(jmax + N - 1) % N];
    const double y0 = mag[jmax];
    const double yp = mag[(jmax + 1) % N];
    const double curv = ym - 2.0 * y0 + yp;
    const double delta = (curv < 0.0) ? 0.5 * (ym - yp) / curv : 0.0;
    const double x_peak = g.x(jmax) + delta * g.spacing();
    const double peak = y0 + 0.5 * (yp - ym) * delta + 0.5 * curv * delta * delta;

    const double alpha = q0.problem.alpha;
    const double ratio = peak / q0.scalars.linf; // (b')^(1/alpha)
    const double b_scale = std::pow(ratio, alpha);
    const double stretch = std::pow(ratio, alpha / 4.0); // (b')^(1/4)
    const double lambda = 1.0 / stretch;

    const Grid& gq = q0.profile.grid();
    const double q_halfwidth = gq.half_period_scale() * Grid::pi();
    const double period = g.period();

    // Q_b'(x) = ratio * Q0(stretch * (x - x_peak)); outside the reference
    // domain the profile has decayed to round-off and is taken as zero
    std::vector<cplx> diff(N);
    double core_half = 5.0 * lambda;
    double sup = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        double dx = std::remainder(g.x(j) - x_peak, period);
        const double arg = stretch * dx;
        double qv = 0.0;
        if (std::abs(arg) <= q_halfwidth)
            qv = ratio * sample_interpolant_at(q0.profile, arg).real();
        const double d = mag[j] - qv;
        diff[j] = cplx(d, 0.0);
        if (std::abs(dx) <= core_half)
            sup = std::max(sup, std::abs(d));
    }

    return ProfileFit{b_scale,
                      sup,
                      sup / peak,
                      core_half,
                      x_peak,
                      t_snapshot,
                      Field(u.grid_ptr(), std::move(diff))};
}

std::vector<std::pair<double, double>> lambda_trace(const EvolutionTrace& trace,
                                                    const GroundState& q0) {
    const double qmax = q0.scalars.linf;
    const double p = q0.problem.alpha / 4.0;
    std::vector<std::pair<double, double>> out;
    out.reserve(trace.records.size());
    for (const auto& r : trace.records)
        out.emplace_back(r.t, std::pow(qmax / std::max(r.linf, 1e-300), p));
    return out;
}

std::string classify_lambda_decay(const EvolutionTrace& trace, const GroundState& q0,
                                  double t_star, const RateFitParams& params) {
    (void)t_star;
    const auto& rec = trace.records;
    Window w = select_window(rec, params);
    if (w.idx.size() < 5)
        throw FitError("lambda fit: window too small");

    const auto lam_full = lambda_trace(trace, q0);
    std::vector<double> tau(w.idx.size(), 0.0), loglam(w.idx.size());
    loglam[0] = std::log(lam_full[w.idx[0]].second);
    for (std::size_t q = 1; q < w.idx.size(); ++q) {
        const auto& [t0v, l0] = lam_full[w.idx[q - 1]];
        const auto& [t1v, l1] = lam_full[w.idx[q]];
        tau[q] = tau[q - 1] +
                 0.5 * (std::pow(l0, -4.0) + std::pow(l1, -4.0)) * (t1v - t0v);
        loglam[q] = std::log(l1);
    }

    // centered derivative of ln(lambda) with respect to tau
    std::vector<double> logw, logtau;
    for (std::size_t q = 1; q + 1 < w.idx.size(); ++q) {
        const double d = (loglam[q + 1] - loglam[q - 1]) / (tau[q + 1] - tau[q - 1]);
        if (d < 0.0) {
            logw.push_back(std::log(-d));
            logtau.push_back(std::log(tau[q] + (tau[1] - tau[0])));
        }
    }
    if (logw.size() < 5)
        throw FitError("lambda fit: too few usable derivative samples");

    // algebraic decay shows up as a linear trend of ln|w| in ln(tau);
    // exponential-type (constant A_inf) shows no trend
    const LinearFit lf = linear_fit(logtau, logw);
    double mean = 0.0;
    for (double v : logw) mean += v;
    mean /= static_cast<double>(logw.size());
    double ssc = 0.0;
    for (double v : logw) ssc += (v - mean) * (v - mean);
    const double rms_const = std::sqrt(ssc / static_cast<double>(logw.size()));

    if (lf.rms < 0.8 * rms_const && lf.slope < -0.2)
        return "algebraic";
    return "exponential";
}

BlowupReport analyze_blowup(const EvolutionTrace& trace, const GroundState& q0,
                            const RateFitParams& params) {
    BlowupReport rep;
    rep.verdict = (trace.termination == Termination::AmplitudeAbort)
                      ? "blowup"
                      : to_string(trace.termination);
    try {
        const TstarFit ts = estimate_tstar(trace, params);
        rep.t_star = ts.t_star;
        rep.window_amp_factor = ts.window_factor_used;
        const RateFit rf = fit_rates(trace, ts.t_star, params);
        rep.rate_linf = rf.gamma_linf;
        rep.rate_h2 = rf.gamma_h2;
        rep.fit_window = rf.window;
        rep.fit_rms_linf = rf.rms_linf;
        rep.fit_rms_h2 = rf.rms_h2;
        try {
            rep.lambda_class = classify_lambda_decay(trace, q0, ts.t_star, params);
        } catch (const FitError&) {
            rep.lambda_class.clear();
        }
    } catch (const FitError& e) {
        rep.fit_failure = e.what();
    }

    const std::size_t nsnap = trace.snapshots.size();
    const std::size_t take = std::min<std::size_t>(3, nsnap);
    for (std::size_t q = nsnap - take; q < nsnap; ++q) {
        const auto& [t, f] = trace.snapshots[q];
        try {
            const ProfileFit pf = fit_profile(f, q0, t);
            rep.profile_fits.push_back(
                {t, pf.b_scale, pf.sup_difference, pf.rel_sup_difference});
        } catch (const std::exception&) {
            // snapshots of a non-collapsing run may not admit a fit
        }
    }
    return rep;
}

GroundState solve_profile_reference(double alpha, double b, GridPtr grid) {
    GroundStateProblem p;
    p.alpha = alpha;
    p.a = 0.0;
    p.b = b;
    p.grid = std::move(grid);
    return solve(p);
}

} // namespace b4nls
