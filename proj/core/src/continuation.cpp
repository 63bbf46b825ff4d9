#include "b4nls/continuation.hpp"

#include <algorithm>
#include <cmath>

#include "b4nls/errors.hpp"

namespace b4nls {

namespace {

constexpr double kMassNoise = 1e-8;
constexpr double kEqualMassTol = 1e-3;

BranchSample make_sample(double swept, const GroundState& g) {
    BranchSample s;
    s.swept = swept;
    s.b = g.problem.b;
    s.a = g.problem.a;
    s.alpha = g.problem.alpha;
    s.mass = g.scalars.mass;
    s.energy = g.scalars.energy;
    s.linf = g.scalars.linf;
    s.lp_alpha2 = g.scalars.lp_alpha2;
    s.residual_sup = g.residual_sup;
    return s;
}

BranchCurve sweep_impl(char which, double alpha, double fixed,
                       const std::vector<double>& values,
                       const GroundStateProblem& base) {
    if (values.empty())
        throw ConfigError("sweep: empty parameter list");
    if (!std::is_sorted(values.begin(), values.end()))
        throw ConfigError("sweep: parameter list must be sorted ascending");

    BranchCurve curve;
    curve.swept_parameter = which;
    curve.alpha = alpha;
    curve.fixed_value = fixed;

    std::optional<Field> warm;
    for (double v : values) {
        GroundStateProblem p = base;
        p.alpha = alpha;
        if (which == 'b') {
            p.a = fixed;
            p.b = v;
        } else {
            p.b = fixed;
            p.a = v;
        }
        if (warm)
            p.initial_iterate = *warm;
        try {
            GroundState g = solve(p);
            warm = g.profile;
            curve.samples.push_back(make_sample(v, g));
        } catch (const SolveError& e) {
            BranchSample gap;
            gap.swept = v;
            gap.b = p.b;
            gap.a = p.a;
            gap.alpha = alpha;
            gap.residual_sup = e.last_residual;
            gap.converged = false;
            curve.samples.push_back(gap);
            // warm start stays at the last converged profile
        }
    }

    std::size_t converged = 0;
    for (const auto& s : curve.samples)
        if (s.converged) ++converged;
    if (converged >= 3)
        curve = detect_fold(std::move(curve));
    return curve;
}

} // namespace

std::string to_string(BranchLabel label) {
    switch (label) {
        case BranchLabel::Single: return "single";
        case BranchLabel::LowerParam: return "lower-b-branch";
        case BranchLabel::UpperParam: return "upper-b-branch";
    }
    return "single";
}

std::vector<double> default_b_grid(double a) {
    const double lo = std::max(a * a + 0.05, 1.0);
    const double hi = 4.0;
    std::vector<double> out(31);
    for (int i = 0; i < 31; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / 30.0;
    return out;
}

BranchCurve sweep_b(double alpha, double a, const std::vector<double>& b_values,
                    const GroundStateProblem& base) {
    for (double b : b_values)
        if (!(b > 0.0) || (a > 0.0 && !(b > a * a)))
            throw ConfigError("sweep: every b must satisfy b > max(0, a^2)");
    return sweep_impl('b', alpha, a, b_values, base);
}

BranchCurve sweep_a(double alpha, double b, const std::vector<double>& a_values,
                    const GroundStateProblem& base) {
    if (!(b > 0.0))
        throw ConfigError("sweep: requires b > 0");
    for (double a : a_values)
        if (!(a < std::sqrt(b)))
            throw ConfigError("sweep: every a must satisfy a < sqrt(b)");
    return sweep_impl('a', alpha, b, a_values, base);
}

BranchCurve detect_fold(BranchCurve curve) {
    // work on the converged samples only
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < curve.samples.size(); ++i)
        if (curve.samples[i].converged) idx.push_back(i);
    if (idx.size() < 3)
        throw ConfigError("detect_fold: needs at least 3 converged samples");

    curve.fold_index.reset();
    curve.all_folds.clear();
    for (auto& s : curve.samples) s.label = BranchLabel::Single;

    // central-difference slope sign per interior converged sample
    std::vector<int> sign(idx.size(), 0);
    for (std::size_t q = 1; q + 1 < idx.size(); ++q) {
        const auto& lo = curve.samples[idx[q - 1]];
        const auto& hi = curve.samples[idx[q + 1]];
        const double d = (hi.mass - lo.mass) / (hi.swept - lo.swept);
        const double tol = kMassNoise * std::max(1.0, std::abs(curve.samples[idx[q]].mass));
        sign[q] = (d > tol) ? 1 : (d < -tol ? -1 : 0);
    }

    std::vector<std::size_t> folds;
    int prev = 0;
    std::size_t prev_q = 0;
    for (std::size_t q = 1; q + 1 < idx.size(); ++q) {
        if (sign[q] == 0) continue;
        if (prev != 0 && sign[q] != prev) {
            // extremum sits between prev_q and q; pick the extremal sample,
            // ties toward the smaller swept value
            const bool minimum = (prev < 0);
            std::size_t best = idx[prev_q];
            for (std::size_t r = prev_q; r <= q; ++r) {
                const double cand = curve.samples[idx[r]].mass;
                const double cur = curve.samples[best].mass;
                if (minimum ? (cand < cur) : (cand > cur)) best = idx[r];
            }
            folds.push_back(best);
        }
        prev = sign[q];
        prev_q = q;
    }

    if (folds.empty())
        return curve;

    curve.fold_index = folds.front();
    curve.all_folds.assign(folds.begin() + 1, folds.end());

    for (auto& s : curve.samples) {
        if (!s.converged) continue;
        s.label = (s.swept <= curve.samples[*curve.fold_index].swept)
                      ? BranchLabel::LowerParam
                      : BranchLabel::UpperParam;
    }

    // cross-check: where two samples share mass, the lower-parameter one must
    // carry the higher energy
    curve.labeling_check_passed = true;
    for (std::size_t i : idx) {
        if (curve.samples[i].label != BranchLabel::LowerParam) continue;
        for (std::size_t j : idx) {
            if (curve.samples[j].label != BranchLabel::UpperParam) continue;
            if (std::abs(curve.samples[i].mass - curve.samples[j].mass) <= kEqualMassTol &&
                !(curve.samples[i].energy > curve.samples[j].energy)) {
                curve.labeling_check_passed = false;
            }
        }
    }
    return curve;
}

} // namespace b4nls
