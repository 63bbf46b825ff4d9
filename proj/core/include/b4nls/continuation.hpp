#pragma once

#include <optional>
#include <string>
#include <vector>

#include "b4nls/groundstate.hpp"

namespace b4nls {

enum class BranchLabel {
    Single,      // no fold detected
    LowerParam,  // swept value below the fold: higher-energy, unstable side
    UpperParam,  // swept value above the fold: lower-energy, stable side
};

std::string to_string(BranchLabel label);

struct BranchSample {
    double swept = 0.0; // the swept parameter value (b or a)
    double b = 0.0;
    double a = 0.0;
    double alpha = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double linf = 0.0;
    double lp_alpha2 = 0.0;
    double residual_sup = 0.0;
    BranchLabel label = BranchLabel::Single;
    bool converged = true; // false marks a gap left by a failed solve
};

struct BranchCurve {
    char swept_parameter = 'b'; // 'b' or 'a'
    double alpha = 0.0;
    double fixed_value = 0.0; // the parameter held fixed (a or b)
    std::vector<BranchSample> samples;
    std::optional<std::size_t> fold_index;
    std::vector<std::size_t> all_folds; // extra extrema beyond the first
    bool labeling_check_passed = true;  // equal-mass energy-ordering cross-check
};

/// Solve along an ordered list of b values at fixed (alpha, a), warm-starting
/// each solve from the previous converged profile. Failed points are recorded
/// as gaps and the sweep continues. Fold detection runs when >= 3 points
/// converged.
BranchCurve sweep_b(double alpha, double a, const std::vector<double>& b_values,
                    const GroundStateProblem& base);

/// Same with the roles of a and b swapped (ordered a values, fixed b).
BranchCurve sweep_a(double alpha, double b, const std::vector<double>& a_values,
                    const GroundStateProblem& base);

/// Locate the sign change of the discrete dM/d(param) and label the two
/// branches; verifies that at (approximately) equal mass the lower-parameter
/// sample has the higher energy. Requires >= 3 converged samples.
BranchCurve detect_fold(BranchCurve curve);

/// Uniform default sweep grid: 31 points on [max(a^2 + 0.05, 1), 4].
std::vector<double> default_b_grid(double a);

} // namespace b4nls
