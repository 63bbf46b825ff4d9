#pragma once

#include <filesystem>

#include "b4nls/blowup.hpp"
#include "b4nls/continuation.hpp"
#include "b4nls/evolution.hpp"

namespace b4nls {

/// Columns: t,linf,mass,energy,energy_drift_rel,h2_seminorm,tail_level
void write_trace_csv(const std::filesystem::path& path, const EvolutionTrace& trace);

/// Columns: param,b,a,alpha,M,E,Linf,Lp,residual,branch_label
void write_branch_csv(const std::filesystem::path& path, const BranchCurve& curve);

/// Rate-fit scatter data for external plotting.
/// Columns: t,tstar_minus_t,linf,h2_seminorm,in_window
void write_ratefit_csv(const std::filesystem::path& path, const EvolutionTrace& trace,
                       double t_star, const std::array<double, 2>& window);

} // namespace b4nls
