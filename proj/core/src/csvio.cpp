#include "b4nls/csvio.hpp"

#include <fstream>

#include "b4nls/errors.hpp"

namespace b4nls {

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os)
        throw ConfigError("csv: cannot open for writing: " + path.string());
    os.precision(17);
    return os;
}

} // namespace

void write_trace_csv(const std::filesystem::path& path, const EvolutionTrace& trace) {
    auto os = open_csv(path);
    os << "t,linf,mass,energy,energy_drift_rel,h2_seminorm,tail_level\n";
    for (const auto& r : trace.records)
        os << r.t << ',' << r.linf << ',' << r.mass << ',' << r.energy << ','
           << r.energy_drift_rel << ',' << r.h2_seminorm << ',' << r.tail_level
           << '\n';
}

void write_branch_csv(const std::filesystem::path& path, const BranchCurve& curve) {
    auto os = open_csv(path);
    os << "param,b,a,alpha,M,E,Linf,Lp,residual,branch_label\n";
    for (const auto& s : curve.samples) {
        if (!s.converged) continue; // gaps are reported in the run summary
        os << curve.swept_parameter << ',' << s.b << ',' << s.a << ',' << s.alpha
           << ',' << s.mass << ',' << s.energy << ',' << s.linf << ','
           << s.lp_alpha2 << ',' << s.residual_sup << ',' << to_string(s.label)
           << '\n';
    }
}

void write_ratefit_csv(const std::filesystem::path& path, const EvolutionTrace& trace,
                       double t_star, const std::array<double, 2>& window) {
    auto os = open_csv(path);
    os << "t,tstar_minus_t,linf,h2_seminorm,in_window\n";
    for (const auto& r : trace.records) {
        const bool in = r.t >= window[0] && r.t <= window[1];
        os << r.t << ',' << (t_star - r.t) << ',' << r.linf << ',' << r.h2_seminorm
           << ',' << (in ? 1 : 0) << '\n';
    }
}

} // namespace b4nls
