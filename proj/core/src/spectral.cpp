#include "b4nls/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "b4nls/errors.hpp"

namespace b4nls {

std::vector<cplx> derivative_symbol(const Grid& g, int order) {
    if (order < 1)
        throw ConfigError("derivative: order must be >= 1");
    const std::size_t N = g.size();
    std::vector<cplx> sym(N);
    for (std::size_t m = 0; m < N; ++m) {
        const cplx ik(0.0, g.k(m));
        cplx p(1.0, 0.0);
        for (int q = 0; q < order; ++q) p *= ik;
        sym[m] = p;
    }
    if (order % 2 == 1)
        sym[N / 2] = cplx(0.0, 0.0); // asymmetric Nyquist mode has no odd derivative
    else
        sym[N / 2] = cplx(sym[N / 2].real(), 0.0); // kill round-off imaginary part
    return sym;
}

Field derivative(const Field& f, int order) {
    const Grid& g = f.grid();
    const auto sym = derivative_symbol(g, order);
    std::vector<cplx> spec = f.spectrum();
    for (std::size_t m = 0; m < spec.size(); ++m)
        spec[m] *= sym[m];
    return Field::from_spectrum(f.grid_ptr(), std::move(spec));
}

double mass(const Field& f) {
    const double h = f.grid().spacing();
    double s = 0.0;
    for (const auto& v : f.values())
        s += std::norm(v);
    return h * s;
}

double lp_norm_pow(const Field& f, double p) {
    if (p < 1.0)
        throw std::domain_error("lp_norm: p must be >= 1");
    const double h = f.grid().spacing();
    double s = 0.0;
    if (p == 2.0) {
        for (const auto& v : f.values()) s += std::norm(v);
    } else {
        for (const auto& v : f.values()) s += std::pow(std::abs(v), p);
    }
    return h * s;
}

double lp_norm(const Field& f, double p) {
    return std::pow(lp_norm_pow(f, p), 1.0 / p);
}

double quadratic_norm_sq_from_spectrum(const Grid& g, const std::vector<cplx>& spec,
                                       int deriv_order) {
    const std::size_t N = g.size();
    const double w = g.spacing() / static_cast<double>(N);
    double s = 0.0;
    if (deriv_order == 0) {
        for (std::size_t m = 0; m < N; ++m) s += std::norm(spec[m]);
    } else {
        const bool odd = (deriv_order % 2 == 1);
        for (std::size_t m = 0; m < N; ++m) {
            if (odd && m == N / 2) continue;
            const double kp = std::pow(g.k(m), deriv_order);
            s += kp * kp * std::norm(spec[m]);
        }
    }
    return w * s;
}

double energy(const Field& f, double a, double alpha) {
    const auto& spec = f.spectrum();
    const double uxx2 = quadratic_norm_sq_from_spectrum(f.grid(), spec, 2);
    const double ux2 = quadratic_norm_sq_from_spectrum(f.grid(), spec, 1);
    const double pot = lp_norm_pow(f, alpha + 2.0);
    return 0.5 * uxx2 - a * ux2 - pot / (alpha + 2.0);
}

double h2_seminorm(const Field& f) {
    return std::sqrt(quadratic_norm_sq_from_spectrum(f.grid(), f.spectrum(), 2));
}

double linf_norm(const Field& f) {
    double m = 0.0;
    for (const auto& v : f.values())
        m = std::max(m, std::abs(v));
    return m;
}

double tail_level_from_spectrum(const Grid& g, const std::vector<cplx>& spec) {
    const double kcut = 0.9 * g.nyquist();
    double top = 0.0, all = 0.0;
    for (std::size_t m = 0; m < spec.size(); ++m) {
        const double mag = std::abs(spec[m]);
        all = std::max(all, mag);
        if (std::abs(g.k(m)) >= kcut)
            top = std::max(top, mag);
    }
    if (all == 0.0) return 0.0;
    return top / all;
}

double tail_level(const Field& f) {
    return tail_level_from_spectrum(f.grid(), f.spectrum());
}

std::vector<cplx> sample_interpolant(const Field& f, std::span<const double> points) {
    const Grid& g = f.grid();
    const std::size_t N = g.size();
    const auto& spec = f.spectrum();
    const double x0 = g.origin();
    std::vector<cplx> out(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        const double dx = points[p] - x0;
        cplx acc(0.0, 0.0);
        for (std::size_t m = 0; m < N; ++m) {
            if (m == N / 2) continue;
            acc += spec[m] * std::polar(1.0, g.k(m) * dx);
        }
        acc += spec[N / 2] * std::cos(g.nyquist() * dx);
        out[p] = acc / static_cast<double>(N);
    }
    return out;
}

cplx sample_interpolant_at(const Field& f, double x) {
    const double pts[1] = {x};
    return sample_interpolant(f, pts)[0];
}

Field resample(const Field& f, GridPtr target) {
    if (f.grid().compatible_with(*target))
        return Field(std::move(target), f.values());
    return Field(std::move(target),
                 sample_interpolant(f, std::span<const double>(target->abscissae())));
}

Field circular_shift(const Field& f, long cells) {
    const std::size_t N = f.size();
    const long n = static_cast<long>(N);
    std::vector<cplx> v(N);
    for (std::size_t j = 0; j < N; ++j) {
        long src = (static_cast<long>(j) - cells) % n;
        if (src < 0) src += n;
        v[j] = f.values()[static_cast<std::size_t>(src)];
    }
    return Field(f.grid_ptr(), std::move(v));
}

NonlinearPower::NonlinearPower(double alpha) : alpha_(alpha), half_(-1) {
    if (!(alpha > 0.0))
        throw ConfigError("nonlinearity: alpha must be positive");
    const double r = std::round(alpha);
    if (r == alpha && r <= 32.0 && static_cast<long>(r) % 2 == 0)
        half_ = static_cast<int>(r) / 2;
}

double NonlinearPower::modulus_pow(double m2) const {
    if (half_ >= 0) {
        double p = 1.0;
        for (int q = 0; q < half_; ++q) p *= m2;
        return p;
    }
    return std::pow(m2, 0.5 * alpha_);
}

void NonlinearPower::apply(const std::vector<cplx>& v, std::vector<cplx>& out) const {
    out.resize(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        out[j] = modulus_pow(std::norm(v[j])) * v[j];
}

} // namespace b4nls
