#include "b4nls/gmres.hpp"

namespace b4nls {

namespace {

using cvec = std::vector<std::complex<double>>;

double nrm2(const cvec& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

std::complex<double> dot(const cvec& a, const cvec& b) {
    std::complex<double> s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Unitary rotation [[c, s], [-conj(s), c]] with real c >= 0 zeroing the
// second entry of (a, b); b is real non-negative here (an Arnoldi norm).
void make_givens(std::complex<double> a, double b, double& c,
                 std::complex<double>& s) {
    const double aa = std::abs(a);
    const double rho = std::sqrt(aa * aa + b * b);
    if (rho == 0.0) {
        c = 1.0;
        s = 0.0;
    } else if (aa == 0.0) {
        c = 0.0;
        s = 1.0;
    } else {
        c = aa / rho;
        s = (a / aa) * (b / rho);
    }
}

} // namespace

GmresResult gmres(const std::function<void(const cvec&, cvec&)>& apply,
                  const cvec& rhs, const GmresParams& params) {
    const std::size_t n = rhs.size();
    const int m = params.restart;

    GmresResult res;
    res.x.assign(n, {0.0, 0.0});

    const double bnorm = nrm2(rhs);
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }
    const double target = params.rel_tol * bnorm;

    cvec r = rhs; // residual of the zero initial guess
    cvec w(n);
    double beta = bnorm;
    res.rel_residual = 1.0;

    while (res.iterations < params.max_iters) {
        std::vector<cvec> V;
        V.reserve(m + 1);
        // H stored column-wise after rotation (upper triangular part only)
        std::vector<std::vector<std::complex<double>>> H(
            m, std::vector<std::complex<double>>(m, {0.0, 0.0}));
        std::vector<double> cs(m, 1.0);
        std::vector<std::complex<double>> sn(m, {0.0, 0.0});
        std::vector<std::complex<double>> g(m + 1, {0.0, 0.0});
        g[0] = beta;

        cvec v0 = r;
        for (auto& z : v0) z /= beta;
        V.push_back(std::move(v0));

        int k = 0;
        bool breakdown = false;
        while (k < m && res.iterations < params.max_iters) {
            apply(V[k], w);
            ++res.iterations;

            // modified Gram-Schmidt against the current basis
            std::vector<std::complex<double>> col(k + 2, {0.0, 0.0});
            for (int i = 0; i <= k; ++i) {
                col[i] = dot(V[i], w);
                for (std::size_t j = 0; j < n; ++j) w[j] -= col[i] * V[i][j];
            }
            const double hsub = nrm2(w);

            // previously accumulated rotations on rows 0..k
            for (int i = 0; i < k; ++i) {
                const auto t = cs[i] * col[i] + sn[i] * col[i + 1];
                col[i + 1] = -std::conj(sn[i]) * col[i] + cs[i] * col[i + 1];
                col[i] = t;
            }
            make_givens(col[k], hsub, cs[k], sn[k]);
            col[k] = cs[k] * col[k] + sn[k] * hsub;

            g[k + 1] = -std::conj(sn[k]) * g[k];
            g[k] = cs[k] * g[k];

            for (int i = 0; i <= k; ++i) H[k][i] = col[i];

            const double resid = std::abs(g[k + 1]);
            ++k;
            if (resid <= target) break;
            if (hsub == 0.0) { // exact solution inside the Krylov space
                breakdown = true;
                break;
            }
            cvec vk = w;
            for (auto& z : vk) z /= hsub;
            V.push_back(std::move(vk));
        }

        // back-substitution for y, then x += V y
        std::vector<std::complex<double>> y(k, {0.0, 0.0});
        for (int i = k - 1; i >= 0; --i) {
            std::complex<double> acc = g[i];
            for (int j = i + 1; j < k; ++j) acc -= H[j][i] * y[j];
            y[i] = acc / H[i][i];
        }
        for (int i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j)
                res.x[j] += y[i] * V[i][j];

        // true residual decides convergence and seeds the next cycle
        apply(res.x, w);
        double rn = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            r[j] = rhs[j] - w[j];
            rn += std::norm(r[j]);
        }
        beta = std::sqrt(rn);
        res.rel_residual = beta / bnorm;
        if (beta <= target || breakdown || beta == 0.0) {
            res.converged = beta <= target;
            return res;
        }
    }
    res.converged = res.rel_residual <= params.rel_tol;
    return res;
}

} // namespace b4nls
