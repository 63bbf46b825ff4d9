#include <doctest.h>

#include <random>

#include "b4nls/gmres.hpp"
#include "test_helpers.hpp"

using namespace b4nls;

TEST_SUITE_BEGIN("gmres");

namespace {

using cvec = std::vector<std::complex<double>>;

// dense reference operator: well-conditioned diagonal plus a random
// low-rank complex perturbation
struct DenseOp {
    std::vector<cvec> A;

    explicit DenseOp(std::size_t n, unsigned seed) {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        A.assign(n, cvec(n, {0.0, 0.0}));
        for (std::size_t i = 0; i < n; ++i) {
            A[i][i] = std::complex<double>(2.0 + 0.1 * i, 0.3);
            for (std::size_t j = 0; j < n; ++j)
                A[i][j] += 0.05 * std::complex<double>(unit(rng), unit(rng));
        }
    }

    void apply(const cvec& x, cvec& y) const {
        const std::size_t n = A.size();
        y.assign(n, {0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                y[i] += A[i][j] * x[j];
    }
};

} // namespace

TEST_CASE("matrix-free GMRES solves a dense complex system") {
    const std::size_t n = 60;
    DenseOp op(n, 5);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    cvec x_true(n);
    for (auto& z : x_true) z = {unit(rng), unit(rng)};
    cvec rhs;
    op.apply(x_true, rhs);

    GmresParams params;
    params.rel_tol = 1e-10;
    params.restart = 25; // forces at least one restart cycle
    params.max_iters = 400;
    auto res = gmres([&op](const cvec& v, cvec& w) { op.apply(v, w); }, rhs, params);

    CHECK(res.converged);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        err = std::max(err, std::abs(res.x[i] - x_true[i]));
    CHECK(err <= 1e-8);
}

TEST_CASE("zero right-hand side returns the zero solution") {
    cvec rhs(16, {0.0, 0.0});
    auto res = gmres([](const cvec& v, cvec& w) { w = v; }, rhs, {});
    CHECK(res.converged);
    for (const auto& z : res.x) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("identity operator converges in one iteration") {
    cvec rhs(16, {0.0, 0.0});
    rhs[3] = {1.0, -2.0};
    auto res = gmres([](const cvec& v, cvec& w) { w = v; }, rhs, {});
    CHECK(res.converged);
    CHECK(res.iterations <= 2);
    CHECK(std::abs(res.x[3] - std::complex<double>(1.0, -2.0)) <= 1e-12);
}

TEST_SUITE_END();
