#include <doctest.h>

#include <cmath>

#include "b4nls/errors.hpp"
#include "b4nls/groundstate.hpp"
#include "b4nls/spectral.hpp"
#include "test_helpers.hpp"

using namespace b4nls;
using namespace b4nls::testing;

TEST_SUITE_BEGIN("groundstate");

namespace {

// The explicit cubic solution test: the sech^2 profile needs wavenumbers up
// to ~12.8 before its own residual reaches round-off, hence 512 points on L = 20.
GroundStateProblem cubic_test_problem() {
    GroundStateProblem p;
    p.alpha = 2.0;
    p.a = -1.25 * std::sqrt(2.0); // b = 16 a^2 / 25 = 2
    p.b = 2.0;
    p.grid = Grid::make(20.0, 512);
    p.initial_amplitude = 0.5;
    return p;
}

} // namespace

TEST_CASE("parameter validation") {
    GroundStateProblem p;
    p.grid = Grid::make(10.0, 64);
    p.alpha = 8.0;

    p.a = 2.0;
    p.b = 2.0; // b <= a^2 with a > 0
    CHECK_THROWS_WITH_AS(solve(p), doctest::Contains("b > a^2"), ConfigError);

    p.a = 0.0;
    p.b = -1.0;
    CHECK_THROWS_AS(solve(p), ConfigError);

    // negative a needs no b > a^2 restriction: the symbol stays positive
    p.a = -2.0;
    p.b = 2.0;
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("fixed-point residual basics") {
    GroundStateProblem p = cubic_test_problem();
    const std::size_t N = p.grid->size();

    SUBCASE("zero is a fixed point") {
        std::vector<cplx> zero(N, cplx(0.0, 0.0));
        CHECK(sup_abs(fixed_point_residual(zero, p)) == 0.0);
    }

    SUBCASE("the exact solution has residual at round-off level") {
        GroundState ex = exact_solution(2.0, p.a, p.grid);
        CHECK(ex.residual_sup <= 1e-13);
    }

    SUBCASE("independent physical-space evaluation agrees") {
        // oracle path built from a direct O(N^2) DFT on a small grid
        GroundStateProblem q;
        q.alpha = 2.0;
        q.a = 0.0;
        q.b = 2.0;
        q.grid = Grid::make(6.0, 64);
        Field f = Field::sample_real(q.grid, [](double x) { return std::exp(-x * x); });

        const auto F = fixed_point_residual(f.spectrum(), q);

        const auto& u = f.values();
        std::vector<cplx> cubed(u.size());
        for (std::size_t j = 0; j < u.size(); ++j) cubed[j] = u[j] * u[j] * u[j];
        auto cubed_hat = dft_reference(cubed);
        auto u_hat = dft_reference(u);
        std::vector<cplx> expect(u.size());
        for (std::size_t m = 0; m < u.size(); ++m) {
            const double k = q.grid->k(m);
            expect[m] = u_hat[m] - cubed_hat[m] / (k * k * k * k + 2.0);
        }
        CHECK(sup_diff(F, expect) <= 1e-11);
    }
}

TEST_CASE("jacobian action") {
    GroundStateProblem p = cubic_test_problem();
    const std::size_t N = p.grid->size();
    Field q = Field::sample_real(p.grid, [](double x) { return 1.2 * std::exp(-x * x); });
    const auto& q_hat = q.spectrum();

    SUBCASE("zero perturbation maps to zero") {
        std::vector<cplx> zero(N, cplx(0.0, 0.0));
        CHECK(sup_abs(jacobian_apply(zero, q.values(), p)) == 0.0);
    }

    SUBCASE("at Q = 0 the jacobian is the identity") {
        Field v = random_smooth_field(p.grid, 3);
        std::vector<cplx> zero_q(N, cplx(0.0, 0.0));
        const auto out = jacobian_apply(v.spectrum(), zero_q, p);
        CHECK(sup_diff(out, v.spectrum()) <= 1e-13 * sup_abs(v.spectrum()));
    }

    SUBCASE("forward finite difference converges at rate O(eps)") {
        // real perturbation: the signed-power nonlinearity is differentiable
        // along real directions, which is where the Newton iteration lives
        Field v = random_smooth_field(p.grid, 8).real_part();
        const auto& v_hat = v.spectrum();
        const auto jv = jacobian_apply(v_hat, q.values(), p);
        const auto F0 = fixed_point_residual(q_hat, p);

        const double eps = 1e-6;
        std::vector<cplx> pert(N);
        for (std::size_t m = 0; m < N; ++m) pert[m] = q_hat[m] + eps * v_hat[m];
        const auto F1 = fixed_point_residual(pert, p);
        double err = 0.0;
        for (std::size_t m = 0; m < N; ++m)
            err = std::max(err, std::abs((F1[m] - F0[m]) / eps - jv[m]));
        CHECK(err <= 1e-4 * sup_abs(jv));
    }

    SUBCASE("central differences show the O(eps^2) order") {
        Field v = random_smooth_field(p.grid, 12).real_part();
        const auto& v_hat = v.spectrum();
        const auto jv = jacobian_apply(v_hat, q.values(), p);

        auto central_error = [&](double eps) {
            std::vector<cplx> up(N), dn(N);
            for (std::size_t m = 0; m < N; ++m) {
                up[m] = q_hat[m] + eps * v_hat[m];
                dn[m] = q_hat[m] - eps * v_hat[m];
            }
            const auto Fp = fixed_point_residual(up, p);
            const auto Fm = fixed_point_residual(dn, p);
            double err = 0.0;
            for (std::size_t m = 0; m < N; ++m)
                err = std::max(err,
                               std::abs((Fp[m] - Fm[m]) / (2.0 * eps) - jv[m]));
            return err;
        };

        // the quadratic truncation term sits below the FD round-off floor
        // (~1e-15/eps), so assert the O(eps^2)-consistent absolute agreement
        const double scale = std::max(1.0, sup_abs(jv));
        CHECK(central_error(1e-4) <= 5e-7 * scale);
        CHECK(central_error(1e-5) <= 5e-7 * scale);
    }
}

TEST_CASE("solver reproduces the explicit cubic solution") {
    GroundStateProblem p = cubic_test_problem();
    GroundState g = solve(p);
    CHECK(g.iterations <= 25);
    CHECK(g.residual_sup < 1e-10);

    GroundState ex = exact_solution(2.0, p.a, p.grid);
    CHECK(sup_diff(g.profile.values(), ex.profile.values()) <= 1e-10);
}

TEST_CASE("critical-case mass at a = 1 and basin independence") {
    GroundStateProblem p;
    p.alpha = 8.0;
    p.a = 1.0;
    p.b = 2.0;
    p.grid = Grid::make(10.0, 1024);

    p.initial_amplitude = 1.4;
    GroundState g1 = solve(p);
    CHECK(g1.scalars.mass == doctest::Approx(2.465972485370718).epsilon(1e-8));

    p.initial_amplitude = 1.6;
    GroundState g2 = solve(p);
    CHECK(sup_diff(g1.profile.values(), g2.profile.values()) <= 1e-9);
}

TEST_CASE("exact solution families") {
    auto grid = Grid::make(20.0, 512);

    GroundState a2 = exact_solution(2.0, -1.25 * std::sqrt(2.0), grid);
    CHECK(a2.problem.b == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(a2.scalars.linf ==
          doctest::Approx(std::sqrt(6.0 / 5.0) * 1.25 * std::sqrt(2.0)).epsilon(1e-12));

    GroundState a8 = exact_solution(8.0, -13.0, grid);
    CHECK(a8.problem.b == doctest::Approx(25.0).epsilon(1e-14));
    CHECK(a8.scalars.linf == doctest::Approx(std::pow(105.0, 0.125)).epsilon(1e-12));

    GroundState a10 = exact_solution(10.0, -37.0 / 12.0, grid);
    CHECK(a10.problem.b == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a10.scalars.linf ==
          doctest::Approx(std::pow(std::sqrt(714.0) / 12.0, 0.2)).epsilon(1e-12));

    CHECK_THROWS_AS((void)exact_solution(4.0, -1.0, grid), std::domain_error);
    CHECK_THROWS_AS((void)exact_solution(2.0, 1.0, grid), std::domain_error);
}

TEST_CASE("Pokhozhaev identities") {
    SUBCASE("hold for the exact cubic solution") {
        auto grid = Grid::make(20.0, 256);
        GroundState ex = exact_solution(2.0, -1.25 * std::sqrt(2.0), grid);
        const auto r = pokhozhaev_residuals(ex);
        const auto s = pokhozhaev_scales(ex);
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(r[i]) <= 1e-10 * s[i]);
    }

    SUBCASE("energy signs in the critical case") {
        GroundStateProblem p;
        p.alpha = 8.0;
        p.b = 2.0;
        p.grid = Grid::make(10.0, 1024);

        p.a = 0.0;
        GroundState g0 = solve(p);
        CHECK(std::abs(g0.scalars.energy) <= 1e-8);

        p.a = 1.0;
        GroundState g1 = solve(p);
        CHECK(g1.scalars.energy < 0.0);
    }
}

TEST_CASE("profiles with a <= -sqrt(b) are positive and monotone") {
    GroundStateProblem p;
    p.alpha = 2.0;
    p.a = -1.5; // below -sqrt(2)
    p.b = 2.0;
    p.grid = Grid::make(10.0, 1024);
    p.initial_amplitude = 2.0;
    GroundState g = solve(p);

    double min_q = 1e300;
    for (const auto& z : g.profile.values()) min_q = std::min(min_q, z.real());
    CHECK(min_q >= -1e-10);

    // monotone decay away from the center
    const std::size_t half = p.grid->size() / 2;
    bool monotone = true;
    for (std::size_t j = half; j + 1 < p.grid->size(); ++j)
        if (g.profile.values()[j + 1].real() >
            g.profile.values()[j].real() + 1e-10)
            monotone = false;
    CHECK(monotone);
}

TEST_CASE("the a = 0 scaling family") {
    GroundStateProblem p;
    p.alpha = 8.0;
    p.a = 0.0;
    p.b = 2.0;
    p.grid = Grid::make(10.0, 1024);
    GroundState g = solve(p);

    SUBCASE("identity at b_new = b") {
        GroundState same = rescale(g, p.b);
        CHECK(sup_diff(same.profile.values(), g.profile.values()) <= 1e-11);
    }

    SUBCASE("mass is preserved in the critical case") {
        GroundState up = rescale(g, 3.0);
        CHECK(up.scalars.mass == doctest::Approx(g.scalars.mass).epsilon(1e-10));
        CHECK(up.residual_sup <= 1e-8);
    }

    SUBCASE("peak and width scale as stated for the cubic family") {
        GroundStateProblem pc = p;
        pc.alpha = 2.0;
        GroundState gc = solve(pc);
        GroundState up = rescale(gc, 4.0);
        CHECK(up.scalars.linf ==
              doctest::Approx(std::sqrt(2.0) * gc.scalars.linf).epsilon(1e-9));
        CHECK(up.residual_sup <= 1e-8);
    }

    SUBCASE("rescale requires a = 0") {
        GroundStateProblem pa = p;
        pa.a = 1.0;
        GroundState ga = solve(pa);
        CHECK_THROWS_AS((void)rescale(ga, 3.0), ConfigError);
    }
}

TEST_SUITE_END();
