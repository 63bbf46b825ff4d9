#include <doctest.h>

#include <cmath>

#include "b4nls/errors.hpp"
#include "b4nls/spectral.hpp"
#include "test_helpers.hpp"

using namespace b4nls;
using namespace b4nls::testing;

TEST_SUITE_BEGIN("spectral");

TEST_CASE("grid construction and layout") {
    auto g = Grid::make(20.0, 256);
    CHECK(g->spacing() == doctest::Approx(2.0 * Grid::pi() * 20.0 / 256.0).epsilon(1e-15));
    CHECK(g->nyquist() == doctest::Approx(6.4).epsilon(1e-15));

    auto g2 = Grid::make(10.0, 1024);
    CHECK(g2->nyquist() == doctest::Approx(51.2).epsilon(1e-15));

    // smallest admissible grid and its wavenumber order
    auto g3 = Grid::make(1.0, 8);
    const std::vector<double> expect{0, 1, 2, 3, -4, -3, -2, -1};
    for (std::size_t m = 0; m < 8; ++m)
        CHECK(g3->k(m) == doctest::Approx(expect[m]).epsilon(1e-15));
    CHECK(g3->x(0) == doctest::Approx(-Grid::pi()));

    CHECK_THROWS_AS((void)Grid::make(0.0, 64), ConfigError);
    CHECK_THROWS_AS((void)Grid::make(-2.0, 64), ConfigError);
    CHECK_THROWS_AS((void)Grid::make(10.0, 100), ConfigError);
    CHECK_THROWS_AS((void)Grid::make(10.0, 4), ConfigError);
}

TEST_CASE("round trip and Parseval on random smooth fields") {
    auto g = Grid::make(10.0, 512);
    for (unsigned seed : {1u, 2u, 3u}) {
        Field f = random_smooth_field(g, seed);
        Field back = Field::from_spectrum(g, f.spectrum());
        const double scale = sup_abs(f.values());
        CHECK(sup_diff(f.values(), back.values()) <= 1e-12 * scale);

        // mass computed physically vs the spectral Parseval sum
        const double phys = mass(f);
        const double spec = quadratic_norm_sq_from_spectrum(*g, f.spectrum(), 0);
        CHECK(phys == doctest::Approx(spec).epsilon(1e-12));
    }
}

TEST_CASE("forward transform matches a direct DFT") {
    auto g = Grid::make(3.0, 64);
    Field f = random_smooth_field(g, 11, 0.2);
    const auto ref = dft_reference(f.values());
    CHECK(sup_diff(f.spectrum(), ref) <= 1e-12 * sup_abs(ref));
}

TEST_CASE("spectral differentiation") {
    SUBCASE("sine eigenfunction, order 2") {
        auto g = Grid::make(7.0, 128);
        Field f = Field::sample_real(g, [&](double x) { return std::sin(x / 7.0); });
        Field d2 = derivative(f, 2);
        for (std::size_t j = 0; j < g->size(); ++j)
            CHECK(d2.values()[j].real() ==
                  doctest::Approx(-std::sin(g->x(j) / 7.0) / 49.0).epsilon(1e-10));
    }

    SUBCASE("constants differentiate to zero") {
        auto g = Grid::make(2.0, 64);
        Field one = Field::sample_real(g, [](double) { return 1.0; });
        for (int order : {1, 2, 3, 4})
            CHECK(sup_abs(derivative(one, order).values()) <= 1e-13);
    }

    SUBCASE("Gaussian fourth derivative against the closed form") {
        auto g = Grid::make(10.0, 1024);
        Field f = Field::sample_real(g, [](double x) { return std::exp(-x * x); });
        Field d4 = derivative(f, 4);
        double err = 0.0;
        for (std::size_t j = 0; j < g->size(); ++j) {
            const double x = g->x(j);
            const double exact =
                (16.0 * x * x * x * x - 48.0 * x * x + 12.0) * std::exp(-x * x);
            err = std::max(err, std::abs(d4.values()[j].real() - exact));
        }
        // round-off in the spectral coefficients is amplified by k_max^4
        // (~7e6 here), which bounds what double precision can deliver
        CHECK(err <= 1e-8);
    }

    SUBCASE("first derivative applied twice equals order 2") {
        auto g = Grid::make(5.0, 256);
        Field f = random_smooth_field(g, 4);
        Field d11 = derivative(derivative(f, 1), 1);
        Field d2 = derivative(f, 2);
        CHECK(sup_diff(d11.values(), d2.values()) <= 1e-10 * sup_abs(d2.values()));
    }
}

TEST_CASE("mass of reference profiles") {
    auto g = Grid::make(10.0, 1024);
    const double A = 1.3;

    Field gauss = Field::sample_real(g, [A](double x) { return A * std::exp(-x * x); });
    CHECK(mass(gauss) ==
          doctest::Approx(A * A * std::sqrt(Grid::pi() / 2.0)).epsilon(1e-12));

    Field sech = Field::sample_real(g, [A](double x) { return A / std::cosh(x); });
    CHECK(mass(sech) == doctest::Approx(2.0 * A * A).epsilon(1e-12));

    Field sg = Field::sample_real(
        g, [A](double x) { return A * std::exp(-x * x * x * x); });
    const double expect = std::pow(2.0, 0.75) * std::tgamma(1.25) * A * A;
    CHECK(mass(sg) == doctest::Approx(expect).epsilon(1e-12));

    Field zero = Field::zero(g);
    CHECK(mass(zero) == 0.0);
    CHECK(energy(zero, 1.0, 8.0) == 0.0);
}

TEST_CASE("norms are invariant under circular shifts and global phase") {
    auto g = Grid::make(10.0, 512);
    Field f = random_smooth_field(g, 7);
    Field shifted = circular_shift(f, 37);

    CHECK(mass(shifted) == doctest::Approx(mass(f)).epsilon(1e-12));
    CHECK(energy(shifted, 0.7, 4.0) == doctest::Approx(energy(f, 0.7, 4.0)).epsilon(1e-12));
    CHECK(lp_norm(shifted, 6.0) == doctest::Approx(lp_norm(f, 6.0)).epsilon(1e-12));

    std::vector<cplx> rot(f.size());
    const cplx phase = std::polar(1.0, 0.8);
    for (std::size_t j = 0; j < f.size(); ++j) rot[j] = phase * f.values()[j];
    Field rotated(g, std::move(rot));
    CHECK(energy(rotated, 0.7, 4.0) ==
          doctest::Approx(energy(f, 0.7, 4.0)).epsilon(1e-13));
}

TEST_CASE("lp_norm rejects p < 1") {
    auto g = Grid::make(5.0, 64);
    Field f = random_smooth_field(g, 1);
    CHECK_THROWS_AS((void)lp_norm(f, 0.5), std::domain_error);
}

TEST_CASE("tail level as a resolution indicator") {
    auto g = Grid::make(10.0, 1024);
    Field gauss = Field::sample_real(g, [](double x) { return std::exp(-x * x); });
    CHECK(tail_level(gauss) <= 1e-13);

    // white noise has no spectral decay
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<cplx> noise(g->size());
    for (auto& z : noise) z = cplx(unit(rng), unit(rng));
    CHECK(tail_level(Field(g, std::move(noise))) > 0.05);

    CHECK(tail_level(Field::zero(g)) == 0.0);
}

TEST_CASE("trigonometric interpolant reproduces values between nodes") {
    auto g = Grid::make(4.0, 256);
    Field f = random_smooth_field(g, 9, 0.5);
    // compare against a denser grid of the same field
    auto g2 = Grid::make(4.0, 512);
    Field f2 = resample(f, g2);
    Field back = resample(f2, g);
    CHECK(sup_diff(back.values(), f.values()) <= 1e-11 * sup_abs(f.values()));

    Field gauss = Field::sample_real(g, [](double x) { return std::exp(-x * x); });
    const double xq = 0.7345;
    CHECK(sample_interpolant_at(gauss, xq).real() ==
          doctest::Approx(std::exp(-xq * xq)).epsilon(1e-11));
}

TEST_SUITE_END();
