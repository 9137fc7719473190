#include <catch_amalgamated.hpp>

#include <cmath>

#include "dplab/functionals.hpp"
#include "dplab/profiles.hpp"
#include "dplab/rng.hpp"

using namespace dplab;

namespace {

Field random_admissible(const Grid& g, Rng& rng) {
    MeasureSpec spec;
    const int nb = rng.uniform_int(1, 4);
    for (int b = 0; b < nb; ++b) {
        BumpSpec bump;
        bump.center = rng.uniform(-10.0, 10.0);
        bump.width = rng.uniform(0.2, 0.8);
        bump.mass = rng.uniform(0.2, 2.0);
        bump.shape = rng.uniform() < 0.5 ? BumpShape::gaussian : BumpShape::triangular;
        spec.bumps.push_back(bump);
    }
    return field_from_measure(spec, g);
}

}  // namespace

TEST_CASE("invariant_suite reproduces the peakon closed forms") {
    const Grid g = make_grid(40.0, 8192);
    const Field phi = peakon_field(1.0, 0.0, g);
    const InvariantRecord inv = invariant_suite(phi, 0.0, NonsmoothInfo::at({0.0}));
    CHECK(std::fabs(inv.e1 - 2.0) < 1e-6);
    CHECK(std::fabs(inv.e2 - 1.0 / 3.0) < 1e-6);
    CHECK(std::fabs(inv.e3 - 2.0 / 3.0) < 1e-6);
    CHECK(std::fabs(inv.f2 - 2.0) < 1e-6);
    CHECK(std::fabs(inv.f3 - 4.0 / 3.0) < 1e-6);
    CHECK(inv.x_norm_sq == inv.e2);
    CHECK(inv.max_abs == 1.0);
    // Steepest one-sided slope of e^{-|x|} is -1.
    CHECK(inv.min_slope == Catch::Approx(-1.0).margin(1e-4));

    const InvariantRecord zero = invariant_suite(Field(g));
    CHECK(zero.e1 == 0.0);
    CHECK(zero.e2 == 0.0);
    CHECK(zero.e3 == 0.0);
    CHECK(zero.f2 == 0.0);
    CHECK(zero.f3 == 0.0);
}

TEST_CASE("e2_spectral single modes") {
    const Grid g = make_grid(40.0, 2048);
    Field c(g);
    for (int j = 0; j < g.point_count; ++j) c[j] = 1.7;
    CHECK(std::fabs(e2_spectral(c) - 0.25 * 1.7 * 1.7 * 2.0 * g.half_length) < 1e-10);

    Field s(g);
    const double kappa = M_PI / g.half_length;
    for (int j = 0; j < g.point_count; ++j) s[j] = std::sin(kappa * g.node(j));
    const double expected = (1.0 + kappa * kappa) / (4.0 + kappa * kappa) * g.half_length;
    CHECK(std::fabs(e2_spectral(s) - expected) < 1e-10);
}

TEST_CASE("E2 paths agree and characterize the X norm") {
    const Grid g = make_grid(40.0, 4096);
    Rng rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        const Field u = random_admissible(g, rng);
        const InvariantRecord inv = invariant_suite(u);
        CHECK(std::fabs(inv.e2 - e2_spectral(u)) <= 1e-8 * std::fabs(inv.e2));
    }

    // Norm equivalence: multiplier lies in [1/4, 1).
    for (int trial = 0; trial < 100; ++trial) {
        const Field u = random_admissible(g, rng);
        Field sq(g);
        for (int j = 0; j < g.point_count; ++j) sq[j] = u[j] * u[j];
        const double l2sq = integrate(sq);
        const double e2 = e2_spectral(u);
        CHECK(e2 >= 0.25 * l2sq - 1e-10);
        CHECK(e2 <= l2sq + 1e-10);
    }
}

TEST_CASE("E2 is exactly invariant under circular shifts") {
    const Grid g = make_grid(40.0, 1024);
    Rng rng(5);
    const Field u = random_admissible(g, rng);
    Field shifted(g);
    const int offset = 217;
    for (int j = 0; j < g.point_count; ++j)
        shifted[(j + offset) % g.point_count] = u[j];
    const double a = invariant_suite(u).e2;
    const double b = invariant_suite(shifted).e2;
    CHECK(std::fabs(a - b) <= 1e-13 * std::fabs(a));
}

TEST_CASE("homogeneity and parity of E2, E3") {
    const Grid g = make_grid(40.0, 2048);
    Rng rng(77);
    const Field u = random_admissible(g, rng);
    const InvariantRecord base = invariant_suite(u);
    const InvariantRecord scaled = invariant_suite(2.5 * u);
    CHECK(std::fabs(scaled.e2 - 2.5 * 2.5 * base.e2) <= 1e-12 * std::fabs(scaled.e2));
    CHECK(std::fabs(scaled.e3 - 2.5 * 2.5 * 2.5 * base.e3) <= 1e-12 * std::fabs(scaled.e3));
    const InvariantRecord neg = invariant_suite(-1.0 * u);
    CHECK(std::fabs(neg.e3 + base.e3) <= 1e-12 * std::fabs(base.e3));
    CHECK(std::fabs(neg.e2 - base.e2) <= 1e-12 * std::fabs(base.e2));
}

TEST_CASE("x_distance: metric cases and the scaled peakon") {
    const Grid g = make_grid(40.0, 8192);
    const Field phi = peakon_field(1.0, 0.0, g);
    CHECK(x_distance(phi, phi) == 0.0);
    CHECK_THROWS_AS(x_distance(phi, Field(make_grid(40.0, 4096))), std::invalid_argument);

    const NonsmoothInfo ns = NonsmoothInfo::at({0.0});
    const Field stretched = 1.1 * phi;
    CHECK(std::fabs(x_distance(stretched, phi, ns) - std::sqrt(0.01 / 3.0)) < 1e-6);
    CHECK(std::fabs(x_distance(phi, Field(g), ns) - std::sqrt(1.0 / 3.0)) < 1e-6);
}
