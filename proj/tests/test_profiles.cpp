#include <catch_amalgamated.hpp>

#include <cmath>

#include "dplab/extrema.hpp"
#include "dplab/functionals.hpp"
#include "dplab/kinkfit.hpp"
#include "dplab/profiles.hpp"

using namespace dplab;

TEST_CASE("peakon_field samples the traveling wave") {
    const Grid g = make_grid(40.0, 8192);
    CHECK_THROWS_AS(peakon_field(0.0, 0.0, g), std::invalid_argument);
    const Field phi = peakon_field(1.0, 0.0, g);
    const int center = g.point_count / 2;
    CHECK(phi[center] == 1.0);

    const NonsmoothInfo ns = NonsmoothInfo::at({0.0});
    const InvariantRecord inv = invariant_suite(phi, 0.0, ns);
    CHECK(std::fabs(inv.e3 - 2.0 / 3.0) < 1e-6);

    // Height of v for a speed-2 peakon is 2/6.
    const Field two_phi = peakon_field(2.0, 0.0, g);
    const Field v = helmholtz_inverse_split(two_phi, 2.0, ns);
    CHECK(std::fabs(max_value(v) - 1.0 / 3.0) < 1e-6);
}

TEST_CASE("peakon_v_exact closed form") {
    CHECK(peakon_v_exact(1.0, 0.0) == Catch::Approx(1.0 / 6.0).margin(1e-15));
    CHECK(std::fabs(peakon_v_exact(1.0, 60.0)) < 1e-20);
    CHECK(std::fabs(peakon_v_exact(1.0, -60.0)) < 1e-20);
    CHECK(peakon_v_exact(1.0, std::log(2.0)) == Catch::Approx(0.125).margin(1e-15));
    CHECK(peakon_v_exact(3.0, 0.0) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("shock_peakon_field matches the decaying shock profile") {
    const Grid g = make_grid(40.0, 4096);
    CHECK_THROWS_AS(shock_peakon_field(0.0, 0.0, g), std::invalid_argument);
    CHECK_THROWS_AS(shock_peakon_field(-1.0, 0.0, g), std::invalid_argument);
    CHECK_THROWS_AS(shock_peakon_field(1.0, -0.5, g), std::invalid_argument);

    const Field u0 = shock_peakon_field(1.0, 0.0, g);
    const int center = g.point_count / 2;
    CHECK(u0[center] == 0.0);
    // One-sided limits at the jump: -1 from the right, +1 from the left.
    CHECK(u0[center + 1] == Catch::Approx(-std::exp(-g.dx)).margin(1e-15));
    CHECK(u0[center - 1] == Catch::Approx(+std::exp(-g.dx)).margin(1e-15));

    const Field u1 = shock_peakon_field(1.0, 1.0, g);
    CHECK(max_abs(u1) == Catch::Approx(0.5).margin(0.01));
    CHECK(std::fabs(integrate(u1)) < 1e-10);
    CHECK(std::fabs(integrate(u0)) < 1e-10);
}

TEST_CASE("multipeakon_field superposition") {
    const Grid g = make_grid(40.0, 4096);
    PeakonState single;
    single.particles = {{1.5, 0.0}};
    const Field a = multipeakon_field(single, g);
    const Field b = peakon_field(1.5, 0.0, g);
    for (int j = 0; j < g.point_count; j += 13) CHECK(a[j] == b[j]);

    PeakonState antisym;
    antisym.particles = {{1.0, -3.0}, {-1.0, 3.0}};
    const Field odd = multipeakon_field(antisym, g);
    CHECK(std::fabs(integrate(odd)) < 1e-10);

    PeakonState pair;
    pair.particles = {{1.0, -3.0}, {1.0, 3.0}};
    const Field even = multipeakon_field(pair, g);
    const int center = g.point_count / 2;
    CHECK(std::fabs(even[center] - 2.0 * std::exp(-3.0)) < 1e-12);

    // Linearity in the amplitudes.
    PeakonState doubled;
    doubled.particles = {{2.0, -3.0}, {2.0, 3.0}};
    const Field twice = multipeakon_field(doubled, g);
    for (int j = 0; j < g.point_count; j += 397) CHECK(twice[j] == 2.0 * even[j]);

    PeakonState bad;
    bad.particles = {{1.0, 3.0}, {1.0, -3.0}};
    CHECK_THROWS_AS(multipeakon_field(bad, g), std::invalid_argument);
}

TEST_CASE("field_from_measure builds admissible data") {
    const Grid g = make_grid(40.0, 8192);
    CHECK(max_abs(field_from_measure(MeasureSpec{}, g)) == 0.0);

    MeasureSpec bad;
    bad.bumps.push_back({0.0, -1.0, 0.1, BumpShape::gaussian});
    CHECK_THROWS_AS(field_from_measure(bad, g), std::invalid_argument);

    // A narrow mass-2 bump approximates the peakon, linearly in the width.
    auto sup_gap = [&](double width) {
        const Field u = mollified_peakon(1.0, 0.0, g, width);
        const Field phi = peakon_field(1.0, 0.0, g);
        return max_abs(u - phi);
    };
    const double gap_wide = sup_gap(0.02);
    const double gap_half = sup_gap(0.01);
    CHECK(gap_wide <= 0.02);
    CHECK(gap_wide / gap_half == Catch::Approx(2.0).margin(0.5));

    MeasureSpec two;
    two.bumps.push_back({-4.0, 2.0, 0.3, BumpShape::gaussian});
    two.bumps.push_back({5.0, 1.0, 0.4, BumpShape::triangular});
    const Field u = field_from_measure(two, g);
    CHECK(min_value(u) > 0.0);
    CHECK(min_value(measure_density(two, g)) >= 0.0);
    CHECK(min_value(momentum_density(u)) > -1e-10);
}

TEST_CASE("perturbed_peakon satisfies both smallness conditions") {
    const Grid g = make_grid(40.0, 4096);
    CHECK_THROWS_AS(perturbed_peakon(1.0, 0.6, 1, g), std::invalid_argument);
    CHECK_THROWS_AS(perturbed_peakon(1.0, 0.0, 1, g), std::invalid_argument);

    const double eps = 0.01;
    for (uint64_t seed : {7ull, 11ull}) {
        const Field u0 = perturbed_peakon(1.0, eps, seed, g);
        const Field phi = peakon_field(1.0, 0.0, g);
        CHECK(x_distance(u0, phi) < eps);
        Field cube(g);
        for (int j = 0; j < g.point_count; ++j) cube[j] = u0[j] * u0[j] * u0[j];
        CHECK(std::fabs(integrate(cube) - 2.0 / 3.0) < eps);
        CHECK(min_value(momentum_density(u0)) > -1e-10);
    }

    // Thresholds scale with c and c^3.
    const double c = 2.0;
    const Field u0 = perturbed_peakon(c, eps, 3, g);
    CHECK(x_distance(u0, peakon_field(c, 0.0, g)) < c * eps);
    Field cube(g);
    for (int j = 0; j < g.point_count; ++j) cube[j] = u0[j] * u0[j] * u0[j];
    CHECK(std::fabs(integrate(cube) - c * c * c * 2.0 / 3.0) < c * c * c * eps);

    // Vanishing perturbation budget returns the mollified peakon itself.
    const Field tiny = perturbed_peakon(1.0, 1e-4, 5, g);
    const Field base = mollified_peakon(1.0, 0.0, g);
    CHECK(x_distance(tiny, base) < 1e-4);
}
