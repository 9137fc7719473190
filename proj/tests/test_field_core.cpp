#include <catch_amalgamated.hpp>

#include <cmath>

#include "dplab/functionals.hpp"
#include "dplab/grid.hpp"
#include "dplab/profiles.hpp"
#include "dplab/quadrature.hpp"
#include "dplab/spectral.hpp"

using namespace dplab;

namespace {

double rel_l2(const Field& a, const Field& b) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < a.size(); ++j) {
        num += (a[j] - b[j]) * (a[j] - b[j]);
        den += b[j] * b[j];
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("make_grid validates its arguments") {
    CHECK_THROWS_AS(make_grid(40.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(40.0, 63), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 64), std::invalid_argument);
    const Grid g = make_grid(40.0, 4096);
    CHECK(g.dx == Catch::Approx(80.0 / 4096).epsilon(0));
    CHECK(g.node(0) == -40.0);
    CHECK(g.node(4095) == Catch::Approx(40.0 - g.dx));
}

TEST_CASE("spectral_derivative is exact on resolved modes") {
    const Grid g = make_grid(40.0, 256);
    Field f(g), expected(g);
    const double k = M_PI / g.half_length;
    for (int j = 0; j < g.point_count; ++j) {
        f[j] = std::sin(k * g.node(j));
        expected[j] = k * std::cos(k * g.node(j));
    }
    const Field d = spectral_derivative(f);
    for (int j = 0; j < g.point_count; ++j)
        CHECK(std::fabs(d[j] - expected[j]) < 1e-10);

    Field c(g);
    for (int j = 0; j < g.point_count; ++j) c[j] = 3.25;
    const Field dc = spectral_derivative(c);
    CHECK(max_abs(dc) < 1e-12);
}

TEST_CASE("spectral_derivative of a mollified peakon matches finite differences") {
    const Grid g = make_grid(40.0, 4096);
    const Field u = mollified_peakon(1.0, 0.0, g, 0.3);
    const Field du = spectral_derivative(u);
    // Centered-difference oracle, 4th order.
    Field fd(g);
    const int n = g.point_count;
    for (int j = 0; j < n; ++j) {
        auto at = [&](int i) { return u[((i % n) + n) % n]; };
        fd[j] = (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * g.dx);
    }
    CHECK(rel_l2(du, fd) < 1e-6);
}

TEST_CASE("integrate: zero field, full periods, decaying tails") {
    const Grid g = make_grid(40.0, 8192);
    CHECK(integrate(Field(g)) == 0.0);

    Field cosed(g);
    for (int j = 0; j < g.point_count; ++j)
        cosed[j] = std::cos(M_PI * g.node(j) / g.half_length);
    CHECK(std::fabs(integrate(cosed)) < 1e-12);

    // The sampled peakon has a kink at the origin, so the plain rectangle sum
    // carries an O(dx^2/6) error (~1.6e-5 here). The kink-corrected quadrature
    // reaches the closed form 2 - 2 e^{-40} to 1e-6 on this same grid.
    const Field phi = peakon_field(1.0, 0.0, g);
    const double exact = 2.0 - 2.0 * std::exp(-40.0);
    CHECK(std::fabs(integrate(phi) - exact) < 2e-5);
    CHECK(std::fabs(integrate_with_kinks(phi, NonsmoothInfo::at({0.0})) - exact) < 1e-6);
}

TEST_CASE("helmholtz_inverse: peakon values and constants") {
    const Grid g = make_grid(40.0, 8192);
    const Field phi = peakon_field(1.0, 0.0, g);
    // Sampling the kink aliases its k^-2 tail into the band (~4e-6 flat); the
    // plain multiplier carries that, the kink-split inverse does not.
    const Field v_plain = helmholtz_inverse(phi, 2.0);
    const Field v = helmholtz_inverse_split(phi, 2.0, NonsmoothInfo::at({0.0}));
    const int center = g.point_count / 2;
    REQUIRE(g.node(center) == 0.0);
    CHECK(std::fabs(v_plain[center] - 1.0 / 6.0) < 1e-5);
    CHECK(std::fabs(v[center] - 1.0 / 6.0) < 1e-6);
    // Off-grid closed form at x = ln 2: (1/3) e^{-x} - (1/6) e^{-2x} = 1/8.
    CHECK(std::fabs(evaluate_at(v, std::log(2.0)) - 0.125) < 1e-6);
    CHECK(std::fabs(peakon_v_exact(1.0, std::log(2.0)) - 0.125) < 1e-15);
    // Sup-norm agreement with the closed form across the grid.
    double sup = 0.0;
    for (int j = 0; j < g.point_count; ++j)
        sup = std::max(sup, std::fabs(v[j] - peakon_v_exact(1.0, g.node(j))));
    CHECK(sup < 1e-6);

    Field c(g);
    for (int j = 0; j < g.point_count; ++j) c[j] = 2.5;
    const Field vc = helmholtz_inverse(c, 3.0);
    for (int j = 0; j < g.point_count; j += 97)
        CHECK(vc[j] == Catch::Approx(2.5 / 9.0).margin(1e-12));

    CHECK_THROWS_AS(helmholtz_inverse(c, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(helmholtz_inverse(c, -1.0), std::invalid_argument);
}

TEST_CASE("evaluate_at: exact nodes, resolved modes, refined-grid oracle") {
    const Grid g = make_grid(40.0, 1024);
    Field f(g);
    const double k = M_PI / g.half_length;
    for (int j = 0; j < g.point_count; ++j) f[j] = std::sin(k * g.node(j));
    CHECK(std::fabs(evaluate_at(f, g.half_length / 2.0) - 1.0) < 1e-10);
    CHECK(evaluate_at(f, g.node(137)) == f[137]);
    CHECK_THROWS_AS(evaluate_at(f, 40.0), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_at(f, -41.0), std::invalid_argument);

    // Mollified peakon off grid against a 4x finer grid.
    const Grid fine = make_grid(40.0, 4096);
    const Field u_coarse = mollified_peakon(1.0, 0.0, g, 0.1);
    const Field u_fine = mollified_peakon(1.0, 0.0, fine, 0.1);
    const double x = 0.005;
    CHECK(std::fabs(evaluate_at(u_coarse, x) - evaluate_at(u_fine, x)) < 1e-6);
    // Cubic fallback is less accurate but close on smooth data.
    CHECK(std::fabs(evaluate_at(u_coarse, x, Interp::cubic) - evaluate_at(u_fine, x)) < 1e-4);
}

TEST_CASE("field invariants: inverse pairs, identity for v, periodicity, positivity") {
    const Grid g = make_grid(40.0, 4096);
    MeasureSpec spec;
    spec.bumps.push_back({-3.0, 1.5, 0.4, BumpShape::gaussian});
    spec.bumps.push_back({2.0, 0.7, 0.3, BumpShape::triangular});
    const Field u = field_from_measure(spec, g);

    // (m^2 - dxx) applied back onto helmholtz_inverse recovers the input.
    for (double m : {1.0, 2.0}) {
        const Field v = helmholtz_inverse(u, m);
        const Field recovered = m * m * v - second_derivative(v);
        CHECK(rel_l2(recovered, u) < 1e-10);
    }

    // dxx v = 4v - u within 1e-10.
    const Field v = helmholtz_inverse(u, 2.0);
    const Field lhs = second_derivative(v);
    Field rhs(g);
    for (int j = 0; j < g.point_count; ++j) rhs[j] = 4.0 * v[j] - u[j];
    double worst = 0.0;
    for (int j = 0; j < g.point_count; ++j) worst = std::max(worst, std::fabs(lhs[j] - rhs[j]));
    CHECK(worst < 1e-10);

    CHECK(std::fabs(integrate(spectral_derivative(u))) < 1e-10);

    // Positive data stays nonnegative through the kernel.
    CHECK(min_value(u) > -1e-12);
    CHECK(min_value(helmholtz_inverse(u, 1.0)) > -1e-12);
}

TEST_CASE("translate shifts band-limited fields exactly") {
    const Grid g = make_grid(40.0, 1024);
    const Field u = mollified_peakon(1.0, 0.0, g, 0.2);
    const Field shifted = translate(u, 10.0 * g.dx);
    for (int j = 0; j < g.point_count; ++j) {
        const int src = ((j - 10) % g.point_count + g.point_count) % g.point_count;
        CHECK(std::fabs(shifted[j] - u[src]) < 1e-10);
    }
}
