#pragma once

#include <cmath>
#include <stdexcept>

#include "dplab/grid.hpp"
#include "dplab/kinkfit.hpp"
#include "dplab/quadrature.hpp"
#include "dplab/spectral.hpp"

namespace dplab {

/// Conserved quantities and norms of one snapshot.
struct InvariantRecord {
    double time = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    double x_norm_sq = 0.0;  // identical to e2 by definition
    double f2 = 0.0;
    double f3 = 0.0;
    double min_slope = 0.0;
    double max_abs = 0.0;
};

/// Multiplier form of E2 on the discrete wavenumbers:
/// E2 = 2L * sum_k (1+k^2)/(4+k^2) |c_k|^2 with both half-spectrum sides counted.
inline double e2_spectral(const Field& u) {
    const Spectrum c = spectrum_of(u);
    const Grid& g = u.grid;
    const int nyq = g.point_count / 2;
    auto weight = [&](int b) {
        const double k = wavenumber(g, b);
        return (1.0 + k * k) / (4.0 + k * k);
    };
    double acc = weight(0) * std::norm(c[0]);
    for (int b = 1; b < nyq; ++b) acc += 2.0 * weight(b) * std::norm(c[static_cast<size_t>(b)]);
    acc += weight(nyq) * std::norm(c[static_cast<size_t>(nyq)]);
    return g.period() * acc;
}

/// All invariants of a snapshot. The default path differentiates spectrally;
/// with NonsmoothInfo the pointwise functionals switch to kink-corrected
/// quadrature and piecewise differences, which is what makes peaked profiles
/// come out right (spectral calculus rings on a kink).
inline InvariantRecord invariant_suite(const Field& u, double time = 0.0,
                                       const NonsmoothInfo& ns = {}) {
    if (!u.all_finite()) throw std::invalid_argument("invariant_suite: field not finite");
    const Grid& g = u.grid;
    InvariantRecord rec;
    rec.time = time;
    rec.max_abs = max_abs(u);

    Field sq(g), cube(g);
    for (int j = 0; j < g.point_count; ++j) {
        sq[j] = u[j] * u[j];
        cube[j] = sq[j] * u[j];
    }

    if (!ns.enabled) {
        const Field y = momentum_density(u);
        const Field v = helmholtz_inverse(u, 2.0);
        rec.e2 = integrate(pointwise(y, v));
        rec.x_norm_sq = rec.e2;
        rec.e1 = integrate(y);
        rec.e3 = integrate(cube);
        const Field ux = spectral_derivative(u);
        Field f2_integrand(g), f3_integrand(g);
        for (int j = 0; j < g.point_count; ++j) {
            const double uxx2 = ux[j] * ux[j];
            f2_integrand[j] = sq[j] + uxx2;
            f3_integrand[j] = cube[j] + u[j] * uxx2;
        }
        rec.f2 = integrate(f2_integrand);
        rec.f3 = integrate(f3_integrand);
        rec.min_slope = min_value(ux);
        return rec;
    }

    // The sampled kinks alias the y*v product; use the corrected spectrum.
    rec.e2 = e2_split(u, ns);
    rec.x_norm_sq = rec.e2;
    const std::vector<int> kinks = detail::kink_nodes(g, ns.kink_positions);
    // The integral of y equals the integral of u on the periodic grid.
    rec.e1 = integrate_with_kinks(u, kinks);
    rec.e3 = integrate_with_kinks(cube, kinks);

    const PiecewiseDerivative du = derivative_with_kinks(u, kinks);
    const int n = g.point_count;
    std::vector<double> ux2(static_cast<size_t>(n)), uux2(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double d = du.samples[static_cast<size_t>(j)];
        ux2[static_cast<size_t>(j)] = d * d;
        uux2[static_cast<size_t>(j)] = u[j] * d * d;
    }
    const int pieces = static_cast<int>(kinks.size());
    std::vector<double> ux2_l(static_cast<size_t>(pieces)), ux2_r(static_cast<size_t>(pieces));
    std::vector<double> uux2_l(static_cast<size_t>(pieces)), uux2_r(static_cast<size_t>(pieces));
    for (int p = 0; p < pieces; ++p) {
        const double dl = du.left_limit[static_cast<size_t>(p)];
        const double dr = du.right_limit[static_cast<size_t>(p)];
        const double uv = u[kinks[static_cast<size_t>(p)]];
        ux2_l[static_cast<size_t>(p)] = dl * dl;
        ux2_r[static_cast<size_t>(p)] = dr * dr;
        uux2_l[static_cast<size_t>(p)] = uv * dl * dl;
        uux2_r[static_cast<size_t>(p)] = uv * dr * dr;
    }
    rec.f2 = integrate_with_kinks(sq, kinks) +
             integrate_piecewise(g, ux2, kinks, ux2_l, ux2_r);
    rec.f3 = rec.e3 + integrate_piecewise(g, uux2, kinks, uux2_l, uux2_r);

    rec.min_slope = du.samples.empty() ? 0.0 : du.samples[0];
    for (double d : du.samples) rec.min_slope = std::min(rec.min_slope, d);
    for (int p = 0; p < pieces; ++p) {
        rec.min_slope = std::min(rec.min_slope, du.left_limit[static_cast<size_t>(p)]);
        rec.min_slope = std::min(rec.min_slope, du.right_limit[static_cast<size_t>(p)]);
    }
    return rec;
}

/// X-distance sqrt(E2(u - w)); symmetric, zero iff u == w on the grid. If the
/// difference is peaked, pass its kinks for the corrected path.
inline double x_distance(const Field& u, const Field& w, const NonsmoothInfo& ns = {}) {
    require_same_grid(u, w, "x_distance");
    const Field d = u - w;
    if (ns.enabled) return std::sqrt(std::max(0.0, e2_split(d, ns)));
    const Field y = momentum_density(d);
    const Field v = helmholtz_inverse(d, 2.0);
    const double e2 = integrate(pointwise(y, v));
    return std::sqrt(std::max(0.0, e2));
}

}  // namespace dplab
