#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "dplab/grid.hpp"
#include "dplab/quadrature.hpp"
#include "dplab/spectral.hpp"

namespace dplab {

/// Sampling a slope kink aliases its k^-2 spectral tail across the whole band,
/// which costs O(dx^2) in the Helmholtz inverses and quadratic functionals.
/// The split below removes each kink analytically: the standard kink profile
/// kappa(x) = e^{-|x|} (periodized) has exact Fourier coefficients and an
/// exact (m^2 - dxx)^{-1} image, so only a smooth remainder goes through the
/// discrete transform.

/// Periodization of e^{-a|x|} over the circle, at circle distance d in [0, L].
inline double periodized_exponential(const Grid& g, double d, double a = 1.0) {
    const double L = g.half_length;
    return std::exp(-a * d) * (1.0 + std::exp(-2.0 * a * (L - d))) /
           (1.0 - std::exp(-2.0 * a * L));
}

/// Periodization of (m^2 - dxx)^{-1} e^{-|x|} for m > 1:
/// e^{-|x|}/(m^2-1) - e^{-m|x|}/(m(m^2-1)), image of the unit kink.
inline double periodized_helm_kernel(const Grid& g, double d, double m) {
    if (!(m > 1.0))
        throw std::invalid_argument("periodized_helm_kernel: closed form needs m > 1");
    const double c = 1.0 / (m * m - 1.0);
    return c * periodized_exponential(g, d, 1.0) -
           c / m * periodized_exponential(g, d, m);
}

struct KinkSplit {
    std::vector<int> nodes;         // kink node indices
    std::vector<double> strength;   // a_i: u ~ a_i e^{-|x - x_i|} near x_i
    Field remainder;                // u minus the analytic kink profiles
};

/// Estimates each kink's strength from the one-sided slope jump
/// (kappa itself jumps by -2) and subtracts the analytic profiles.
inline KinkSplit split_kinks(const Field& u, const NonsmoothInfo& ns) {
    KinkSplit split;
    split.remainder = u;
    if (!ns.enabled || ns.kink_positions.empty()) return split;
    split.nodes = detail::kink_nodes(u.grid, ns.kink_positions);
    const PiecewiseDerivative du = derivative_with_kinks(u, split.nodes);
    const Grid& g = u.grid;
    for (size_t i = 0; i < split.nodes.size(); ++i) {
        const double jump = du.right_limit[i] - du.left_limit[i];
        split.strength.push_back(-0.5 * jump);
    }
    for (int j = 0; j < g.point_count; ++j) {
        double acc = 0.0;
        for (size_t i = 0; i < split.nodes.size(); ++i) {
            const double d = g.circular_distance(g.node(j), g.node(split.nodes[i]));
            acc += split.strength[i] * periodized_exponential(g, d, 1.0);
        }
        split.remainder[j] -= acc;
    }
    return split;
}

/// Fourier coefficients of the underlying piecewise-smooth function: FFT of
/// the smooth remainder plus the exact coefficients of the kink profiles.
inline Spectrum exact_spectrum(const KinkSplit& split) {
    const Grid& g = split.remainder.grid;
    Spectrum c = spectrum_of(split.remainder);
    const int nyq = g.point_count / 2;
    const double L = g.half_length;
    for (size_t i = 0; i < split.nodes.size(); ++i) {
        const double theta0 = g.node(split.nodes[i]) + L;
        const double a = split.strength[i];
        for (int b = 0; b <= nyq; ++b) {
            const double k = wavenumber(g, b);
            const double mag = a / (L * (1.0 + k * k));
            const double ph = -k * theta0;
            std::complex<double> term(mag * std::cos(ph), mag * std::sin(ph));
            if (b == nyq) term = std::complex<double>(2.0 * term.real(), 0.0);
            c[static_cast<size_t>(b)] += term;
        }
    }
    return c;
}

/// (m^2 - dxx)^{-1} u for peaked data: analytic image of the kinks plus the
/// spectral inverse of the smooth remainder.
inline Field helmholtz_inverse_split(const Field& u, double m, const NonsmoothInfo& ns) {
    const KinkSplit split = split_kinks(u, ns);
    Field v = helmholtz_inverse(split.remainder, m);
    const Grid& g = u.grid;
    for (size_t i = 0; i < split.nodes.size(); ++i) {
        for (int j = 0; j < g.point_count; ++j) {
            const double d = g.circular_distance(g.node(j), g.node(split.nodes[i]));
            v[j] += split.strength[i] * periodized_helm_kernel(g, d, m);
        }
    }
    return v;
}

/// E2 through the multiplier sum on the corrected spectrum.
inline double e2_from_spectrum(const Grid& g, const Spectrum& c) {
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

inline double e2_split(const Field& u, const NonsmoothInfo& ns) {
    return e2_from_spectrum(u.grid, exact_spectrum(split_kinks(u, ns)));
}

}  // namespace dplab
