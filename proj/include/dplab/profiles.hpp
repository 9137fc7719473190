#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dplab/functionals.hpp"
#include "dplab/grid.hpp"
#include "dplab/quadrature.hpp"
#include "dplab/rng.hpp"
#include "dplab/spectral.hpp"

namespace dplab {

/// Peakon c*exp(-|x-x0|), sampled with |.| taken on the periodic circle.
inline Field peakon_field(double c, double x0, const Grid& g) {
    if (c == 0.0) throw std::invalid_argument("peakon_field: speed must be nonzero");
    Field u(g);
    for (int j = 0; j < g.point_count; ++j)
        u[j] = c * std::exp(-g.circular_distance(g.node(j), x0));
    return u;
}

/// Closed form of v = (4 - dxx)^{-1} applied to a peakon of speed c centered
/// at the origin: c*((1/3) e^{-|x|} - (1/6) e^{-2|x|}).
inline double peakon_v_exact(double c, double x) {
    const double a = std::fabs(x);
    return c * (std::exp(-a) / 3.0 - std::exp(-2.0 * a) / 6.0);
}

/// Shock peakon -(1/(t+k)) sgn(x) e^{-|x|}; the midpoint value is fixed to 0.
inline Field shock_peakon_field(double k, double t, const Grid& g) {
    if (!(k > 0.0)) throw std::invalid_argument("shock_peakon_field: k must be positive");
    if (t < 0.0) throw std::invalid_argument("shock_peakon_field: time must be nonnegative");
    Field u(g);
    const double amp = 1.0 / (t + k);
    for (int j = 0; j < g.point_count; ++j) {
        const double x = g.node(j);
        const double s = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
        u[j] = -amp * s * std::exp(-std::fabs(x));
    }
    return u;
}

struct PeakonParticle {
    double amplitude = 0.0;
    double position = 0.0;
};

/// Particle ansatz u = sum_i p_i exp(-|x - q_i|); positions strictly increasing.
struct PeakonState {
    std::vector<PeakonParticle> particles;

    void validate() const {
        for (size_t i = 0; i + 1 < particles.size(); ++i)
            if (!(particles[i].position < particles[i + 1].position))
                throw std::invalid_argument("PeakonState: positions must be strictly increasing");
        for (const auto& p : particles)
            if (!std::isfinite(p.amplitude) || !std::isfinite(p.position))
                throw std::invalid_argument("PeakonState: values must be finite");
    }
};

inline Field multipeakon_field(const PeakonState& state, const Grid& g) {
    state.validate();
    Field u(g);
    for (int j = 0; j < g.point_count; ++j) {
        double acc = 0.0;
        for (const auto& p : state.particles)
            acc += p.amplitude * std::exp(-g.circular_distance(g.node(j), p.position));
        u[j] = acc;
    }
    return u;
}

enum class BumpShape { gaussian, triangular };

struct BumpSpec {
    double center = 0.0;
    double mass = 0.0;
    double width = 0.0;
    BumpShape shape = BumpShape::gaussian;
};

/// Mixture of nonnegative bumps, a grid stand-in for a nonnegative Radon
/// measure y0 of finite total mass.
struct MeasureSpec {
    std::vector<BumpSpec> bumps;

    void validate(const Grid& g) const {
        for (const auto& b : bumps) {
            if (b.mass < 0.0) throw std::invalid_argument("MeasureSpec: negative mass");
            if (!(b.width > 0.0)) throw std::invalid_argument("MeasureSpec: width must be positive");
            if (std::fabs(b.center) >= 0.5 * g.half_length)
                throw std::invalid_argument("MeasureSpec: center outside (-L/2, L/2)");
        }
    }
};

namespace detail {

inline double bump_density(const BumpSpec& b, double dist) {
    if (b.shape == BumpShape::gaussian) {
        const double z = dist / b.width;
        return b.mass * std::exp(-0.5 * z * z) / (b.width * std::sqrt(2.0 * M_PI));
    }
    const double t = 1.0 - dist / b.width;
    return t > 0.0 ? b.mass * t / b.width : 0.0;
}

}  // namespace detail

/// Samples the mixture density itself (y0 >= 0).
inline Field measure_density(const MeasureSpec& spec, const Grid& g) {
    spec.validate(g);
    Field y(g);
    for (int j = 0; j < g.point_count; ++j) {
        double acc = 0.0;
        for (const auto& b : spec.bumps)
            acc += detail::bump_density(b, g.circular_distance(g.node(j), b.center));
        y[j] = acc;
    }
    return y;
}

/// u0 = (1 - dxx)^{-1} y0 for the mixture y0; satisfies the nonnegative
/// momentum hypothesis by construction.
inline Field field_from_measure(const MeasureSpec& spec, const Grid& g) {
    return helmholtz_inverse(measure_density(spec, g), 1.0);
}

/// Smooth stand-in for the peakon: a single narrow bump of mass 2c at x0.
inline MeasureSpec mollified_peakon_spec(double c, double x0, double width = 0.02) {
    MeasureSpec spec;
    spec.bumps.push_back({x0, 2.0 * c, width, BumpShape::gaussian});
    return spec;
}

inline Field mollified_peakon(double c, double x0, const Grid& g, double width = 0.02) {
    return field_from_measure(mollified_peakon_spec(c, x0, width), g);
}

/// Seeded random perturbation of the mollified peakon, rescaled until both
/// smallness conditions of the stability theorem hold:
///   ||u0 - c phi||_X < c*eps  and  |E3(u0) - E3(c phi)| < c^3*eps.
/// Perturbations are nonnegative bump mixtures, so y0 >= 0 is automatic.
inline Field perturbed_peakon(double c, double eps, uint64_t seed, const Grid& g,
                              double mollify_width = 0.02) {
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("perturbed_peakon: need 0 < eps < 1/2");
    if (!(c > 0.0)) throw std::invalid_argument("perturbed_peakon: need c > 0");

    Rng rng(seed * 0x9e3779b97f4a7c15ull + 0xd1b54a32d192ed03ull);
    MeasureSpec pert;
    const int n_bumps = rng.uniform_int(2, 5);
    for (int i = 0; i < n_bumps; ++i) {
        BumpSpec b;
        b.center = rng.uniform(-8.0, 8.0);
        b.width = rng.uniform(0.15, 0.6);
        b.mass = rng.uniform(0.2, 1.0);
        b.shape = rng.uniform() < 0.5 ? BumpShape::gaussian : BumpShape::triangular;
        pert.bumps.push_back(b);
    }
    // Normalize the raw mixture to an X-size of ~0.3*c*eps, then shrink
    // geometrically until both conditions hold.
    const Field base = mollified_peakon(c, 0.0, g, mollify_width);
    const Field reference = peakon_field(c, 0.0, g);
    const double e3_ref = 2.0 * c * c * c / 3.0;

    Field pert_field = field_from_measure(pert, g);
    const double raw_size = x_distance(pert_field, Field(g));
    double scale = raw_size > 0.0 ? 0.3 * c * eps / raw_size : 0.0;

    for (int attempt = 0; attempt < 100; ++attempt) {
        Field u0 = base + scale * pert_field;
        const double dist = x_distance(u0, reference);
        Field cube(g);
        for (int j = 0; j < g.point_count; ++j) cube[j] = u0[j] * u0[j] * u0[j];
        const double e3 = integrate(cube);
        if (dist < c * eps && std::fabs(e3 - e3_ref) < c * c * c * eps) return u0;
        scale *= 0.5;
    }
    throw std::runtime_error("perturbed_peakon: rescaling failed to satisfy the smallness conditions");
}

}  // namespace dplab
