#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dplab/evolution.hpp"
#include "dplab/extrema.hpp"
#include "dplab/functionals.hpp"
#include "dplab/grid.hpp"
#include "dplab/profiles.hpp"
#include "dplab/spectral.hpp"

namespace dplab {

/// P(y) = y^3 - (1/4) E2 y + (1/72) E3.
inline double cubic_P(double e2, double e3, double y) {
    return y * y * y - 0.25 * e2 * y + e3 / 72.0;
}

enum class CubicKind { one_real, three_distinct, double_root, triple_root };

struct CubicRootReport {
    CubicKind kind = CubicKind::one_real;
    std::vector<double> roots;      // ascending
    double double_root = 0.0;       // set when kind == double_root
    double simple_root = 0.0;       // set when kind == double_root
    double discriminant = 0.0;
};

/// Real-root structure of P for given invariants, flagging the double-root
/// degeneracy the peakon values produce.
inline CubicRootReport cubic_roots(double e2, double e3) {
    const double p = -0.25 * e2;
    const double q = e3 / 72.0;
    CubicRootReport rep;
    rep.discriminant = -4.0 * p * p * p - 27.0 * q * q;
    const double scale = std::max({std::fabs(4.0 * p * p * p), 27.0 * q * q, 1e-300});

    if (std::fabs(rep.discriminant) <= 1e-12 * scale) {
        if (std::fabs(p) < 1e-15 && std::fabs(q) < 1e-15) {
            rep.kind = CubicKind::triple_root;
            rep.roots = {0.0, 0.0, 0.0};
            return rep;
        }
        rep.kind = CubicKind::double_root;
        rep.double_root = std::cbrt(0.5 * q);
        rep.simple_root = -2.0 * rep.double_root;
        rep.roots = {rep.double_root, rep.double_root, rep.simple_root};
        std::sort(rep.roots.begin(), rep.roots.end());
        return rep;
    }
    if (rep.discriminant > 0.0) {
        rep.kind = CubicKind::three_distinct;
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
        const double theta = std::acos(arg);
        for (int k = 0; k < 3; ++k)
            rep.roots.push_back(r * std::cos(theta / 3.0 - 2.0 * M_PI * k / 3.0));
        std::sort(rep.roots.begin(), rep.roots.end());
        return rep;
    }
    rep.kind = CubicKind::one_real;
    // Cardano for the single real root.
    const double d = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    rep.roots = {std::cbrt(-q / 2.0 + d) + std::cbrt(-q / 2.0 - d)};
    return rep;
}

namespace detail {

/// Integral of the quadratic through (x0,f0),(x1,f1),(x2,f2) over [alpha, beta].
inline double quadratic_cell(double x0, double f0, double x1, double f1, double x2, double f2,
                             double alpha, double beta) {
    auto basis = [&](double xa, double xb, double denom) {
        const double s = xa + xb, pr = xa * xb;
        auto anti = [&](double x) { return x * x * x / 3.0 - 0.5 * s * x * x + pr * x; };
        return (anti(beta) - anti(alpha)) / denom;
    };
    return f0 * basis(x1, x2, (x0 - x1) * (x0 - x2)) +
           f1 * basis(x0, x2, (x1 - x0) * (x1 - x2)) +
           f2 * basis(x0, x1, (x2 - x0) * (x2 - x1));
}

/// Fields entering the piecewise g/h construction, with spectra kept for
/// off-grid evaluation at the refined critical points.
struct GhWorkspace {
    Field u, v, vx;
    Spectrum su, sv, svx;

    GhWorkspace(const Field& u_in, const NonsmoothInfo& ns)
        : u(u_in),
          v(ns.enabled ? helmholtz_inverse_split(u_in, 2.0, ns)
                       : helmholtz_inverse(u_in, 2.0)),
          vx(spectral_derivative(v)),
          su(spectrum_of(u)),
          sv(spectrum_of(v)),
          svx(spectrum_of(vx)) {}

    // s = +1 on increasing intervals of v, -1 on decreasing ones.
    double g_at_node(int j, double s) const { return 6.0 * v[j] - u[j] - s * 3.0 * vx[j]; }
    double h_at_node(int j, double s) const { return u[j] + 12.0 * v[j] - s * 6.0 * vx[j]; }
    double g_at(double x, double s) const {
        const Grid& gr = u.grid;
        return 6.0 * evaluate_spectrum_at(gr, sv, x) - evaluate_spectrum_at(gr, su, x) -
               s * 3.0 * evaluate_spectrum_at(gr, svx, x);
    }
    double h_at(double x, double s) const {
        const Grid& gr = u.grid;
        return evaluate_spectrum_at(gr, su, x) + 12.0 * evaluate_spectrum_at(gr, sv, x) -
               s * 6.0 * evaluate_spectrum_at(gr, svx, x);
    }
};

/// Integrates g^2 and h g^2 over one monotonic interval [a, b] (unwrapped
/// coordinates, b - a <= period). Whole cells use a 4-point cubic rule; the
/// partial cells at the two splits use local 3-point quadrature.
inline void interval_quadrature(const GhWorkspace& ws, double a, double b, double s,
                                double& int_g2, double& int_hg2) {
    const Grid& gr = ws.u.grid;
    const int n = gr.point_count;
    const double h = gr.dx;
    auto node_x = [&](long j) { return -gr.half_length + j * h; };
    auto f_at_node = [&](long j, bool with_h) {
        const int jw = detail::wrap_index(static_cast<int>(((j % n) + n) % n), n);
        const double g = ws.g_at_node(jw, s);
        return with_h ? ws.h_at_node(jw, s) * g * g : g * g;
    };
    auto f_at = [&](double x, bool with_h) {
        const double xw = gr.wrap(x);
        const double g = ws.g_at(xw, s);
        return with_h ? ws.h_at(xw, s) * g * g : g * g;
    };

    const long m_lo = static_cast<long>(std::floor((a + gr.half_length) / h)) + 1;
    const long m_hi = static_cast<long>(std::ceil((b + gr.half_length) / h)) - 1;

    for (int pass = 0; pass < 2; ++pass) {
        const bool with_h = pass == 1;
        double acc = 0.0;
        if (m_hi < m_lo) {
            // No interior node: Simpson on the whole short interval.
            const double fa = f_at(a, with_h), fm = f_at(0.5 * (a + b), with_h),
                         fb = f_at(b, with_h);
            acc = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        } else {
            acc += quadratic_cell(a, f_at(a, with_h), node_x(m_lo), f_at_node(m_lo, with_h),
                                  node_x(m_lo + 1), f_at_node(m_lo + 1, with_h), a, node_x(m_lo));
            acc += quadratic_cell(node_x(m_hi - 1), f_at_node(m_hi - 1, with_h), node_x(m_hi),
                                  f_at_node(m_hi, with_h), b, f_at(b, with_h), node_x(m_hi), b);
            for (long j = m_lo; j < m_hi; ++j) {
                acc += h / 24.0 *
                       (-f_at_node(j - 1, with_h) + 13.0 * f_at_node(j, with_h) +
                        13.0 * f_at_node(j + 1, with_h) - f_at_node(j + 2, with_h));
            }
        }
        (with_h ? int_hg2 : int_g2) += acc;
    }
}

}  // namespace detail

struct Lemma37Report {
    bool applicable = false;
    double delta = 0.0;
    double m1_margin = 0.0;   // sqrt(delta) - |M1 - 1/6|
    double an_margin = 0.0;   // sqrt(delta) - |An - 1/6|
    double sum_margin = 0.0;  // (4/3) sqrt(delta) - sum_{i>=2}(M_i^2 - m_{i-1}^2)
    bool pass = false;
};

struct StabilityCertificate {
    double e2 = 0.0;
    double e3 = 0.0;
    double m1 = 0.0;
    double xi1 = 0.0;
    double an = 0.0;
    double bn = 0.0;
    double int_g2 = 0.0;
    double int_hg2 = 0.0;
    double residual_e2 = 0.0;   // |int g^2 - (E2 - 12(sum M^2 - sum m^2))|
    double residual_e3 = 0.0;   // |int h g^2 - (E3 - 144(sum M^3 - sum m^3))|
    double margin_318 = 0.0;    // 18 M1 (E2 - 12 An^2) - (E3 - 144 Bn^3)
    double p_at_m1 = 0.0;
    double p_at_an = 0.0;
    double chain_lower = 0.0;   // An - M1
    double chain_upper = 0.0;   // sqrt(E2/12) - An
    Lemma37Report lemma37;
    ExtremaProfile profile;
};

struct CertOptions {
    double amp_floor = -1.0;          // forwarded to extrema_scan
    double lemma37_delta = -1.0;      // <0: tightest admissible delta from E2/E3
    NonsmoothInfo nonsmooth{};
};

namespace detail {

inline Lemma37Report lemma37_check(double e2, double e3, double m1, double an, double delta) {
    Lemma37Report r;
    if (delta < 0.0)
        delta = std::max(std::fabs(e2 - 1.0 / 3.0), std::fabs(e3 - 2.0 / 3.0));
    r.delta = delta;
    const double slack = 1e-12;
    r.applicable = delta > 0.0 && delta < 1.0 &&
                   std::fabs(e2 - 1.0 / 3.0) <= delta + slack &&
                   std::fabs(e3 - 2.0 / 3.0) <= delta + slack;
    const double rt = std::sqrt(std::max(delta, 0.0));
    r.m1_margin = rt - std::fabs(m1 - 1.0 / 6.0);
    r.an_margin = rt - std::fabs(an - 1.0 / 6.0);
    r.sum_margin = 4.0 / 3.0 * rt - (an * an - m1 * m1);
    r.pass = !r.applicable ||
             (r.m1_margin > -slack && r.an_margin > -slack && r.sum_margin > -slack);
    return r;
}

}  // namespace detail

/// Builds v, scans its extrema, integrates g^2 and h g^2 piecewise over the
/// monotonic intervals, and evaluates the integral identities, the crucial
/// inequality and the polynomial bounds.
inline StabilityCertificate gh_certificate(const Field& u, const CertOptions& opts = {}) {
    const Grid& gr = u.grid;
    if (!opts.nonsmooth.enabled) {
        const Field y = momentum_density(u);
        const double floor = -1e-8 * std::max(1.0, max_abs(y));
        if (min_value(y) < floor)
            throw std::invalid_argument("gh_certificate: momentum density is not nonnegative");
    }

    detail::GhWorkspace ws(u, opts.nonsmooth);
    StabilityCertificate cert;
    cert.profile = extrema_scan(ws.v, opts.amp_floor);

    const InvariantRecord inv = invariant_suite(u, 0.0, opts.nonsmooth);
    cert.e2 = inv.e2;
    cert.e3 = inv.e3;

    // Critical points in circle order starting at the cut minimum, unwrapped.
    std::vector<double> pts;
    pts.push_back(cert.profile.cut_position);
    const int n_max = cert.profile.n();
    for (int i = 0; i < n_max; ++i) {
        pts.push_back(cert.profile.max_positions[static_cast<size_t>(i)]);
        if (i + 1 < n_max) pts.push_back(cert.profile.min_positions[static_cast<size_t>(i)]);
    }
    const double period = gr.period();
    for (size_t i = 1; i < pts.size(); ++i)
        while (pts[i] <= pts[i - 1]) pts[i] += period;
    pts.push_back(pts.front() + period);
    if (pts.back() <= pts[pts.size() - 2])
        throw std::runtime_error("gh_certificate: critical points out of order");

    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double s = (i % 2 == 0) ? +1.0 : -1.0;  // increasing first (cut -> max)
        detail::interval_quadrature(ws, pts[i], pts[i + 1], s, cert.int_g2, cert.int_hg2);
    }

    double sum_m2 = 0.0, sum_m3 = 0.0;
    for (double M : cert.profile.max_values) {
        sum_m2 += M * M;
        sum_m3 += M * M * M;
    }
    for (double m : cert.profile.min_values) {
        sum_m2 -= m * m;
        sum_m3 -= m * m * m;
    }
    cert.residual_e2 = std::fabs(cert.int_g2 - (cert.e2 - 12.0 * sum_m2));
    cert.residual_e3 = std::fabs(cert.int_hg2 - (cert.e3 - 144.0 * sum_m3));

    size_t arg = 0;
    for (size_t i = 1; i < cert.profile.max_values.size(); ++i)
        if (cert.profile.max_values[i] > cert.profile.max_values[arg]) arg = i;
    cert.m1 = cert.profile.max_values[arg];
    cert.xi1 = cert.profile.max_positions[arg];

    const AnBn ab = an_bn(cert.profile);
    cert.an = ab.an;
    cert.bn = ab.bn;
    cert.margin_318 = 18.0 * cert.m1 * (cert.e2 - 12.0 * cert.an * cert.an) -
                      (cert.e3 - 144.0 * cert.bn * cert.bn * cert.bn);
    cert.p_at_m1 = cubic_P(cert.e2, cert.e3, cert.m1);
    cert.p_at_an = cubic_P(cert.e2, cert.e3, cert.an);
    cert.chain_lower = cert.an - cert.m1;
    cert.chain_upper = std::sqrt(std::max(0.0, cert.e2 / 12.0)) - cert.an;
    cert.lemma37 = detail::lemma37_check(cert.e2, cert.e3, cert.m1, cert.an, opts.lemma37_delta);
    return cert;
}

struct ProximityReport {
    double xi1 = 0.0;
    double m1 = 0.0;
    double distance = 0.0;           // via the Lemma 3.1 identity, c-scaled
    double distance_direct = 0.0;    // x_distance against the sampled translate
    double identity_mismatch = 0.0;  // |distance^2 - distance_direct^2|
    double an = 0.0;
    double bn = 0.0;
    double chain_lower = 0.0;  // An - M1
    double chain_upper = 0.0;  // sqrt(E2/12) - An
    Lemma37Report lemma37;     // on the c-normalized profile
};

/// Distance to the peakon orbit located at the maximum of v_u:
/// ||u - c phi(. - xi1)||_X^2 = E2(u) - E2(c phi) + 4c(c/6 - v_u(xi1)).
inline ProximityReport peakon_proximity(const Field& u, double c, double delta = -1.0,
                                        const CertOptions& opts = {}) {
    if (!(c > 0.0)) throw std::invalid_argument("peakon_proximity: need c > 0");
    const Field v = opts.nonsmooth.enabled ? helmholtz_inverse_split(u, 2.0, opts.nonsmooth)
                                           : helmholtz_inverse(u, 2.0);
    ExtremaProfile prof = extrema_scan(v, opts.amp_floor);
    ProximityReport rep;
    size_t arg = 0;
    for (size_t i = 1; i < prof.max_values.size(); ++i)
        if (prof.max_values[i] > prof.max_values[arg]) arg = i;
    rep.m1 = prof.max_values[arg];
    rep.xi1 = prof.max_positions[arg];

    const InvariantRecord inv = invariant_suite(u, 0.0, opts.nonsmooth);
    const double d2 =
        inv.e2 - c * c / 3.0 + 4.0 * c * (c / 6.0 - rep.m1);
    if (d2 < -1e-10)
        throw std::runtime_error("peakon_proximity: negative squared distance beyond tolerance");
    rep.distance = std::sqrt(std::max(0.0, d2));
    rep.distance_direct = x_distance(u, peakon_field(c, u.grid.wrap(rep.xi1), u.grid));
    rep.identity_mismatch = std::fabs(d2 - rep.distance_direct * rep.distance_direct);

    const AnBn ab = an_bn(prof);
    rep.an = ab.an;
    rep.bn = ab.bn;
    rep.chain_lower = ab.an - rep.m1;
    rep.chain_upper = std::sqrt(std::max(0.0, inv.e2 / 12.0)) - ab.an;
    rep.lemma37 = detail::lemma37_check(inv.e2 / (c * c), inv.e3 / (c * c * c), rep.m1 / c,
                                        ab.an / c, delta);
    return rep;
}

struct Theorem1Sample {
    double time = 0.0;
    double distance = 0.0;
    double m1 = 0.0;
    double pair_sum = 0.0;  // sum_{i>=2}(M_i^2 - m_{i-1}^2) = An^2 - M1^2
};

struct Theorem1Verdict {
    bool pass = false;
    double c = 0.0;
    double eps = 0.0;
    double distance_bound = 0.0;  // 3 c eps^{1/4}
    double m1_band = 0.0;         // c sqrt(2 eps)
    double sum_bound = 0.0;       // 2 c^2 sqrt(eps)
    double worst_distance = 0.0;
    double worst_distance_time = 0.0;
    double worst_m1_dev = 0.0;
    double worst_m1_time = 0.0;
    double worst_sum = 0.0;
    double worst_sum_time = 0.0;
    std::vector<Theorem1Sample> samples;
};

/// Checks the three quantitative stability bounds at every recorded snapshot.
/// The initial data must itself satisfy the smallness hypotheses; that check
/// is re-run here.
inline Theorem1Verdict theorem1_verify(const Trajectory& traj, double c, double eps,
                                       double x0 = 0.0) {
    if (traj.snapshots.empty()) throw std::invalid_argument("theorem1_verify: empty trajectory");
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("theorem1_verify: need 0 < eps < 1/2");
    const Field& u0 = traj.initial();
    const double d0 = x_distance(u0, peakon_field(c, x0, u0.grid));
    Field cube(u0.grid);
    for (int j = 0; j < u0.size(); ++j) cube[j] = u0[j] * u0[j] * u0[j];
    const double e3_0 = integrate(cube);
    const Field y0 = momentum_density(u0);
    if (d0 >= c * eps || std::fabs(e3_0 - 2.0 * c * c * c / 3.0) >= c * c * c * eps ||
        min_value(y0) < -1e-8 * std::max(1.0, max_abs(y0)))
        throw std::invalid_argument("theorem1_verify: initial data violates the hypotheses");

    Theorem1Verdict v;
    v.c = c;
    v.eps = eps;
    v.distance_bound = 3.0 * c * std::pow(eps, 0.25);
    v.m1_band = c * std::sqrt(2.0 * eps);
    v.sum_bound = 2.0 * c * c * std::sqrt(eps);
    v.worst_distance = -std::numeric_limits<double>::infinity();
    v.worst_m1_dev = -std::numeric_limits<double>::infinity();
    v.worst_sum = -std::numeric_limits<double>::infinity();

    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        const ProximityReport prox = peakon_proximity(traj.snapshots[i], c, 2.0 * eps);
        Theorem1Sample s;
        s.time = traj.times[i];
        s.distance = prox.distance;
        s.m1 = prox.m1;
        s.pair_sum = prox.an * prox.an - prox.m1 * prox.m1;
        v.samples.push_back(s);
        if (s.distance > v.worst_distance) {
            v.worst_distance = s.distance;
            v.worst_distance_time = s.time;
        }
        const double dev = std::fabs(s.m1 - c / 6.0);
        if (dev > v.worst_m1_dev) {
            v.worst_m1_dev = dev;
            v.worst_m1_time = s.time;
        }
        if (s.pair_sum > v.worst_sum) {
            v.worst_sum = s.pair_sum;
            v.worst_sum_time = s.time;
        }
    }
    v.pass = v.worst_distance < v.distance_bound && v.worst_m1_dev <= v.m1_band &&
             v.worst_sum < v.sum_bound;
    return v;
}

/// Camassa-Holm refinement: F3(u) - (4/3) Bn^3 <= M1 (F2(u) - 2 An^2) with the
/// extrema taken on u itself. Returns RHS - LHS.
inline double ch_refined_inequality(const Field& u, const CertOptions& opts = {}) {
    if (!opts.nonsmooth.enabled) {
        const Field y = momentum_density(u);
        if (min_value(y) < -1e-8 * std::max(1.0, max_abs(y)))
            throw std::invalid_argument("ch_refined_inequality: momentum density not nonnegative");
    }
    ExtremaProfile prof = extrema_scan(u, opts.amp_floor);
    const AnBn ab = an_bn(prof);
    double m1 = prof.max_values[0];
    for (double M : prof.max_values) m1 = std::max(m1, M);
    const InvariantRecord inv = invariant_suite(u, 0.0, opts.nonsmooth);
    const double lhs = inv.f3 - 4.0 / 3.0 * ab.bn * ab.bn * ab.bn;
    const double rhs = m1 * (inv.f2 - 2.0 * ab.an * ab.an);
    return rhs - lhs;
}

/// Smooth compactly supported bump, the classic mollifier profile.
struct TestFunction {
    double center = 0.0;
    double width = 1.0;

    double operator()(double x) const {
        const double s = (x - center) / width;
        if (std::fabs(s) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - s * s));
    }
    double derivative(double x) const {
        const double s = (x - center) / width;
        if (std::fabs(s) >= 1.0) return 0.0;
        const double den = 1.0 - s * s;
        return (*this)(x) * (-2.0 * s / (den * den)) / width;
    }
};

inline std::vector<TestFunction> default_test_functions() {
    std::vector<TestFunction> fns;
    for (int i = 0; i < 9; ++i) {
        TestFunction f;
        f.center = -6.0 + 1.5 * i;
        f.width = (i % 2 == 0) ? 1.0 : 1.4;
        fns.push_back(f);
    }
    fns.push_back({0.0, 3.0});
    return fns;
}

struct WeakResidualEntry {
    double time = 0.0;
    double center = 0.0;
    double width = 0.0;
    double residual = 0.0;
    bool away_from_singularity = false;
};

struct WeakResidualReport {
    std::vector<WeakResidualEntry> entries;
    double max_residual = 0.0;
    double max_residual_away = 0.0;
};

namespace detail {

/// | integral( u_t psi + dx(u^2/2 + (1-dxx)^{-1}(3/2 u^2)) psi ) | assembled as
/// integral(u_t psi) - integral(flux psi'), for each test function.
inline WeakResidualReport weak_residual(const Field& u, const Field& ut, double singularity,
                                        double time, const std::vector<TestFunction>& fns,
                                        WeakResidualReport rep = {}) {
    const Grid& g = u.grid;
    Field usq(g);
    for (int j = 0; j < g.point_count; ++j) usq[j] = u[j] * u[j];
    const Field conv = helmholtz_inverse(1.5 * usq, 1.0);
    for (const TestFunction& fn : fns) {
        double acc = 0.0;
        for (int j = 0; j < g.point_count; ++j) {
            const double x = g.node(j);
            const double flux = 0.5 * usq[j] + conv[j];
            acc += ut[j] * fn(x) - flux * fn.derivative(x);
        }
        WeakResidualEntry e;
        e.time = time;
        e.center = fn.center;
        e.width = fn.width;
        e.residual = std::fabs(g.dx * acc);
        e.away_from_singularity = std::fabs(fn.center - singularity) > fn.width + 0.5;
        rep.entries.push_back(e);
        rep.max_residual = std::max(rep.max_residual, e.residual);
        if (e.away_from_singularity)
            rep.max_residual_away = std::max(rep.max_residual_away, e.residual);
    }
    return rep;
}

}  // namespace detail

/// Conservation-form weak residual of the shock-peakon family
/// u = -sgn(x) e^{-|x|} / (t + k); the time derivative is analytic in t.
inline WeakResidualReport shock_weak_residual(double k, const Grid& g,
                                              const std::vector<double>& times,
                                              const std::vector<TestFunction>& fns =
                                                  default_test_functions()) {
    if (!(k > 0.0)) throw std::invalid_argument("shock_weak_residual: k must be positive");
    WeakResidualReport rep;
    for (double t : times) {
        const Field u = shock_peakon_field(k, t, g);
        Field ut(g);
        const double amp = 1.0 / ((t + k) * (t + k));
        for (int j = 0; j < g.point_count; ++j) {
            const double x = g.node(j);
            const double s = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
            ut[j] = amp * s * std::exp(-std::fabs(x));
        }
        rep = detail::weak_residual(u, ut, 0.0, t, fns, std::move(rep));
    }
    return rep;
}

/// Same residual test applied to a traveling peakon c phi(x - c t).
inline WeakResidualReport peakon_weak_residual(double c, const Grid& g,
                                               const std::vector<double>& times,
                                               const std::vector<TestFunction>& fns =
                                                   default_test_functions()) {
    WeakResidualReport rep;
    for (double t : times) {
        const Field u = peakon_field(c, g.wrap(c * t), g);
        Field ut(g);
        for (int j = 0; j < g.point_count; ++j) {
            const double d = g.node(j) - c * t;
            const double s = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
            ut[j] = c * c * s * std::exp(-std::fabs(d));
        }
        rep = detail::weak_residual(u, ut, c * t, t, fns, std::move(rep));
    }
    return rep;
}

}  // namespace dplab
