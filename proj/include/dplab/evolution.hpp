#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dplab/functionals.hpp"
#include "dplab/grid.hpp"
#include "dplab/quadrature.hpp"
#include "dplab/spectral.hpp"

namespace dplab {

struct SolverConfig {
    double dt = 0.0;  // 0 means auto: cfl * dx / max(1, |u|_inf), re-evaluated each step
    double t_end = 0.0;
    double cfl = 0.3;
    bool dealias = true;
    double blowup_slope_threshold = -100.0;
    int record_every = 1;

    void validate() const {
        if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be positive");
        if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("SolverConfig: cfl in (0, 1]");
        if (dt < 0.0) throw std::invalid_argument("SolverConfig: dt must be nonnegative");
        if (record_every < 1) throw std::invalid_argument("SolverConfig: record_every >= 1");
    }
};

enum class Termination { completed, blowup_detected, error };

inline const char* to_string(Termination t) {
    switch (t) {
        case Termination::completed: return "completed";
        case Termination::blowup_detected: return "blowup_detected";
        default: return "error";
    }
}

struct Trajectory {
    std::vector<double> times;
    std::vector<Field> snapshots;
    std::vector<InvariantRecord> records;
    Termination termination = Termination::completed;

    const Field& initial() const { return snapshots.front(); }
    const Field& final_state() const { return snapshots.back(); }
};

/// Right-hand side of u_t = -u u_x - dx (1-dxx)^{-1}(3/2 u^2).
/// With dealiasing on, inputs and both quadratic products are confined to the
/// 2/3 band, so the retained modes carry no aliasing.
inline Field dp_rhs(const Field& u, bool dealias_products = true) {
    const Grid& g = u.grid;
    const int nyq = g.point_count / 2;
    Spectrum su = spectrum_of(u);
    if (dealias_products) dealias_spectrum(g, su);

    Spectrum sux = su;
    for (int b = 0; b <= nyq; ++b)
        sux[static_cast<size_t>(b)] *= std::complex<double>(0.0, wavenumber(g, b));
    sux[static_cast<size_t>(nyq)] = 0.0;

    const Field uf = field_from_spectrum(g, su);
    const Field ux = field_from_spectrum(g, sux);

    Field adv(g), usq(g);
    for (int j = 0; j < g.point_count; ++j) {
        adv[j] = uf[j] * ux[j];
        usq[j] = uf[j] * uf[j];
    }

    Spectrum sadv = spectrum_of(adv);
    if (dealias_products) dealias_spectrum(g, sadv);
    const Field advf = field_from_spectrum(g, sadv);

    Spectrum sconv = spectrum_of(usq);
    if (dealias_products) dealias_spectrum(g, sconv);
    for (int b = 0; b <= nyq; ++b) {
        const double k = wavenumber(g, b);
        sconv[static_cast<size_t>(b)] *= std::complex<double>(0.0, 1.5 * k / (1.0 + k * k));
    }
    sconv[static_cast<size_t>(nyq)] = 0.0;
    const Field conv = field_from_spectrum(g, sconv);

    Field rhs(g);
    for (int j = 0; j < g.point_count; ++j) rhs[j] = -advf[j] - conv[j];
    return rhs;
}

/// Classic RK4 on dp_rhs. Auto time step follows the current amplitude;
/// stops early on blow-up (min slope under the threshold at a record point)
/// or on non-finite values (error, keeping the last good state).
inline Trajectory evolve(const Field& u0, const SolverConfig& cfg) {
    cfg.validate();
    if (!u0.all_finite()) throw std::invalid_argument("evolve: initial data not finite");

    Trajectory traj;
    Field u = cfg.dealias ? dealias(u0) : u0;
    double t = 0.0;

    auto record = [&](const Field& f, double time) {
        traj.times.push_back(time);
        traj.snapshots.push_back(f);
        traj.records.push_back(invariant_suite(f, time));
    };
    record(u, t);

    Field prev = u;
    double prev_t = t;
    long step = 0;
    while (t < cfg.t_end) {
        double dt = cfg.dt > 0.0 ? cfg.dt
                                 : cfg.cfl * u.grid.dx / std::max(1.0, max_abs(u));
        dt = std::min(dt, cfg.t_end - t);

        prev = u;
        prev_t = t;

        const Field k1 = dp_rhs(u, cfg.dealias);
        const Field k2 = dp_rhs(u + (0.5 * dt) * k1, cfg.dealias);
        const Field k3 = dp_rhs(u + (0.5 * dt) * k2, cfg.dealias);
        const Field k4 = dp_rhs(u + dt * k3, cfg.dealias);
        for (int j = 0; j < u.size(); ++j)
            u[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        t += dt;
        ++step;

        if (!u.all_finite()) {
            if (traj.times.back() < prev_t) record(prev, prev_t);
            traj.termination = Termination::error;
            return traj;
        }
        const bool final_step = t >= cfg.t_end;
        if (step % cfg.record_every == 0 || final_step) {
            record(u, t);
            if (traj.records.back().min_slope < cfg.blowup_slope_threshold) {
                traj.termination = Termination::blowup_detected;
                return traj;
            }
        }
    }
    traj.termination = Termination::completed;
    return traj;
}

struct PositivityCheck {
    std::string name;
    double worst = 0.0;     // most negative value found
    double location = 0.0;  // where it was found
    bool pass = false;
};

struct PositivityReport {
    double tolerance = 0.0;  // pass means worst >= -tolerance
    bool all_pass = false;
    std::vector<PositivityCheck> checks;

    const PositivityCheck& check(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return c;
        throw std::out_of_range("PositivityReport: no check named " + name);
    }
};

namespace detail {

inline PositivityCheck worst_of(const std::string& name, const Field& f, double tol) {
    PositivityCheck c;
    c.name = name;
    c.worst = f[0];
    c.location = f.grid.node(0);
    for (int j = 1; j < f.size(); ++j) {
        if (f[j] < c.worst) {
            c.worst = f[j];
            c.location = f.grid.node(j);
        }
    }
    c.pass = c.worst >= -tol;
    return c;
}

}  // namespace detail

/// Static sign certificates behind the global-existence lemmas: pointwise
/// u >= 0, y >= 0, (k1 +- dx) u >= 0 and (k2 +- dx)(4 - dxx)^{-1}(k1 +- dx) u >= 0,
/// all up to -1e-8 * |u|_inf. The certificate may fail; the report says where.
inline PositivityReport positivity_certificate(const Field& u, double k1 = 1.0, double k2 = 2.0,
                                               const NonsmoothInfo& ns = {}) {
    if (k1 < 1.0) throw std::invalid_argument("positivity_certificate: need k1 >= 1");
    if (k2 < 2.0) throw std::invalid_argument("positivity_certificate: need k2 >= 2");
    const Grid& g = u.grid;
    const int n = g.point_count;
    PositivityReport rep;
    rep.tolerance = 1e-8 * max_abs(u);

    rep.checks.push_back(detail::worst_of("u", u, rep.tolerance));

    std::vector<double> ux(static_cast<size_t>(n));
    std::vector<int> kinks;
    PiecewiseDerivative du;
    if (ns.enabled) {
        kinks = detail::kink_nodes(g, ns.kink_positions);
        du = derivative_with_kinks(u, kinks);
        ux = du.samples;
    } else {
        ux = spectral_derivative(u).values;
    }

    if (!ns.enabled) {
        rep.checks.push_back(detail::worst_of("y", momentum_density(u), rep.tolerance));
    } else {
        // Distributional momentum: smooth density away from the kinks plus a
        // point mass -[u_x] at each kink. Nodes within two cells of a kink are
        // covered by the mass check.
        PositivityCheck smooth;
        smooth.name = "y";
        smooth.worst = std::numeric_limits<double>::infinity();
        smooth.location = 0.0;
        const double h2 = g.dx * g.dx;
        auto near_kink = [&](int j) {
            for (int m : kinks) {
                const int d = std::abs(detail::wrap_index(j - m, n));
                if (std::min(d, n - d) <= 2) return true;
            }
            return false;
        };
        auto at = [&](int i) { return u[detail::wrap_index(i, n)]; };
        for (int j = 0; j < n; ++j) {
            if (near_kink(j)) continue;
            const double uxx = (-at(j - 2) + 16.0 * at(j - 1) - 30.0 * at(j) +
                                16.0 * at(j + 1) - at(j + 2)) /
                               (12.0 * h2);
            const double yj = u[j] - uxx;
            if (yj < smooth.worst) {
                smooth.worst = yj;
                smooth.location = g.node(j);
            }
        }
        smooth.pass = smooth.worst >= -rep.tolerance;
        rep.checks.push_back(smooth);

        PositivityCheck masses;
        masses.name = "y kink masses";
        masses.worst = std::numeric_limits<double>::infinity();
        for (size_t p = 0; p < kinks.size(); ++p) {
            const double mass = -(du.right_limit[p] - du.left_limit[p]);
            if (mass < masses.worst) {
                masses.worst = mass;
                masses.location = g.node(kinks[p]);
            }
        }
        masses.pass = masses.worst >= -rep.tolerance;
        rep.checks.push_back(masses);
    }

    for (int sgn : {+1, -1}) {
        Field w(g);
        for (int j = 0; j < n; ++j) w[j] = k1 * u[j] + sgn * ux[static_cast<size_t>(j)];
        PositivityCheck c = detail::worst_of(
            sgn > 0 ? "(k1+dx)u" : "(k1-dx)u", w, rep.tolerance);
        if (ns.enabled) {
            for (size_t p = 0; p < kinks.size(); ++p) {
                const double base = k1 * u[du.kinks[p]];
                for (double side : {du.left_limit[p], du.right_limit[p]}) {
                    const double val = base + sgn * side;
                    if (val < c.worst) {
                        c.worst = val;
                        c.location = g.node(du.kinks[p]);
                    }
                }
            }
            c.pass = c.worst >= -rep.tolerance;
        }
        rep.checks.push_back(c);

        const Field z = helmholtz_inverse(w, 2.0);
        const Field zx = spectral_derivative(z);
        for (int sgn2 : {+1, -1}) {
            Field q(g);
            for (int j = 0; j < n; ++j) q[j] = k2 * z[j] + sgn2 * zx[j];
            std::string name = std::string("(k2") + (sgn2 > 0 ? "+" : "-") + "dx)(4-dxx)^-1(k1" +
                               (sgn > 0 ? "+" : "-") + "dx)u";
            rep.checks.push_back(detail::worst_of(name, q, rep.tolerance));
        }
    }

    rep.all_pass = true;
    for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

struct AprioriEntry {
    double time = 0.0;
    double linf_margin = 0.0;   // 3 |u0|_2^2 t + |u0|_inf - |u(t)|_inf
    double h1_margin = 0.0;     // growth bound minus F2(t)
    double slope_margin = 0.0;  // min_x (u_x + |u|)
};

struct AprioriReport {
    bool all_pass = false;
    double tolerance = 0.0;
    std::vector<AprioriEntry> entries;
};

/// Growth and slope monitors along a trajectory: the L-infinity bound
/// |u(t)|_inf <= 3 |u0|_2^2 t + |u0|_inf, the H1 growth bound (reading |.|_1
/// as the H1 norm), and the slope bound u_x >= -|u|.
inline AprioriReport apriori_monitors(const Trajectory& traj) {
    if (traj.snapshots.empty()) throw std::invalid_argument("apriori_monitors: empty trajectory");
    const Field& u0 = traj.initial();
    Field u0sq(u0.grid);
    for (int j = 0; j < u0.size(); ++j) u0sq[j] = u0[j] * u0[j];
    const double l2sq0 = integrate(u0sq);
    const double linf0 = max_abs(u0);
    const double h1sq0 = traj.records.front().f2;

    AprioriReport rep;
    rep.tolerance = 1e-7 * std::max(1.0, linf0);
    rep.all_pass = true;
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        const double t = traj.times[i];
        const Field& ut = traj.snapshots[i];
        AprioriEntry e;
        e.time = t;
        e.linf_margin = 3.0 * l2sq0 * t + linf0 - traj.records[i].max_abs;
        e.h1_margin = 6.0 * l2sq0 * l2sq0 * t * t + 4.0 * l2sq0 * linf0 * t + h1sq0 -
                      traj.records[i].f2;
        const Field ux = spectral_derivative(ut);
        double worst = std::numeric_limits<double>::infinity();
        for (int j = 0; j < ut.size(); ++j)
            worst = std::min(worst, ux[j] + std::fabs(ut[j]));
        e.slope_margin = worst;
        rep.all_pass = rep.all_pass && e.linf_margin >= -rep.tolerance &&
                       e.h1_margin >= -rep.tolerance && e.slope_margin >= -rep.tolerance;
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace dplab
