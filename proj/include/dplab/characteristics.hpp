#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dplab/evolution.hpp"
#include "dplab/grid.hpp"
#include "dplab/spectral.hpp"

namespace dplab {

/// Flow map history along q_t = u(t, q). q_x is integrated in log form, which
/// keeps it positive structurally; y(t, q) q_x^3 should reproduce y0.
struct CharacteristicHistory {
    std::vector<double> labels;
    std::vector<double> times;
    std::vector<std::vector<double>> q;       // [time][label]
    std::vector<std::vector<double>> log_qx;  // [time][label]
    std::vector<double> y0_at_labels;
    std::vector<double> invariant_residual;   // per time: max_l |y(t,q) qx^3 - y0| / max|y0|

    double qx(size_t ti, size_t li) const { return std::exp(log_qx[ti][li]); }
};

/// Integrates the characteristics through a recorded trajectory with RK4 on
/// the snapshot clock. Stage values of u and u_x at half steps come from
/// cubic interpolation in time across four neighboring snapshots.
inline CharacteristicHistory characteristics_evolve(const Trajectory& traj,
                                                    const std::vector<double>& labels,
                                                    double requested_dt = 0.0,
                                                    Interp interp = Interp::trigonometric) {
    if (traj.snapshots.size() < 4)
        throw std::invalid_argument("characteristics_evolve: need at least 4 snapshots");
    const Grid& g = traj.initial().grid;
    for (double x : labels)
        if (x < -g.half_length || x >= g.half_length)
            throw std::invalid_argument("characteristics_evolve: label outside the domain");
    const size_t steps = traj.snapshots.size() - 1;
    if (requested_dt > 0.0) {
        for (size_t i = 0; i < steps; ++i)
            if (traj.times[i + 1] - traj.times[i] > requested_dt * (1.0 + 1e-12))
                throw std::invalid_argument(
                    "characteristics_evolve: trajectory snapshots coarser than requested dt");
    }

    const size_t m = traj.snapshots.size();
    std::vector<Field> ux(m, Field(g));
    for (size_t i = 0; i < m; ++i) ux[i] = spectral_derivative(traj.snapshots[i]);

    // u(t_i + dt/2, x): cubic-in-time blend of snapshots i-1..i+2, clamped at the ends.
    auto blend_mid = [&](const std::vector<Field>& fields, size_t i) {
        size_t i0 = i == 0 ? 0 : i - 1;
        if (i0 + 3 >= m) i0 = m - 4;
        const double t = traj.times[i] + 0.5 * (traj.times[i + 1] - traj.times[i]);
        double w[4];
        for (int a = 0; a < 4; ++a) {
            w[a] = 1.0;
            for (int b = 0; b < 4; ++b) {
                if (a == b) continue;
                w[a] *= (t - traj.times[i0 + static_cast<size_t>(b)]) /
                        (traj.times[i0 + static_cast<size_t>(a)] -
                         traj.times[i0 + static_cast<size_t>(b)]);
            }
        }
        Field out(g);
        for (int j = 0; j < g.point_count; ++j)
            out[j] = w[0] * fields[i0][j] + w[1] * fields[i0 + 1][j] + w[2] * fields[i0 + 2][j] +
                     w[3] * fields[i0 + 3][j];
        return out;
    };

    CharacteristicHistory hist;
    hist.labels = labels;
    hist.times = traj.times;
    const size_t nl = labels.size();
    hist.q.assign(m, std::vector<double>(nl, 0.0));
    hist.log_qx.assign(m, std::vector<double>(nl, 0.0));
    hist.q[0] = labels;

    const Field y0 = momentum_density(traj.initial());
    const Spectrum sy0 = spectrum_of(y0);
    hist.y0_at_labels.resize(nl);
    double y0max = max_abs(y0);
    for (size_t l = 0; l < nl; ++l)
        hist.y0_at_labels[l] = evaluate_spectrum_at(g, sy0, labels[l]);

    hist.invariant_residual.assign(m, 0.0);
    auto residual_at = [&](size_t ti) {
        const Field yt = momentum_density(traj.snapshots[ti]);
        const Spectrum syt = spectrum_of(yt);
        double worst = 0.0;
        for (size_t l = 0; l < nl; ++l) {
            const double qx = std::exp(hist.log_qx[ti][l]);
            const double yq = evaluate_spectrum_at(g, syt, g.wrap(hist.q[ti][l]));
            worst = std::max(worst, std::fabs(yq * qx * qx * qx - hist.y0_at_labels[l]));
        }
        return worst / y0max;
    };
    hist.invariant_residual[0] = residual_at(0);

    for (size_t i = 0; i < steps; ++i) {
        const double dt = traj.times[i + 1] - traj.times[i];
        const Field u_mid = blend_mid(traj.snapshots, i);
        const Field ux_mid = blend_mid(ux, i);

        auto eval = [&](const Field& f, double x) { return evaluate_at(f, g.wrap(x), interp); };
        for (size_t l = 0; l < nl; ++l) {
            const double q0 = hist.q[i][l];
            const double w0 = hist.log_qx[i][l];
            // RK4 on (q, log qx) with stage fields at t, t+dt/2, t+dt.
            const double kq1 = eval(traj.snapshots[i], q0);
            const double kw1 = eval(ux[i], q0);
            const double kq2 = eval(u_mid, q0 + 0.5 * dt * kq1);
            const double kw2 = eval(ux_mid, q0 + 0.5 * dt * kq1);
            const double kq3 = eval(u_mid, q0 + 0.5 * dt * kq2);
            const double kw3 = eval(ux_mid, q0 + 0.5 * dt * kq2);
            const double kq4 = eval(traj.snapshots[i + 1], q0 + dt * kq3);
            const double kw4 = eval(ux[i + 1], q0 + dt * kq3);
            hist.q[i + 1][l] = q0 + dt / 6.0 * (kq1 + 2.0 * kq2 + 2.0 * kq3 + kq4);
            hist.log_qx[i + 1][l] = w0 + dt / 6.0 * (kw1 + 2.0 * kw2 + 2.0 * kw3 + kw4);
        }
        hist.invariant_residual[i + 1] = residual_at(i + 1);
    }
    return hist;
}

}  // namespace dplab
