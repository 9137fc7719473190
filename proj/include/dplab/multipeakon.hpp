#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dplab/profiles.hpp"

namespace dplab {

enum class PeakonTermination { completed, collision_detected, error };

struct PeakonHistory {
    std::vector<double> times;
    std::vector<PeakonState> states;
    PeakonTermination termination = PeakonTermination::completed;
    double collision_time = -1.0;

    const PeakonState& final_state() const { return states.back(); }
};

namespace detail {

/// Particle system obtained by substituting the multipeakon ansatz into the
/// conservation-law form, with u_x at a peak taken as the average of the
/// one-sided limits:
///   dq_i/dt = u(q_i),   dp_i/dt = -2 p_i <u_x(q_i)>.
inline void multipeakon_rhs(const std::vector<double>& p, const std::vector<double>& q,
                            std::vector<double>& dp, std::vector<double>& dq) {
    const size_t n = p.size();
    for (size_t i = 0; i < n; ++i) {
        double u = 0.0, ux = 0.0;
        for (size_t j = 0; j < n; ++j) {
            const double d = q[i] - q[j];
            const double e = std::exp(-std::fabs(d));
            u += p[j] * e;
            if (j != i) ux -= p[j] * (d > 0.0 ? 1.0 : -1.0) * e;
        }
        dq[i] = u;
        dp[i] = -2.0 * p[i] * ux;
    }
}

}  // namespace detail

/// RK4 on the multipeakon particle system. The step shrinks as particles
/// approach; integration halts with collision_detected once a gap falls
/// under 1e-6 (amplitudes blow up there and the ansatz stops being valid).
inline PeakonHistory multipeakon_evolve(const PeakonState& s0, double t_end, double dt0 = 1e-3,
                                        int record_every = 1) {
    s0.validate();
    if (!(t_end > 0.0)) throw std::invalid_argument("multipeakon_evolve: t_end must be positive");
    if (record_every < 1) throw std::invalid_argument("multipeakon_evolve: record_every >= 1");
    const size_t n = s0.particles.size();
    if (n == 0) throw std::invalid_argument("multipeakon_evolve: empty state");

    std::vector<double> p(n), q(n);
    for (size_t i = 0; i < n; ++i) {
        p[i] = s0.particles[i].amplitude;
        q[i] = s0.particles[i].position;
    }
    constexpr double collision_gap = 1e-6;
    auto min_gap = [&]() {
        double gap = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i + 1 < n; ++i) gap = std::min(gap, q[i + 1] - q[i]);
        return gap;
    };
    if (n > 1 && min_gap() <= collision_gap)
        throw std::invalid_argument("multipeakon_evolve: positions already in collision");

    PeakonHistory hist;
    auto record = [&](double t) {
        PeakonState s;
        for (size_t i = 0; i < n; ++i) s.particles.push_back({p[i], q[i]});
        hist.times.push_back(t);
        hist.states.push_back(std::move(s));
    };
    record(0.0);

    std::vector<double> dp(n), dq(n), p1(n), q1(n), kp1(n), kq1(n), kp2(n), kq2(n), kp3(n),
        kq3(n), kp4(n), kq4(n);
    double t = 0.0;
    long step = 0;
    constexpr long max_steps = 20'000'000;
    while (t < t_end) {
        double dt = dt0;
        if (n > 1) {
            const double gap = min_gap();
            double pmax = 0.0;
            for (double v : p) pmax = std::max(pmax, std::fabs(v));
            dt = std::min(dt, 0.05 * gap / std::max(1.0, pmax));
            dt = std::min(dt, 0.1 / std::max(1.0, pmax * pmax));
        }
        dt = std::min(dt, t_end - t);

        detail::multipeakon_rhs(p, q, kp1, kq1);
        for (size_t i = 0; i < n; ++i) {
            p1[i] = p[i] + 0.5 * dt * kp1[i];
            q1[i] = q[i] + 0.5 * dt * kq1[i];
        }
        detail::multipeakon_rhs(p1, q1, kp2, kq2);
        for (size_t i = 0; i < n; ++i) {
            p1[i] = p[i] + 0.5 * dt * kp2[i];
            q1[i] = q[i] + 0.5 * dt * kq2[i];
        }
        detail::multipeakon_rhs(p1, q1, kp3, kq3);
        for (size_t i = 0; i < n; ++i) {
            p1[i] = p[i] + dt * kp3[i];
            q1[i] = q[i] + dt * kq3[i];
        }
        detail::multipeakon_rhs(p1, q1, kp4, kq4);
        for (size_t i = 0; i < n; ++i) {
            p[i] += dt / 6.0 * (kp1[i] + 2.0 * kp2[i] + 2.0 * kp3[i] + kp4[i]);
            q[i] += dt / 6.0 * (kq1[i] + 2.0 * kq2[i] + 2.0 * kq3[i] + kq4[i]);
        }
        t += dt;
        ++step;

        bool finite = true;
        for (size_t i = 0; i < n; ++i)
            finite = finite && std::isfinite(p[i]) && std::isfinite(q[i]);
        if (!finite) {
            hist.termination = PeakonTermination::error;
            return hist;
        }
        if (step % record_every == 0 || t >= t_end) record(t);
        if (n > 1 && min_gap() <= collision_gap) {
            if (hist.times.back() < t) record(t);
            hist.termination = PeakonTermination::collision_detected;
            hist.collision_time = t;
            return hist;
        }
        if (step >= max_steps) {
            hist.termination = PeakonTermination::error;
            return hist;
        }
    }
    hist.termination = PeakonTermination::completed;
    return hist;
}

}  // namespace dplab
