#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dplab/grid.hpp"
#include "dplab/quadrature.hpp"

namespace dplab {

/// Ordered critical structure of a nonnegative line-decaying profile:
/// n maxima (xi_i, M_i) interleaved with n-1 interior minima (eta_i, m_i).
/// The periodic scan is cut at the global minimum (the stand-in for the decay
/// at infinity); that minimum is dropped and recorded separately.
struct ExtremaProfile {
    std::vector<double> max_positions;
    std::vector<double> max_values;
    std::vector<double> min_positions;
    std::vector<double> min_values;
    double cut_position = 0.0;
    double cut_value = 0.0;

    int n() const { return static_cast<int>(max_values.size()); }
};

namespace detail {

struct RawExtremum {
    double position = 0.0;
    double value = 0.0;
    bool is_max = false;
};

/// Quadratic refinement through (m-1, m, m+1); offset clipped to one cell.
inline RawExtremum refine_extremum(const Field& v, int m, bool is_max) {
    const int n = v.grid.point_count;
    const double vm = v[wrap_index(m - 1, n)];
    const double v0 = v[wrap_index(m, n)];
    const double vp = v[wrap_index(m + 1, n)];
    const double a = 0.5 * (vp - 2.0 * v0 + vm);
    const double b = 0.5 * (vp - vm);
    RawExtremum e;
    e.is_max = is_max;
    double delta = 0.0;
    if (a != 0.0) delta = std::clamp(-b / (2.0 * a), -1.0, 1.0);
    e.position = v.grid.wrap(v.grid.node(m) + delta * v.grid.dx);
    e.value = v0 + b * delta + a * delta * delta;
    return e;
}

}  // namespace detail

/// Scans v for alternating maxima/minima, refines each by quadratic
/// interpolation, cuts the circle at the global minimum, and merges any
/// max/min pair closer in amplitude than amp_floor (default 1e-10 * max v).
inline ExtremaProfile extrema_scan(const Field& v, double amp_floor = -1.0) {
    const int n = v.grid.point_count;
    const double vmax = max_value(v);
    const double vmin = min_value(v);
    if (vmin < -1e-12 * std::max(1.0, std::fabs(vmax)))
        throw std::invalid_argument("extrema_scan: field is not nonnegative");
    if (amp_floor < 0.0) amp_floor = 1e-10 * std::max(vmax, 0.0);
    if (vmax - vmin <= amp_floor)
        throw std::invalid_argument("extrema_scan: no extrema above the amplitude floor");

    // Walk the circle tracking the sign of the forward difference; a +/- flip
    // marks a maximum, -/+ a minimum. Flat runs resolve to their midpoint.
    std::vector<detail::RawExtremum> raw;
    int start = -1;
    int prev_sign = 0;
    for (int j = 0; j < n; ++j) {
        const double d = v[detail::wrap_index(j + 1, n)] - v[j];
        if (d != 0.0) {
            start = j;
            prev_sign = d > 0.0 ? 1 : -1;
            break;
        }
    }
    if (start < 0) throw std::invalid_argument("extrema_scan: constant field");
    int flat_begin = -1;
    for (int step = 1; step <= n; ++step) {
        const int j = detail::wrap_index(start + step, n);
        const double d = v[detail::wrap_index(j + 1, n)] - v[j];
        if (d == 0.0) {
            if (flat_begin < 0) flat_begin = step;
            continue;
        }
        const int sign = d > 0.0 ? 1 : -1;
        if (sign != prev_sign) {
            const int at = flat_begin >= 0 ? (flat_begin + step) / 2 : step;
            raw.push_back(detail::refine_extremum(v, detail::wrap_index(start + at, n),
                                                  prev_sign > 0));
        }
        prev_sign = sign;
        flat_begin = -1;
    }
    if (raw.empty()) throw std::invalid_argument("extrema_scan: no extrema found");

    // On a circle maxima and minima alternate and come in equal numbers.
    // Cut at the smallest minimum and drop it.
    int cut = -1;
    for (size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].is_max) continue;
        if (cut < 0 || raw[i].value < raw[static_cast<size_t>(cut)].value)
            cut = static_cast<int>(i);
    }
    if (cut < 0) throw std::invalid_argument("extrema_scan: no minimum on the circle");

    std::vector<detail::RawExtremum> seq;  // alternating, starts and ends with a max
    const size_t count = raw.size();
    for (size_t s = 1; s < count; ++s)
        seq.push_back(raw[(static_cast<size_t>(cut) + s) % count]);

    // Merge sub-floor wiggles: repeatedly drop the adjacent max/min pair with
    // the smallest amplitude gap until all gaps clear the floor.
    while (seq.size() >= 3) {
        int best = -1;
        double best_gap = amp_floor;
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            const double gap = std::fabs(seq[i].value - seq[i + 1].value);
            if (gap < best_gap) {
                best_gap = gap;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) break;
        seq.erase(seq.begin() + best, seq.begin() + best + 2);
    }

    ExtremaProfile prof;
    prof.cut_position = raw[static_cast<size_t>(cut)].position;
    prof.cut_value = raw[static_cast<size_t>(cut)].value;
    for (size_t i = 0; i < seq.size(); ++i) {
        const bool expect_max = (i % 2 == 0);
        if (seq[i].is_max != expect_max)
            throw std::runtime_error("extrema_scan: alternation lost after merging");
        if (expect_max) {
            prof.max_positions.push_back(seq[i].position);
            prof.max_values.push_back(seq[i].value);
        } else {
            prof.min_positions.push_back(seq[i].position);
            prof.min_values.push_back(seq[i].value);
        }
    }
    if (prof.n() == 0) throw std::invalid_argument("extrema_scan: no maxima survive the floor");
    return prof;
}

struct AnBn {
    double an = 0.0;
    double bn = 0.0;
};

/// A_n and B_n aggregates after sorting maxima and minima in decreasing
/// order and pairing M_i with m_{i-1}.
inline AnBn an_bn(const ExtremaProfile& prof) {
    std::vector<double> M = prof.max_values;
    std::vector<double> m = prof.min_values;
    if (M.empty()) throw std::invalid_argument("an_bn: profile has no maxima");
    if (m.size() + 1 != M.size())
        throw std::invalid_argument("an_bn: need exactly n-1 minima for n maxima");
    std::sort(M.begin(), M.end(), std::greater<>());
    std::sort(m.begin(), m.end(), std::greater<>());
    const double tol = 1e-9 * std::max(1.0, M[0]);
    double sum2 = M[0] * M[0];
    double sum3 = M[0] * M[0] * M[0];
    for (size_t i = 1; i < M.size(); ++i) {
        if (M[i] < m[i - 1] - tol)
            throw std::runtime_error("an_bn: pairing violation M_i < m_{i-1} (scan defect)");
        sum2 += M[i] * M[i] - m[i - 1] * m[i - 1];
        sum3 += M[i] * M[i] * M[i] - m[i - 1] * m[i - 1] * m[i - 1];
    }
    AnBn r;
    r.an = std::sqrt(std::max(0.0, sum2));
    r.bn = std::cbrt(sum3);
    return r;
}

struct SequenceReport {
    double an = 0.0;
    double bn = 0.0;
    double margin_cubic = 0.0;  // (3/2) M1 sum(M^2-m^2) - sum(M^3-m^3)
    double margin_anbn = 0.0;   // A_n - B_n
};

/// The two elementary sequence inequalities for sorted admissible tuples.
inline SequenceReport sequence_inequalities(const std::vector<double>& M,
                                            const std::vector<double>& m) {
    if (M.empty() || m.size() + 1 != M.size())
        throw std::invalid_argument("sequence_inequalities: need n maxima and n-1 minima");
    for (size_t i = 0; i + 1 < M.size(); ++i)
        if (M[i] < M[i + 1])
            throw std::invalid_argument("sequence_inequalities: maxima not decreasing");
    for (size_t i = 0; i + 1 < m.size(); ++i)
        if (m[i] < m[i + 1])
            throw std::invalid_argument("sequence_inequalities: minima not decreasing");
    if (M.back() < 0.0 || (!m.empty() && m.back() < 0.0))
        throw std::invalid_argument("sequence_inequalities: negative entries");
    for (size_t i = 1; i < M.size(); ++i)
        if (M[i] < m[i - 1])
            throw std::invalid_argument("sequence_inequalities: M_i < m_{i-1}");

    double sum2 = 0.0, sum3 = 0.0;
    for (size_t i = 1; i < M.size(); ++i) {
        sum2 += M[i] * M[i] - m[i - 1] * m[i - 1];
        sum3 += M[i] * M[i] * M[i] - m[i - 1] * m[i - 1] * m[i - 1];
    }
    SequenceReport r;
    r.margin_cubic = 1.5 * M[0] * sum2 - sum3;
    r.an = std::sqrt(M[0] * M[0] + sum2);
    r.bn = std::cbrt(M[0] * M[0] * M[0] + sum3);
    r.margin_anbn = r.an - r.bn;
    return r;
}

}  // namespace dplab
