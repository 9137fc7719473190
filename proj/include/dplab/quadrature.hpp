#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dplab/grid.hpp"

namespace dplab {

/// Marks a field as only piecewise smooth. Kink positions are snapped to the
/// nearest node; between kinks the samples are treated as smooth. Used by the
/// functionals and certificates to keep quadrature and differentiation
/// accurate on peaked profiles, where plain spectral calculus rings.
struct NonsmoothInfo {
    bool enabled = false;
    std::vector<double> kink_positions;

    static NonsmoothInfo at(std::initializer_list<double> xs) {
        NonsmoothInfo ns;
        ns.enabled = true;
        ns.kink_positions.assign(xs);
        return ns;
    }
};

namespace detail {

inline std::vector<int> kink_nodes(const Grid& g, const std::vector<double>& positions) {
    std::vector<int> nodes;
    nodes.reserve(positions.size());
    for (double x : positions) {
        const double s = (g.wrap(x) + g.half_length) / g.dx;
        int j = static_cast<int>(std::lround(s)) % g.point_count;
        if (j < 0) j += g.point_count;
        nodes.push_back(j);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

inline int wrap_index(int j, int n) { return ((j % n) + n) % n; }

}  // namespace detail

/// Rectangle rule plus the Euler-Maclaurin kink correction
///   I = T + (dx^2/12) * sum_kinks [f'(x+) - f'(x-)]
/// for a continuous integrand whose derivative jumps at the given nodes.
/// One-sided slopes come from 3-point stencils on each side.
inline double integrate_with_kinks(const Field& f, const std::vector<int>& kinks) {
    double sum = 0.0, comp = 0.0;
    for (double v : f.values) {
        const double t = v - comp;
        const double s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    }
    const int n = f.grid.point_count;
    const double h = f.grid.dx;
    double correction = 0.0;
    for (int m : kinks) {
        auto at = [&](int i) { return f[detail::wrap_index(i, n)]; };
        const double right = (-3.0 * at(m) + 4.0 * at(m + 1) - at(m + 2)) / (2.0 * h);
        const double left = (3.0 * at(m) - 4.0 * at(m - 1) + at(m - 2)) / (2.0 * h);
        correction += right - left;
    }
    return h * sum + h * h / 12.0 * correction;
}

inline double integrate_with_kinks(const Field& f, const NonsmoothInfo& ns) {
    if (!ns.enabled || ns.kink_positions.empty()) {
        double sum = 0.0, comp = 0.0;
        for (double v : f.values) {
            const double t = v - comp;
            const double s = sum + t;
            comp = (s - sum) - t;
            sum = s;
        }
        return f.grid.dx * sum;
    }
    return integrate_with_kinks(f, detail::kink_nodes(f.grid, ns.kink_positions));
}

/// Derivative samples of a piecewise-smooth field. Interior nodes use 5-point
/// centered stencils; nodes near a kink use one-sided stencils that stay on
/// their own piece. Kink nodes carry both one-sided limits; the `samples`
/// field stores their average there.
struct PiecewiseDerivative {
    std::vector<double> samples;
    std::vector<int> kinks;           // sorted node indices
    std::vector<double> left_limit;   // aligned with kinks
    std::vector<double> right_limit;  // aligned with kinks
};

inline PiecewiseDerivative derivative_with_kinks(const Field& f, const std::vector<int>& kinks_in) {
    const int n = f.grid.point_count;
    const double h = f.grid.dx;
    auto at = [&](int i) { return f[detail::wrap_index(i, n)]; };

    PiecewiseDerivative d;
    d.kinks = kinks_in;
    std::sort(d.kinks.begin(), d.kinks.end());
    d.samples.assign(static_cast<size_t>(n), 0.0);

    auto centered4 = [&](int j) {
        return (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * h);
    };
    // 5-point one-sided stencils, one order lower at the very edge.
    auto onesided_right = [&](int j) {  // derivative at j using j..j+4
        return (-25.0 * at(j) + 48.0 * at(j + 1) - 36.0 * at(j + 2) + 16.0 * at(j + 3) -
                3.0 * at(j + 4)) /
               (12.0 * h);
    };
    auto onesided_left = [&](int j) {  // derivative at j using j-4..j
        return (25.0 * at(j) - 48.0 * at(j - 1) + 36.0 * at(j - 2) - 16.0 * at(j - 3) +
                3.0 * at(j - 4)) /
               (12.0 * h);
    };
    auto near_right_edge = [&](int j) {  // derivative at j using j-1..j+3
        return (-3.0 * at(j - 1) - 10.0 * at(j) + 18.0 * at(j + 1) - 6.0 * at(j + 2) +
                at(j + 3)) /
               (12.0 * h);
    };
    auto near_left_edge = [&](int j) {  // derivative at j using j-3..j+1
        return (3.0 * at(j + 1) + 10.0 * at(j) - 18.0 * at(j - 1) + 6.0 * at(j - 2) -
                at(j - 3)) /
               (12.0 * h);
    };

    if (d.kinks.empty()) {
        for (int j = 0; j < n; ++j) d.samples[static_cast<size_t>(j)] = centered4(j);
        return d;
    }

    const int pieces = static_cast<int>(d.kinks.size());
    d.left_limit.assign(static_cast<size_t>(pieces), 0.0);
    d.right_limit.assign(static_cast<size_t>(pieces), 0.0);

    for (int p = 0; p < pieces; ++p) {
        const int a = d.kinks[static_cast<size_t>(p)];
        const int b_raw = d.kinks[static_cast<size_t>((p + 1) % pieces)];
        const int len = detail::wrap_index(b_raw - a, n) == 0 ? n : detail::wrap_index(b_raw - a, n);
        if (len < 6)
            throw std::invalid_argument("derivative_with_kinks: kinks closer than 6 cells");
        // j runs over piece-relative offsets 0..len (node a .. node b).
        d.right_limit[static_cast<size_t>(p)] = onesided_right(a);
        d.left_limit[static_cast<size_t>((p + 1) % pieces)] = onesided_left(a + len);
        for (int r = 1; r < len; ++r) {
            const int j = a + r;
            double val;
            if (r == 1)
                val = near_right_edge(j);
            else if (r == len - 1)
                val = near_left_edge(j);
            else
                val = centered4(j);
            d.samples[static_cast<size_t>(detail::wrap_index(j, n))] = val;
        }
    }
    for (int p = 0; p < pieces; ++p) {
        const int m = d.kinks[static_cast<size_t>(p)];
        d.samples[static_cast<size_t>(m)] =
            0.5 * (d.left_limit[static_cast<size_t>(p)] + d.right_limit[static_cast<size_t>(p)]);
    }
    return d;
}

/// Integrates a piecewise-smooth integrand that JUMPS at the kinks. The caller
/// supplies interior samples plus both one-sided values at each kink node.
/// Each piece gets a trapezoid sum with its own endpoint values and an
/// Euler-Maclaurin end correction.
inline double integrate_piecewise(const Grid& g, const std::vector<double>& samples,
                                  const std::vector<int>& kinks,
                                  const std::vector<double>& left_vals,
                                  const std::vector<double>& right_vals) {
    const int n = g.point_count;
    const double h = g.dx;
    if (kinks.empty()) {
        double sum = 0.0;
        for (double v : samples) sum += v;
        return h * sum;
    }
    const int pieces = static_cast<int>(kinks.size());
    auto at = [&](int i) { return samples[static_cast<size_t>(detail::wrap_index(i, n))]; };

    double total = 0.0;
    for (int p = 0; p < pieces; ++p) {
        const int a = kinks[static_cast<size_t>(p)];
        const int b_raw = kinks[static_cast<size_t>((p + 1) % pieces)];
        const int len = detail::wrap_index(b_raw - a, n) == 0 ? n : detail::wrap_index(b_raw - a, n);
        const double fa = right_vals[static_cast<size_t>(p)];
        const double fb = left_vals[static_cast<size_t>((p + 1) % pieces)];
        double sum = 0.5 * (fa + fb);
        for (int r = 1; r < len; ++r) sum += at(a + r);
        // I = T - (h^2/12) (f'(b-) - f'(a+)), slopes from 3-point one-sided fits.
        const double da = (-3.0 * fa + 4.0 * at(a + 1) - at(a + 2)) / (2.0 * h);
        const double db = (3.0 * fb - 4.0 * at(a + len - 1) + at(a + len - 2)) / (2.0 * h);
        total += h * sum - h * h / 12.0 * (db - da);
    }
    return total;
}

}  // namespace dplab
