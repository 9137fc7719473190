#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dplab {

/// Uniform periodic grid on [-L, L) with nodes x_j = -L + j*dx, dx = 2L/N.
struct Grid {
    double half_length = 0.0;
    int point_count = 0;
    double dx = 0.0;

    double node(int j) const { return -half_length + j * dx; }
    double period() const { return 2.0 * half_length; }

    bool operator==(const Grid& other) const {
        return point_count == other.point_count && half_length == other.half_length;
    }

    /// Shortest distance between x and x0 on the periodic circle.
    double circular_distance(double x, double x0) const {
        const double p = period();
        double d = std::fmod(std::fabs(x - x0), p);
        return std::min(d, p - d);
    }

    /// Wraps x into [-L, L).
    double wrap(double x) const {
        const double p = period();
        double y = std::fmod(x + half_length, p);
        if (y < 0.0) y += p;
        return y - half_length;
    }
};

inline Grid make_grid(double half_length, int point_count) {
    if (half_length <= 0.0)
        throw std::invalid_argument("make_grid: half-length must be positive");
    if (point_count < 16)
        throw std::invalid_argument("make_grid: need at least 16 points");
    if (point_count % 2 != 0)
        throw std::invalid_argument("make_grid: point count must be even");
    Grid g;
    g.half_length = half_length;
    g.point_count = point_count;
    g.dx = 2.0 * half_length / point_count;
    return g;
}

/// Real-valued samples on a Grid. Plain value type; all operations on it are pure.
struct Field {
    Grid grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const Grid& g) : grid(g), values(static_cast<size_t>(g.point_count), 0.0) {}
    Field(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (static_cast<int>(values.size()) != g.point_count)
            throw std::invalid_argument("Field: value count does not match grid");
    }

    int size() const { return grid.point_count; }
    double& operator[](int j) { return values[static_cast<size_t>(j)]; }
    double operator[](int j) const { return values[static_cast<size_t>(j)]; }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline void require_same_grid(const Field& a, const Field& b, const char* where) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

inline Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b, "Field operator+");
    Field r(a.grid);
    for (int j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
    return r;
}

inline Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b, "Field operator-");
    Field r(a.grid);
    for (int j = 0; j < a.size(); ++j) r[j] = a[j] - b[j];
    return r;
}

inline Field operator*(double s, const Field& a) {
    Field r(a.grid);
    for (int j = 0; j < a.size(); ++j) r[j] = s * a[j];
    return r;
}

inline Field pointwise(const Field& a, const Field& b) {
    require_same_grid(a, b, "pointwise");
    Field r(a.grid);
    for (int j = 0; j < a.size(); ++j) r[j] = a[j] * b[j];
    return r;
}

inline double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::fabs(v));
    return m;
}

inline double min_value(const Field& f) {
    double m = f.values.empty() ? 0.0 : f.values[0];
    for (double v : f.values) m = std::min(m, v);
    return m;
}

inline double max_value(const Field& f) {
    double m = f.values.empty() ? 0.0 : f.values[0];
    for (double v : f.values) m = std::max(m, v);
    return m;
}

}  // namespace dplab
