#pragma once

#include <fftw3.h>

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "dplab/grid.hpp"

namespace dplab {

using Spectrum = std::vector<std::complex<double>>;  // bins n = 0..N/2, k_n = n*pi/L

namespace detail {

inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

/// Per-size FFTW plans and buffers. Cached thread-locally; plan creation is
/// serialized because the FFTW planner is not thread-safe.
class FftPlan {
public:
    explicit FftPlan(int n)
        : n_(n),
          real_(fftw_alloc_real(static_cast<size_t>(n))),
          cplx_(fftw_alloc_complex(static_cast<size_t>(n / 2 + 1))) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd_ = fftw_plan_dft_r2c_1d(n, real_, cplx_, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_c2r_1d(n, cplx_, real_, FFTW_ESTIMATE);
        if (!fwd_ || !bwd_) throw std::runtime_error("FFTW plan creation failed");
    }
    ~FftPlan() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(real_);
        fftw_free(cplx_);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    /// Normalized coefficients c_n = (1/N) sum_j f_j exp(-2*pi*i*j*n/N).
    Spectrum forward(const std::vector<double>& f) {
        for (int j = 0; j < n_; ++j) real_[j] = f[static_cast<size_t>(j)];
        fftw_execute(fwd_);
        const int bins = n_ / 2 + 1;
        Spectrum c(static_cast<size_t>(bins));
        const double inv = 1.0 / n_;
        for (int b = 0; b < bins; ++b)
            c[static_cast<size_t>(b)] = std::complex<double>(cplx_[b][0] * inv, cplx_[b][1] * inv);
        return c;
    }

    std::vector<double> inverse(const Spectrum& c) {
        const int bins = n_ / 2 + 1;
        if (static_cast<int>(c.size()) != bins)
            throw std::invalid_argument("FftPlan::inverse: bin count mismatch");
        for (int b = 0; b < bins; ++b) {
            cplx_[b][0] = c[static_cast<size_t>(b)].real();
            cplx_[b][1] = c[static_cast<size_t>(b)].imag();
        }
        fftw_execute(bwd_);
        std::vector<double> f(static_cast<size_t>(n_));
        for (int j = 0; j < n_; ++j) f[static_cast<size_t>(j)] = real_[j];
        return f;
    }

private:
    int n_;
    double* real_;
    fftw_complex* cplx_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

inline FftPlan& plan_for(int n) {
    thread_local std::map<int, std::unique_ptr<FftPlan>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<FftPlan>(n)).first;
    return *it->second;
}

}  // namespace detail

inline Spectrum spectrum_of(const Field& f) {
    return detail::plan_for(f.grid.point_count).forward(f.values);
}

inline Field field_from_spectrum(const Grid& g, const Spectrum& c) {
    return Field(g, detail::plan_for(g.point_count).inverse(c));
}

inline double wavenumber(const Grid& g, int bin) {
    return bin * M_PI / g.half_length;
}

/// Fourier-collocation first derivative. The Nyquist mode is dropped: an odd
/// multiplier has no consistent real value there.
inline Field spectral_derivative(const Field& f) {
    Spectrum c = spectrum_of(f);
    const int nyq = f.grid.point_count / 2;
    for (int b = 0; b <= nyq; ++b) {
        const double k = wavenumber(f.grid, b);
        c[static_cast<size_t>(b)] *= std::complex<double>(0.0, k);
    }
    c[static_cast<size_t>(nyq)] = 0.0;
    return field_from_spectrum(f.grid, c);
}

inline Field second_derivative(const Field& f) {
    Spectrum c = spectrum_of(f);
    const int nyq = f.grid.point_count / 2;
    for (int b = 0; b <= nyq; ++b) {
        const double k = wavenumber(f.grid, b);
        c[static_cast<size_t>(b)] *= -k * k;
    }
    return field_from_spectrum(f.grid, c);
}

/// (m^2 - dxx)^{-1} f via the multiplier 1/(m^2 + k^2); exact on resolved modes.
inline Field helmholtz_inverse(const Field& f, double m) {
    if (!(m > 0.0)) throw std::invalid_argument("helmholtz_inverse: m must be positive");
    Spectrum c = spectrum_of(f);
    const int nyq = f.grid.point_count / 2;
    for (int b = 0; b <= nyq; ++b) {
        const double k = wavenumber(f.grid, b);
        c[static_cast<size_t>(b)] /= (m * m + k * k);
    }
    return field_from_spectrum(f.grid, c);
}

/// Momentum density y = (1 - dxx) u.
inline Field momentum_density(const Field& u) {
    Spectrum c = spectrum_of(u);
    const int nyq = u.grid.point_count / 2;
    for (int b = 0; b <= nyq; ++b) {
        const double k = wavenumber(u.grid, b);
        c[static_cast<size_t>(b)] *= (1.0 + k * k);
    }
    return field_from_spectrum(u.grid, c);
}

/// dx * sum of samples (the rectangle rule; spectrally accurate for smooth
/// periodic integrands). Compensated summation keeps it order-insensitive.
inline double integrate(const Field& f) {
    double sum = 0.0, comp = 0.0;
    for (double v : f.values) {
        const double t = v - comp;
        const double s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    }
    return f.grid.dx * sum;
}

/// Zeroes modes above the 2/3 band; quadratic products of filtered fields are
/// then alias-free on the retained modes.
inline void dealias_spectrum(const Grid& g, Spectrum& c) {
    const int cutoff = g.point_count / 3;
    const int nyq = g.point_count / 2;
    for (int b = cutoff + 1; b <= nyq; ++b) c[static_cast<size_t>(b)] = 0.0;
}

inline Field dealias(const Field& f) {
    Spectrum c = spectrum_of(f);
    dealias_spectrum(f.grid, c);
    return field_from_spectrum(f.grid, c);
}

/// Shift a band-limited field: f(x) -> f(x - d), via spectral phases.
inline Field translate(const Field& f, double d) {
    Spectrum c = spectrum_of(f);
    const int nyq = f.grid.point_count / 2;
    for (int b = 0; b <= nyq; ++b) {
        const double ph = -wavenumber(f.grid, b) * d;
        c[static_cast<size_t>(b)] *= std::complex<double>(std::cos(ph), std::sin(ph));
    }
    // A real shifted Nyquist mode exists only for node-multiples; drop the
    // imaginary part it would otherwise pick up.
    c[static_cast<size_t>(nyq)] =
        std::complex<double>(c[static_cast<size_t>(nyq)].real(), 0.0);
    return field_from_spectrum(f.grid, c);
}

enum class Interp { trigonometric, cubic };

/// Band-limited (trigonometric) interpolation at an arbitrary point.
inline double evaluate_spectrum_at(const Grid& g, const Spectrum& c, double x) {
    const int nyq = g.point_count / 2;
    const double theta = x + g.half_length;  // phase origin at the first node
    double acc = c[0].real();
    for (int b = 1; b < nyq; ++b) {
        const double ph = wavenumber(g, b) * theta;
        acc += 2.0 * (c[static_cast<size_t>(b)].real() * std::cos(ph) -
                      c[static_cast<size_t>(b)].imag() * std::sin(ph));
    }
    acc += c[static_cast<size_t>(nyq)].real() * std::cos(wavenumber(g, nyq) * theta);
    return acc;
}

inline double evaluate_at(const Field& f, double x, Interp kind = Interp::trigonometric) {
    const Grid& g = f.grid;
    if (x < -g.half_length || x >= g.half_length)
        throw std::invalid_argument("evaluate_at: position outside [-L, L)");
    const double s = (x + g.half_length) / g.dx;
    const int j = static_cast<int>(std::floor(s));
    const double frac = s - j;
    // Node values are reproduced exactly.
    if (frac == 0.0) return f[j % g.point_count];
    if (kind == Interp::cubic) {
        const int n = g.point_count;
        auto at = [&](int i) { return f[((i % n) + n) % n]; };
        const double p0 = at(j - 1), p1 = at(j), p2 = at(j + 1), p3 = at(j + 2);
        const double t = frac;
        return p1 + 0.5 * t * (p2 - p0 +
                               t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                    t * (3.0 * (p1 - p2) + p3 - p0)));
    }
    return evaluate_spectrum_at(g, spectrum_of(f), x);
}

}  // namespace dplab
