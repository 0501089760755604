#pragma once

// Reference implementations that share no code with the library.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// Guided LDOS over Γ⁰ as a function of the round-trip phase θ, summed as the multiple-reflection
// series instead of the closed-form ratio.
inline double ldos_series(double r1, double r2, double theta, int terms = 20000) {
    const std::complex<double> z1 = std::polar(r1, theta), z2 = std::polar(r2, theta);
    std::complex<double> geometric = 0.0, p = 1.0;
    for (int k = 0; k < terms; ++k) {
        geometric += p;
        p *= z1 * z2;
        if (std::abs(p) < 1e-17) break;
    }
    return std::real((1.0 + z1) * (1.0 + z2) * geometric);
}

struct LorentzFit {
    double background = 0.0;
    double weight = 0.0;
    double width = 0.0;
    double sse = 0.0;
};

// For a fixed width the model b + w·k/(k² + x²) is linear in (b, w): solve the 2×2 normal
// equations directly.
inline LorentzFit project(const std::vector<double>& x, const std::vector<double>& y, double k) {
    double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double phi = k / (k * k + x[i] * x[i]);
        s11 += 1.0;
        s12 += phi;
        s22 += phi * phi;
        t1 += y[i];
        t2 += phi * y[i];
    }
    const double det = s11 * s22 - s12 * s12;
    LorentzFit f;
    f.width = k;
    f.background = (t1 * s22 - t2 * s12) / det;
    f.weight = (s11 * t2 - s12 * t1) / det;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.background - f.weight * k / (k * k + x[i] * x[i]);
        f.sse += r * r;
    }
    return f;
}

// Dense-grid least squares: log-spaced scan of the width, then golden-section refinement.
inline LorentzFit fit_lorentzian(const std::vector<double>& x, const std::vector<double>& y) {
    const int scan = 400;
    double best_k = 0.0, best = INFINITY;
    for (int i = 0; i <= scan; ++i) {
        const double k = std::pow(10.0, -4.0 + 5.0 * i / scan);
        const double s = project(x, y, k).sse;
        if (s < best) best = s, best_k = k;
    }
    double a = best_k / std::pow(10.0, 5.0 / scan), b = best_k * std::pow(10.0, 5.0 / scan);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = project(x, y, c).sse, fd = project(x, y, d).sse;
    while (b - a > 1e-13 * b) {
        if (fc < fd) {
            b = d, d = c, fd = fc;
            c = b - g * (b - a);
            fc = project(x, y, c).sse;
        } else {
            a = c, c = d, fc = fd;
            d = a + g * (b - a);
            fd = project(x, y, d).sse;
        }
    }
    return project(x, y, 0.5 * (a + b));
}

// Symmetric-cavity LDOS/Γ⁰ fitted over one period θ ∈ [−π, π].
inline LorentzFit fit_symmetric_cavity(double r, int samples = 20001) {
    std::vector<double> x(samples), y(samples);
    for (int i = 0; i < samples; ++i) {
        x[i] = -kPi + 2.0 * kPi * i / (samples - 1);
        y[i] = ldos_series(r, r, x[i]);
    }
    return fit_lorentzian(x, y);
}

}  // namespace oracle
