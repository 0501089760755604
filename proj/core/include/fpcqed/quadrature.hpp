#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fpcqed {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    int max_evaluations = 200000;
};

/// Globally adaptive 15-point Gauss-Kronrod integration over [breaks.front(), breaks.back()],
/// splitting first at every interior break. The interval with the largest error estimate is
/// bisected until the summed estimate falls below max(abs_tol, rel_tol·|value|).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breaks,
                                    const QuadratureOptions& options = {});

/// Sorted, de-duplicated break list clipped to [lo, hi], always containing both ends.
std::vector<double> make_breaks(std::vector<double> points, double lo, double hi);

/// Contribution of a 1/x² tail beyond an edge where the integrand equals f_edge, at distance
/// `distance` from the centre of mass of the integrand.
inline double lorentzian_tail(double f_edge, double distance) { return f_edge * distance; }

/// Trapezoid weights for an ascending, possibly non-uniform node set.
std::vector<double> trapezoid_weights(std::span<const double> nodes);

/// Locally refined grid: spacing resolution·max(width, |x − centre|) near each feature,
/// capped at coarse_step. Ends and centres are always included.
struct GridFeature {
    double center = 0.0;
    double width = 1.0;
};
std::vector<double> graded_grid(std::span<const GridFeature> features, double lo, double hi,
                                double coarse_step, double resolution = 0.05);

}  // namespace fpcqed
