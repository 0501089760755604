#include "fpcqed/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "fpcqed/errors.hpp"

namespace fpcqed {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[static_cast<std::size_t>(j)];
        const double s = f(c - dx) + f(c + dx);
        kronrod += kWgk[static_cast<std::size_t>(j)] * s;
        if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * s;
    }
    return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breaks, const QuadratureOptions& options) {
    if (breaks.size() < 2) throw InvalidArgument("integrate_adaptive needs at least two breaks");
    std::priority_queue<Segment> queue;
    QuadratureResult out;
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        const Segment s = gauss_kronrod(f, breaks[i], breaks[i + 1]);
        out.evaluations += 15;
        value += s.value;
        error += s.error;
        queue.push(s);
    }
    while (!queue.empty()) {
        const double target = std::max(options.abs_tol, options.rel_tol * std::abs(value));
        if (error <= target) {
            out.converged = true;
            break;
        }
        if (out.evaluations >= options.max_evaluations) break;
        const Segment worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval exhausted at machine resolution; accept its estimate.
            queue.pop();
            queue.push({worst.a, worst.b, worst.value, 0.0});
            error -= worst.error;
            continue;
        }
        queue.pop();
        const Segment left = gauss_kronrod(f, worst.a, mid);
        const Segment right = gauss_kronrod(f, mid, worst.b);
        out.evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    // Re-sum to drop accumulated round-off from the incremental updates.
    double total = 0.0;
    double total_error = 0.0;
    while (!queue.empty()) {
        total += queue.top().value;
        total_error += queue.top().error;
        queue.pop();
    }
    out.value = total;
    out.error = total_error;
    if (!std::isfinite(out.value)) throw QuadratureError("non-finite integrand in adaptive quadrature");
    return out;
}

std::vector<double> make_breaks(std::vector<double> points, double lo, double hi) {
    if (!(hi > lo)) throw InvalidArgument("make_breaks needs hi > lo");
    points.push_back(lo);
    points.push_back(hi);
    std::erase_if(points, [&](double x) { return !(x >= lo && x <= hi) || !std::isfinite(x); });
    std::sort(points.begin(), points.end());
    const double eps = 1e-12 * (hi - lo);
    std::vector<double> out;
    for (double x : points)
        if (out.empty() || x - out.back() > eps) out.push_back(x);
    out.back() = hi;
    return out;
}

std::vector<double> trapezoid_weights(std::span<const double> nodes) {
    std::vector<double> w(nodes.size(), 0.0);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double h = 0.5 * (nodes[i + 1] - nodes[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    return w;
}

std::vector<double> graded_grid(std::span<const GridFeature> features, double lo, double hi,
                                double coarse_step, double resolution) {
    if (!(hi > lo) || !(coarse_step > 0.0) || !(resolution > 0.0))
        throw InvalidArgument("invalid graded grid specification");
    auto spacing = [&](double x) {
        double h = coarse_step;
        for (const auto& f : features)
            h = std::min(h, resolution * std::max(f.width, std::abs(x - f.center)));
        return h;
    };
    std::vector<double> pts;
    for (double x = lo; x < hi; x += spacing(x)) pts.push_back(x);
    for (const auto& f : features) pts.push_back(f.center);
    return make_breaks(std::move(pts), lo, hi);
}

}  // namespace fpcqed
