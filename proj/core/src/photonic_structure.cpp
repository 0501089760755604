#include "fpcqed/photonic_structure.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "fpcqed/errors.hpp"
#include "fpcqed/units.hpp"

namespace fpcqed {

namespace {

using cplx = std::complex<double>;
constexpr double kPoleThreshold = 1e-12;

bool finite(double x) { return std::isfinite(x); }

cplx detuned_reflectivity(double r, double phi0, double reduced_detuning) {
    return std::polar(r, phi0 + reduced_detuning);
}

struct FitResult {
    double background = 0.0;
    double weight = 0.0;
    double width = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

// Levenberg-Marquardt on y ≈ b + w·k/(k² + x²) with k = exp(s), so the width stays positive.
FitResult fit_lorentzian(const std::vector<double>& x, const std::vector<double>& y, double b0,
                         double w0, double k0, const DecomposeOptions& options) {
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::Vector3d p(b0, w0, std::log(k0));

    auto residuals = [&](const Eigen::Vector3d& q, Eigen::VectorXd& res, Eigen::MatrixXd* jac) {
        const double k = std::exp(q[2]);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double x2 = x[i] * x[i];
            const double den = k * k + x2;
            const double lor = k / den;
            res[i] = q[0] + q[1] * lor - y[i];
            if (jac) {
                (*jac)(i, 0) = 1.0;
                (*jac)(i, 1) = lor;
                (*jac)(i, 2) = q[1] * k * (x2 - k * k) / (den * den);
            }
        }
        return 0.5 * res.squaredNorm();
    };

    Eigen::VectorXd res(n), trial_res(n);
    Eigen::MatrixXd jac(n, 3);
    double cost = residuals(p, res, &jac);
    double lambda = 1e-3;
    bool converged = false;
    int iter = 0;

    for (; iter < options.max_iterations && !converged; ++iter) {
        const Eigen::Matrix3d jtj = jac.transpose() * jac;
        const Eigen::Vector3d grad = jac.transpose() * res;

        bool accepted = false;
        while (!accepted) {
            Eigen::Matrix3d a = jtj;
            for (int d = 0; d < 3; ++d) a(d, d) += lambda * std::max(jtj(d, d), 1e-300);
            const Eigen::Vector3d step = a.ldlt().solve(-grad);
            const Eigen::Vector3d trial = p + step;
            const double trial_cost = residuals(trial, trial_res, nullptr);
            if (!finite(trial_cost)) throw FitError("non-finite residual in LDOS decomposition");

            const double rel_step = step.norm() / (p.norm() + options.tolerance);
            if (trial_cost <= cost) {
                const double reduction = (cost - trial_cost) / std::max(cost, 1e-300);
                p = trial;
                cost = residuals(p, res, &jac);
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
                if (rel_step < options.tolerance || reduction < options.tolerance * options.tolerance)
                    converged = true;
            } else {
                lambda *= 4.0;
                // No descent direction left at this resolution: the minimum has been reached.
                if (lambda > 1e16 || rel_step < options.tolerance) {
                    converged = true;
                    break;
                }
            }
        }
    }
    if (!converged)
        throw FitError("LDOS decomposition did not converge within " +
                       std::to_string(options.max_iterations) + " iterations");

    double ss = 0.0;
    for (double v : y) ss += v * v;
    FitResult out;
    out.background = p[0];
    out.weight = p[1];
    out.width = std::exp(p[2]);
    out.residual = ss > 0.0 ? std::sqrt(res.squaredNorm() / ss) : 0.0;
    out.iterations = iter;
    return out;
}

std::vector<double> period_samples(int samples) {
    if (samples < 3) throw InvalidArgument("decompose_ldos needs at least 3 samples");
    std::vector<double> x(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        x[static_cast<std::size_t>(i)] = -units::kPi + 2.0 * units::kPi * i / (samples - 1);
    return x;
}

}  // namespace

double MirrorSpec::t() const { return std::sqrt(std::max(0.0, 1.0 - r * r)); }

void MirrorSpec::validate() const {
    if (!finite(r) || r < 0.0 || r > 1.0)
        throw InvalidArgument("mirror reflectivity must lie in [0, 1], got " + std::to_string(r));
    if (!finite(phi0)) throw InvalidArgument("mirror phase must be finite");
}

void ModeFamily::validate() const {
    if (!finite(gamma0) || gamma0 < 0.0) throw InvalidArgument("mode family gamma0 must be >= 0");
    if (!(r1 >= 0.0 && r1 <= 1.0 && r2 >= 0.0 && r2 <= 1.0))
        throw InvalidArgument("mode family reflectivities must lie in [0, 1]");
    if (!(n_eff > 0.0) || !finite(n_eff)) throw InvalidArgument("mode family n_eff must be > 0");
}

void WaveguideCavity::validate() const {
    if (!(length > 0.0) || !finite(length)) throw InvalidArgument("cavity length must be > 0");
    if (!(n_eff > 0.0) || !finite(n_eff)) throw InvalidArgument("n_eff must be > 0");
    if (!(gammaB0 >= 0.0) || !finite(gammaB0)) throw InvalidArgument("gammaB0 must be >= 0");
    if (!(gammaRM >= 0.0) || !finite(gammaRM)) throw InvalidArgument("gammaRM must be >= 0");
    if (!finite(omega_c)) throw InvalidArgument("omega_c must be finite");
    mirror1.validate();
    mirror2.validate();
    for (const auto& f : extra_families) f.validate();
}

double WaveguideCavity::free_spectral_range() const {
    return units::kPi * units::kHbarC / (n_eff * length);
}

double WaveguideCavity::ldos_period() const { return 2.0 * free_spectral_range(); }

double WaveguideCavity::reduced_detuning(double omega) const {
    return length * n_eff * (omega - omega_c) / units::kHbarC;
}

cplx effective_reflectivity(const MirrorSpec& mirror, double omega, double length, double n_eff) {
    if (!(omega > 0.0)) throw InvalidArgument("effective_reflectivity requires omega > 0");
    mirror.validate();
    return std::polar(mirror.r, mirror.phi0 + n_eff * omega * length / units::kHbarC);
}

double fabry_perot_factor(cplx z1, cplx z2, int family) {
    const cplx den = 1.0 - z1 * z2;
    if (std::abs(den) < kPoleThreshold) {
        const std::string which =
            family < 0 ? std::string("guided mode") : "mode family " + std::to_string(family);
        throw PoleError("Fabry-Perot pole (|1 - r1 r2| < 1e-12) in " + which, family);
    }
    return ((1.0 + z1) * (1.0 + z2) / den).real();
}

double ldos_guided(const WaveguideCavity& s, double omega) {
    if (!(omega > 0.0)) throw InvalidArgument("ldos_guided requires omega > 0");
    s.validate();
    const double x = s.reduced_detuning(omega);
    const cplx z1 = detuned_reflectivity(s.mirror1.r, s.mirror1.phi0, x);
    const cplx z2 = detuned_reflectivity(s.mirror2.r, s.mirror2.phi0, x);
    return s.gammaB0 * fabry_perot_factor(z1, z2);
}

double ldos_radiation(const WaveguideCavity& s, double omega) {
    if (!(omega > 0.0)) throw InvalidArgument("ldos_radiation requires omega > 0");
    s.validate();
    double total = s.gammaRM;
    for (std::size_t m = 0; m < s.extra_families.size(); ++m) {
        const auto& f = s.extra_families[m];
        const double x = s.length * f.n_eff * (omega - s.omega_c) / units::kHbarC;
        const cplx z1 = detuned_reflectivity(f.r1, s.mirror1.phi0, x);
        const cplx z2 = detuned_reflectivity(f.r2, s.mirror2.phi0, x);
        total += f.gamma0 * fabry_perot_factor(z1, z2, static_cast<int>(m));
    }
    return total;
}

double radiation_rate(const WaveguideCavity& s, double omega_X) { return ldos_radiation(s, omega_X); }

cplx filter_function(const WaveguideCavity& s, double omega) {
    const double x = s.reduced_detuning(omega);
    const cplx z1 = detuned_reflectivity(s.mirror1.r, s.mirror1.phi0, x);
    const cplx z2 = detuned_reflectivity(s.mirror2.r, s.mirror2.phi0, x);
    const cplx den = 1.0 - z1 * z2;
    if (std::abs(den) < kPoleThreshold)
        throw PoleError("Fabry-Perot pole (|1 - r1 r2| < 1e-12) in cavity filter");
    return (1.0 + z1) * s.mirror2.t() / den;
}

LimitValues limit_values(const WaveguideCavity& s) {
    if (!(s.length > 0.0)) throw InvalidArgument("limit_values requires L > 0");
    LimitValues v;
    v.g_max = std::sqrt(s.gammaB0 * units::kHbarC / (2.0 * s.length * s.n_eff));
    v.kappa_max = 2.0 * units::kHbarC / (s.n_eff * s.length);
    return v;
}

double coupling_from_weight(double Lc, double length, double n_eff) {
    return std::sqrt(units::kHbarC * std::max(Lc, 0.0) / (4.0 * length * n_eff));
}

double vanishing_mirror_linewidth() {
    static const double width = [] {
        const auto x = period_samples(2001);
        std::vector<double> y(x.size());
        std::transform(x.begin(), x.end(), y.begin(), [](double v) { return std::cos(v); });
        return fit_lorentzian(x, y, -1.0, 4.0, 2.0, DecomposeOptions{}).width;
    }();
    return width;
}

CavityParams decompose_ldos(const WaveguideCavity& s, const DecomposeOptions& options) {
    s.validate();
    const double r1 = s.mirror1.r;
    const double r2 = s.mirror2.r;
    if (r1 >= 1.0 || r2 >= 1.0)
        throw InvalidArgument("decompose_ldos requires both reflectivities < 1");

    const auto lim = limit_values(s);
    const double to_energy = units::kHbarC / (s.length * s.n_eff);

    CavityParams out;
    out.g_max = lim.g_max;
    out.kappa_max = lim.kappa_max;

    if (r1 == 0.0 && r2 == 0.0) {
        out.gammaB = s.gammaB0;
        out.Lc = 0.0;
        out.kappa_reduced = vanishing_mirror_linewidth();
        out.kappa = out.kappa_reduced * to_energy;
        out.g = 0.0;
        return out;
    }

    const auto x = period_samples(options.samples);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const cplx z1 = detuned_reflectivity(r1, s.mirror1.phi0, x[i]);
        const cplx z2 = detuned_reflectivity(r2, s.mirror2.phi0, x[i]);
        y[i] = s.gammaB0 * fabry_perot_factor(z1, z2);
    }

    const double p = r1 * r2;
    const double peak = s.gammaB0 * (1.0 + r1) * (1.0 + r2) / (1.0 - p);
    const double anti = s.gammaB0 * (1.0 - p) / (1.0 + p);
    const double k0 = p > 0.0 ? std::clamp((1.0 - p) / (2.0 * std::sqrt(p)), 1e-6, 2.0) : 2.0;

    const auto fit = fit_lorentzian(x, y, anti, (peak - anti) * k0, k0, options);
    if (!(fit.width > 0.0) || fit.weight < 0.0 || fit.background < -1e-9 * s.gammaB0)
        throw FitError("LDOS decomposition produced unphysical parameters");

    out.gammaB = std::max(fit.background, 0.0);
    out.Lc = fit.weight;
    out.kappa_reduced = fit.width;
    out.kappa = fit.width * to_energy;
    out.g = coupling_from_weight(out.Lc, s.length, s.n_eff);
    out.fit_residual = fit.residual;
    out.iterations = fit.iterations;
    return out;
}

double renormalized_beta(double beta) { return 2.0 * beta / (beta + 1.0); }

RenormalizedRates back_mirror_renormalize(const WaveguideCavity& s, const DecomposeOptions& options) {
    s.validate();
    if (s.mirror1.r != 1.0)
        throw InvalidArgument("back_mirror_renormalize requires a perfect back mirror (r1 = 1)");

    WaveguideCavity symmetric = s;
    symmetric.mirror1 = s.mirror2;

    RenormalizedRates out;
    out.symmetric = decompose_ldos(symmetric, options);
    out.gammaB0_star = 2.0 * s.gammaB0;
    out.gammaB_star = 2.0 * out.symmetric.gammaB;
    out.kappa_star = 0.5 * out.symmetric.kappa;
    out.g = out.symmetric.g;
    out.gammaR = radiation_rate(s, s.omega_c);
    const double total = s.gammaB0 + out.gammaR;
    out.beta = total > 0.0 ? s.gammaB0 / total : 0.0;
    out.beta_star = renormalized_beta(out.beta);
    return out;
}

}  // namespace fpcqed
