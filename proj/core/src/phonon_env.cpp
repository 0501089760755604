#include "fpcqed/phonon_env.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>

#include "fpcqed/errors.hpp"
#include "fpcqed/units.hpp"

namespace fpcqed {

namespace {

using cplx = std::complex<double>;
using boost::math::quadrature::gauss_kronrod;

constexpr double kRelTol = 1e-8;
constexpr double kUpperCutoffFactor = 8.0;  // integrate on [0, 8ν_c]

// ν·coth(ν/(2w)), finite at ν → 0 and equal to ν at T = 0.
double nu_coth(double nu, double w) {
    if (w <= 0.0) return nu;
    const double x = nu / (2.0 * w);
    if (x < 1e-4) return 2.0 * w * (1.0 + x * x / 3.0);
    if (x > 40.0) return nu;
    return nu / std::tanh(x);
}

// Upper bound of ∫_{8ν_c}^∞ αν coth(ν/2w) e^{−ν²/ν_c²} dν.
double tail_bound(const PhononEnvironment& env) {
    const double edge = kUpperCutoffFactor * env.nu_c;
    const double w = env.thermal_frequency();
    const double coth_edge = w > 0.0 ? nu_coth(edge, w) / edge : 1.0;
    return coth_edge * env.alpha * env.nu_c * env.nu_c * 0.5 *
           std::exp(-kUpperCutoffFactor * kUpperCutoffFactor);
}

template <class F>
double integrate_checked(F f, double upper, const char* what) {
    double err = 0.0;
    double l1 = 0.0;
    const double value = gauss_kronrod<double, 31>::integrate(f, 0.0, upper, 18, 1e-11, &err, &l1);
    if (!std::isfinite(value) || err > kRelTol * std::max(l1, 1e-300))
        throw QuadratureError(std::string("adaptive quadrature did not reach relative 1e-8 for ") +
                              what);
    return value;
}

// ∫₀^∞ J(ν)/ν² coth(...) dν, the Huang-Rhys-type integral fixing B.
double reorganisation_integral(const PhononEnvironment& env) {
    if (env.alpha == 0.0) return 0.0;
    const double w = env.thermal_frequency();
    const double nc2 = env.nu_c * env.nu_c;
    auto f = [&](double nu) { return env.alpha * nu_coth(nu, w) * std::exp(-nu * nu / nc2); };
    const double value = integrate_checked(f, kUpperCutoffFactor * env.nu_c, "Franck-Condon factor");
    return value + tail_bound(env);
}

}  // namespace

void PhononEnvironment::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be >= 0");
    if (!(nu_c > 0.0) || !std::isfinite(nu_c)) throw InvalidArgument("nu_c must be > 0");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw InvalidArgument("temperature must be >= 0");
    if (!(gamma_pd >= 0.0) || !std::isfinite(gamma_pd))
        throw InvalidArgument("pure dephasing rate must be >= 0");
}

double PhononEnvironment::thermal_frequency() const {
    return units::kBoltzmann * temperature / units::kHbar;
}

PhononCorrelation::PhononCorrelation(double dt, std::vector<cplx> values)
    : dt_(dt), values_(std::move(values)) {
    if (!(dt > 0.0)) throw InvalidArgument("phonon correlation table needs dt > 0");
}

PhononCorrelation PhononCorrelation::tabulate(const PhononEnvironment& env, double dt,
                                              std::size_t count) {
    std::vector<cplx> values(count);
    for (std::size_t k = 0; k < count; ++k)
        values[k] = phonon_correlation(env, dt * static_cast<double>(k));
    return PhononCorrelation(dt, std::move(values));
}

cplx PhononCorrelation::at_step(long k) const {
    const auto idx = static_cast<std::size_t>(k < 0 ? -k : k);
    if (idx >= values_.size())
        throw WindowError("time lag " + std::to_string(static_cast<double>(k) * dt_) +
                          " ps outside the tabulated phonon correlation range");
    return k < 0 ? std::conj(values_[idx]) : values_[idx];
}

double spectral_density(const PhononEnvironment& env, double nu) {
    if (nu < 0.0) throw InvalidArgument("spectral_density requires nu >= 0");
    return env.alpha * nu * nu * nu * std::exp(-nu * nu / (env.nu_c * env.nu_c));
}

double franck_condon(const PhononEnvironment& env) {
    env.validate();
    return std::exp(-0.5 * reorganisation_integral(env));
}

cplx phonon_correlation(const PhononEnvironment& env, double t) {
    env.validate();
    if (env.alpha == 0.0) return {0.0, 0.0};
    if (t == 0.0) return {reorganisation_integral(env), 0.0};

    const double w = env.thermal_frequency();
    const double nc2 = env.nu_c * env.nu_c;
    const double upper = kUpperCutoffFactor * env.nu_c;
    auto re = [&](double nu) {
        return env.alpha * nu_coth(nu, w) * std::exp(-nu * nu / nc2) * std::cos(nu * t);
    };
    auto im = [&](double nu) { return -env.alpha * nu * std::exp(-nu * nu / nc2) * std::sin(nu * t); };
    return {integrate_checked(re, upper, "phonon correlation (real part)"),
            integrate_checked(im, upper, "phonon correlation (imaginary part)")};
}

cplx sideband_correlator(const PhononEnvironment& env, double t) {
    const double b = franck_condon(env);
    return b * b * (std::exp(phonon_correlation(env, t)) - 1.0);
}

double enhanced_dephasing(const PhononEnvironment& env, double g, double kappa, double B) {
    env.validate();
    if (!(kappa > 0.0)) throw DegenerateError("enhanced_dephasing requires kappa > 0");
    const double gb = g * B;
    if (gb == 0.0 || env.alpha == 0.0) return env.gamma_pd;

    const double kt = units::kBoltzmann * env.temperature;
    const double x = kt > 0.0 ? gb / kt : INFINITY;
    const double coth = x > 40.0 ? 1.0 : 1.0 / std::tanh(x);
    const double j = spectral_density(env, 2.0 * gb / units::kHbar);  // ps⁻¹
    const double ratio = gb / kappa;
    return env.gamma_pd + units::to_ueV(2.0 * units::kPi * ratio * ratio * j * coth);
}

PhononEnvironment calibrate_alpha(const PhononEnvironment& base, double target_b4) {
    if (!(target_b4 > 0.0 && target_b4 <= 1.0))
        throw InvalidArgument("target B^4 must lie in (0, 1]");
    PhononEnvironment unit = base;
    unit.alpha = 1.0;
    // ln B is linear in α.
    const double per_alpha = reorganisation_integral(unit);
    PhononEnvironment out = base;
    out.alpha = -0.5 * std::log(target_b4) / per_alpha;
    return out;
}

}  // namespace fpcqed
