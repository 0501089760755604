#include <gtest/gtest.h>

#include <cmath>

#include "fpcqed/errors.hpp"
#include "fpcqed/phonon_env.hpp"
#include "fpcqed/pipeline.hpp"
#include "fpcqed/units.hpp"

using namespace fpcqed;

namespace {

constexpr double kPi = 3.14159265358979323846;

PhononEnvironment bath(double T) { return {0.03, 2.2, T, 0.0}; }

// Composite Simpson on [0, 10ν_c]; slow but independent of the library quadrature.
template <class F>
double simpson(F f, double upper, int n = 20000) {
    const double h = upper / n;
    double s = f(0.0) + f(upper);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
}

}  // namespace

TEST(Phonons, ZeroTemperatureFranckCondonClosedForm) {
    const auto env = bath(0.0);
    EXPECT_NEAR(franck_condon(env) / std::exp(-env.alpha * env.nu_c * env.nu_c / 4.0), 1.0, 1e-9);
}

TEST(Phonons, CorrelationAtOriginGivesFranckCondon) {
    for (double T : {0.0, 4.2, 30.0}) {
        const auto env = bath(T);
        const double B = franck_condon(env);
        EXPECT_NEAR(std::exp(-phonon_correlation(env, 0.0).real()) / (B * B), 1.0, 1e-9) << T;
        EXPECT_EQ(phonon_correlation(env, 0.0).imag(), 0.0);
    }
}

TEST(Phonons, ImaginaryPartClosedForm) {
    // ∫ αν e^{−ν²/ν_c²} sin νt dν = α√π ν_c³ t e^{−ν_c²t²/4}/4, independent of temperature.
    const auto env = bath(4.2);
    for (double t : {0.1, 0.5, 1.3, 3.0}) {
        const double expect = -env.alpha * std::sqrt(kPi) * std::pow(env.nu_c, 3) * t / 4.0 *
                              std::exp(-env.nu_c * env.nu_c * t * t / 4.0);
        EXPECT_NEAR(phonon_correlation(env, t).imag(), expect, 1e-10) << t;
    }
}

TEST(Phonons, RealPartAgainstSimpson) {
    const auto env = bath(10.0);
    const double w = env.thermal_frequency();
    for (double t : {0.2, 0.9}) {
        auto f = [&](double nu) {
            if (nu == 0.0) return env.alpha * 2.0 * w;
            return env.alpha * nu / std::tanh(nu / (2.0 * w)) * std::exp(-nu * nu / 4.84) * std::cos(nu * t);
        };
        EXPECT_NEAR(phonon_correlation(env, t).real(), simpson(f, 22.0), 1e-9) << t;
    }
}

TEST(Phonons, CorrelationDecaysAndIsConjugateSymmetric) {
    const auto env = bath(4.2);
    EXPECT_LT(std::abs(phonon_correlation(env, 20.0)), 1e-3 * std::abs(phonon_correlation(env, 0.0)));
    const auto table = PhononCorrelation::tabulate(env, 0.05, 40);
    EXPECT_EQ(table.at_step(-7), std::conj(table.at_step(7)));
    EXPECT_NEAR(table.max_time(), 1.95, 1e-12);
    EXPECT_THROW(table.at_step(40), WindowError);
    EXPECT_THROW(table.at_step(-41), WindowError);
}

TEST(Phonons, SidebandVanishesWithoutCoupling) {
    PhononEnvironment env = bath(4.2);
    env.alpha = 0.0;
    EXPECT_EQ(franck_condon(env), 1.0);
    EXPECT_EQ(sideband_correlator(env, 0.7), cplx(0.0));
    EXPECT_EQ(spectral_density(env, 1.0), 0.0);
}

TEST(Phonons, SidebandAtOriginIsOneMinusBSquared) {
    const auto env = bath(4.2);
    const double B = franck_condon(env);
    EXPECT_NEAR(sideband_correlator(env, 0.0).real(), 1.0 - B * B, 1e-12);
}

TEST(Phonons, CalibrationHitsTarget) {
    const auto env = calibrate_alpha(bath(4.2), 0.826);
    EXPECT_NEAR(std::pow(franck_condon(env), 4), 0.826, 1e-9);
    EXPECT_NEAR(env.alpha, kCalibratedAlpha, 1e-9);
    EXPECT_THROW(calibrate_alpha(bath(4.2), 0.0), InvalidArgument);
    EXPECT_THROW(calibrate_alpha(bath(4.2), 1.5), InvalidArgument);
}

TEST(Phonons, WarmerBathLowersFranckCondon) {
    EXPECT_GT(franck_condon(bath(1.0)), franck_condon(bath(20.0)));
}

TEST(Phonons, InvalidEnvironment) {
    EXPECT_THROW(franck_condon({-1.0, 2.2, 4.2, 0.0}), InvalidArgument);
    EXPECT_THROW(franck_condon({0.03, 0.0, 4.2, 0.0}), InvalidArgument);
    EXPECT_THROW(franck_condon({0.03, 2.2, -1.0, 0.0}), InvalidArgument);
    EXPECT_THROW(spectral_density(bath(4.2), -1.0), InvalidArgument);
}

TEST(Dephasing, EnhancedRate) {
    PhononEnvironment env = bath(4.2);
    env.gamma_pd = 0.2;
    EXPECT_DOUBLE_EQ(enhanced_dephasing(env, 0.0, 100.0, 0.95), 0.2);
    EXPECT_THROW(enhanced_dephasing(env, 10.0, 0.0, 0.95), DegenerateError);

    const double g = 30.0, kappa = 500.0, B = 0.95;
    const double gb = g * B;
    const double nu = 2.0 * gb / units::kHbar;
    const double J = env.alpha * nu * nu * nu * std::exp(-nu * nu / (env.nu_c * env.nu_c));
    const double coth = 1.0 / std::tanh(gb / (units::kBoltzmann * 4.2));
    const double expect = 0.2 + units::kHbar * 2.0 * kPi * (gb / kappa) * (gb / kappa) * J * coth;
    EXPECT_NEAR(enhanced_dephasing(env, g, kappa, B), expect, 1e-12 * expect);

    env.temperature = 0.0;
    EXPECT_GT(enhanced_dephasing(env, g, kappa, B), 0.2);
}
