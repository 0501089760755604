#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "fpcqed/errors.hpp"
#include "fpcqed/figures_of_merit.hpp"

using namespace fpcqed;

namespace {

TwoColourSpectrum emitter_spectrum(double gamma, double dephasing, const PhononEnvironment& env) {
    SystemConfig c;
    c.gammaB = gamma;
    c.kappa = 1.0;
    c.gamma_tot_pd = dephasing;
    c.n_max = 1;
    EmissionModel m(LindbladGenerator(c), QuantumState::excited_vacuum(1));
    return TwoColourSpectrum(std::make_shared<const DressedEmissionModel>(std::move(m), env), 1e6);
}

WaveguideCavity open_waveguide(double r1 = 0.0, double r2 = 0.0) {
    WaveguideCavity s;
    s.length = 0.19;
    s.n_eff = 2.5;
    s.gammaB0 = 1.0;
    s.mirror1.r = r1;
    s.mirror2.r = r2;
    s.omega_c = 1e6;
    return s;
}

const PhononEnvironment kNoPhonons{0.0, 2.2, 4.2, 0.0};
const PhononEnvironment kPhonons{0.03, 2.2, 4.2, 0.0};

}  // namespace

TEST(Indistinguishability, TransformLimitedEmitterIsPerfect) {
    const auto S = emitter_spectrum(1.0, 0.0, kNoPhonons);
    double err = -1.0;
    EXPECT_NEAR(indistinguishability_numeric(S, open_waveguide(), {}, &err), 1.0, 1e-4);
    EXPECT_GE(err, 0.0);
}

TEST(Indistinguishability, PureDephasingLaw) {
    for (double ratio : {0.1, 1.0, 10.0}) {
        const auto S = emitter_spectrum(1.0, ratio, kNoPhonons);
        EXPECT_NEAR(indistinguishability_numeric(S, open_waveguide()), 1.0 / (1.0 + 2.0 * ratio),
                    1e-3 / (1.0 + 2.0 * ratio))
            << ratio;
    }
}

TEST(Indistinguishability, OpaqueFilterIsDegenerate) {
    const auto S = emitter_spectrum(1.0, 0.0, kNoPhonons);
    EXPECT_THROW(indistinguishability_numeric(S, open_waveguide(0.0, 1.0)), DegenerateError);
}

TEST(Efficiency, PowerRatio) {
    const auto S = emitter_spectrum(2.0, 0.0, kNoPhonons);
    // Flat |G|² = 1: P_B/P_R = (Γ⁰/2)/Γ_R.
    EXPECT_NEAR(efficiency_numeric(S, open_waveguide(), 0.5), 0.5 / 1.0, 1e-6);
    EXPECT_NEAR(efficiency_numeric(S, open_waveguide(), 0.0), 1.0, 1e-12);
}

TEST(SidebandFraction, VanishesWithoutPhonons) {
    EXPECT_EQ(psb_filter_fraction(emitter_spectrum(1.0, 0.0, kNoPhonons), open_waveguide(1.0, 0.0)), 0.0);
}

TEST(SidebandFraction, FollowsFilterWeight) {
    const auto S = emitter_spectrum(1.0, 0.0, kPhonons);
    // |G|² = 1 everywhere without mirrors.
    EXPECT_NEAR(psb_filter_fraction(S, open_waveguide()), 0.25, 1e-6);
    // A short cavity with a perfect back mirror is nearly flat at |G|² = 4 across the sideband.
    const double F = psb_filter_fraction(S, open_waveguide(1.0, 0.0));
    EXPECT_GT(F, 0.99);
    EXPECT_LE(F, 1.0);
}

TEST(SidebandFraction, ResonantCavityCanExceedOne) {
    // The sideband is enhanced near resonance, where |G|² = 4(1 + r)/(1 − r) > 4.
    const auto S = emitter_spectrum(1.0, 0.0, kPhonons);
    EXPECT_GT(psb_filter_fraction(S, open_waveguide(1.0, 0.5)), 1.0);
}

TEST(Analytic, PurcellRate) {
    EXPECT_DOUBLE_EQ(purcell_rate(50.0, 200.0), 50.0);
    EXPECT_THROW(purcell_rate(1.0, 0.0), DegenerateError);
}

TEST(Analytic, IdealLimits) {
    AnalyticRates r;
    r.gammaB0 = 1.0;
    r.gammaB_star = 2.0;
    r.g = 5.0;
    r.kappa_star = 100.0;
    EXPECT_DOUBLE_EQ(indistinguishability_analytic(r), 1.0);
    EXPECT_DOUBLE_EQ(efficiency_analytic(r), 1.0);

    r.gamma_tot = 1.5;  // Γ_tot = 1 + 2 = 3
    EXPECT_NEAR(indistinguishability_analytic(r), 3.0 / 6.0, 1e-15);

    r.gamma_tot = 0.0;
    r.gammaR = 3.0;
    EXPECT_NEAR(efficiency_analytic(r), 3.0 / 6.0, 1e-15);
}

TEST(Analytic, SidebandTermsEnterThroughF) {
    AnalyticRates r;
    r.gammaB0 = 1.0;
    r.gammaB_star = 2.0;
    r.g = 5.0;
    r.kappa_star = 100.0;
    r.B = 0.9;
    r.F = 0.0;
    EXPECT_DOUBLE_EQ(indistinguishability_analytic(r), 1.0);
    r.F = 1.0;
    const double x = 3.0 * 0.81;
    const double zpl = x / (x + 2.0 * 0.19);
    EXPECT_NEAR(indistinguishability_analytic(r), zpl * zpl, 1e-15);
    r.gammaR = 1.0;
    EXPECT_NEAR(efficiency_analytic(r), (x + 0.38) / (x + 0.38 + 1.0), 1e-15);
}

TEST(FiguresOfMerit, BundleIsConsistent) {
    const auto S = emitter_spectrum(1.0, 0.2, kNoPhonons);
    const auto fom = figures_of_merit(S, open_waveguide(), 0.3);
    EXPECT_NEAR(fom.indistinguishability, 1.0 / 1.4, 1e-3);
    EXPECT_NEAR(fom.efficiency, fom.power_guided / (fom.power_guided + fom.power_radiation), 1e-15);
    EXPECT_GE(fom.efficiency, 0.0);
    EXPECT_LE(fom.efficiency, 1.0);
    EXPECT_EQ(fom.psb_fraction, 0.0);
}
