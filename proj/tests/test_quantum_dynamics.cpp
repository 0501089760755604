#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "fpcqed/errors.hpp"
#include "fpcqed/quantum_dynamics.hpp"
#include "fpcqed/units.hpp"

using namespace fpcqed;

namespace {

SystemConfig jc(double g, double kappa, double gamma, double dephasing = 0.0, int n_max = 2) {
    SystemConfig c;
    c.g = g;
    c.kappa = kappa;
    c.gammaB = gamma;
    c.gamma_tot_pd = dephasing;
    c.n_max = n_max;
    return c;
}

std::vector<double> uniform(double dt, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = dt * static_cast<double>(i);
    return t;
}

double excited_population(const LindbladGenerator& gen, const QuantumState& s) {
    return s.expectation(gen.sigma().adjoint() * gen.sigma()).real();
}

}  // namespace

TEST(Lindblad, GeneratorPreservesTrace) {
    const LindbladGenerator gen(jc(40.0, 80.0, 1.0, 3.0, 3));
    EXPECT_LT(gen.trace_defect(), 1e-14);
    EXPECT_EQ(gen.space().dim(), 8);
    EXPECT_DOUBLE_EQ(gen.dephasing_dissipator_rate(), 6.0);
}

TEST(Lindblad, InvariantsOverManySteps) {
    const LindbladGenerator gen(jc(40.0, 80.0, 1.0, 3.0, 3));
    const auto states = propagate(gen, QuantumState::excited_vacuum(3), uniform(0.05, 1001));
    ASSERT_EQ(states.size(), 1001u);
    for (const auto& s : states) {
        EXPECT_NEAR(s.trace().real(), 1.0, 1e-10);
        EXPECT_NEAR(s.trace().imag(), 0.0, 1e-12);
        EXPECT_LT(s.hermiticity_error(), 1e-12);
        EXPECT_GT(s.min_eigenvalue(), -1e-10);
    }
}

TEST(Lindblad, BareEmitterDecaysExponentially) {
    const double gamma = 2.0;
    const LindbladGenerator gen(jc(0.0, 10.0, gamma));
    const auto t = uniform(5.0, 400);
    const auto states = propagate(gen, QuantumState::excited_vacuum(2), t);
    for (std::size_t i = 0; i < t.size(); i += 13)
        EXPECT_NEAR(excited_population(gen, states[i]), std::exp(-gamma * t[i] / units::kHbar), 1e-9);
}

TEST(Lindblad, VacuumRabiOscillation) {
    SystemConfig c = jc(25.0, 0.0, 0.0);
    c.B = 0.9;
    const LindbladGenerator gen(c);
    const auto t = uniform(0.4, 200);
    const auto states = propagate(gen, QuantumState::excited_vacuum(2), t);
    for (std::size_t i = 0; i < t.size(); i += 7) {
        const double phase = c.g * c.B * t[i] / units::kHbar;
        EXPECT_NEAR(excited_population(gen, states[i]), std::cos(phase) * std::cos(phase), 1e-9);
    }
}

TEST(Lindblad, InvalidConfigurations) {
    EXPECT_THROW(LindbladGenerator(jc(1.0, 1.0, 1.0, 0.0, 0)), TruncationError);
    EXPECT_THROW(LindbladGenerator(jc(1.0, -1.0, 1.0)), InvalidArgument);
    SystemConfig c = jc(1.0, 1.0, 1.0);
    c.B = 0.0;
    EXPECT_THROW(LindbladGenerator{c}, InvalidArgument);
    const LindbladGenerator gen(jc(1.0, 1.0, 1.0));
    EXPECT_THROW(propagate(gen, QuantumState::excited_vacuum(3), uniform(1.0, 3)), InvalidArgument);
    const std::vector<double> bad = {0.0, 1.0, 0.5};
    EXPECT_THROW(propagate(gen, QuantumState::excited_vacuum(2), bad), InvalidArgument);
}

TEST(Regression, DephasedEmitterCorrelator) {
    const double gamma = 1.5, dephasing = 0.7;
    const LindbladGenerator gen(jc(0.0, 5.0, gamma, dephasing));
    const auto t = uniform(20.0, 60);
    const auto c = regression_correlator(gen, QuantumState::excited_vacuum(2), t);
    EXPECT_LT(c.hermiticity_error(), 1e-14);
    for (std::size_t a = 0; a < t.size(); a += 7)
        for (std::size_t b = 0; b <= a; b += 5) {
            const double tau = t[a] - t[b];
            const double expect = std::exp(-gamma * t[b] / units::kHbar) *
                                  std::exp(-(0.5 * gamma + dephasing) * tau / units::kHbar);
            EXPECT_NEAR(c.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)).real(), expect, 1e-10);
        }
    const std::vector<double> ragged = {0.0, 1.0, 2.5};
    EXPECT_THROW(regression_correlator(gen, QuantumState::excited_vacuum(2), ragged), InvalidArgument);
}

TEST(Regression, PhononDressingSplitsZeroPhononAndSideband) {
    const LindbladGenerator gen(jc(0.0, 5.0, 20.0));
    const auto c = regression_correlator(gen, QuantumState::excited_vacuum(2), uniform(0.1, 30));
    const PhononEnvironment env{0.03, 2.2, 4.2, 0.0};
    const auto d = dress_with_phonons(c, env);
    const double B = franck_condon(env);
    EXPECT_NEAR(d.zpl.values(0, 0).real(), B * B, 1e-12);
    // B²e^{φ(0)} = 1, so equal-time emission is unchanged and the sideband holds 1 − B².
    EXPECT_NEAR(d.psb.values(0, 0).real(), 1.0 - B * B, 1e-12);
    EXPECT_NEAR(d.total.values(5, 5).real(), c.values(5, 5).real(), 1e-12);
    EXPECT_LT((d.total.values - d.zpl.values - d.psb.values).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(d.total.hermiticity_error(), 1e-12);
    const auto table = PhononCorrelation::tabulate(env, 0.2, 30);
    EXPECT_THROW(dress_with_phonons(c, table, B), InvalidArgument);
}

TEST(Emission, IntegratedPopulationIsLifetime) {
    const double gamma = 4.0;
    const EmissionModel m(LindbladGenerator(jc(0.0, 3.0, gamma)), QuantumState::excited_vacuum(2));
    EXPECT_NEAR(m.integrated_population(), 1.0 / gamma, 1e-12);
}

TEST(Emission, PurcellEnhancedLifetime) {
    // Weak coupling: the emitter decays at Γ + 4g²/κ.
    const double g = 2.0, kappa = 400.0, gamma = 0.5;
    const EmissionModel m(LindbladGenerator(jc(g, kappa, gamma)), QuantumState::excited_vacuum(2));
    EXPECT_NEAR(m.integrated_population() * (gamma + 4.0 * g * g / kappa), 1.0, 1e-3);
}

TEST(Emission, KernelMatchesResolventTransform) {
    // ∫₀^∞ e^{−zτ} K(τ) dτ = u(z), checked with trapezoid sums over a long window.
    const EmissionModel m(LindbladGenerator(jc(10.0, 60.0, 2.0, 1.0)), QuantumState::excited_vacuum(2));
    const double dt = 0.02;
    const std::size_t n = 100000;
    const auto kernel = m.emission_kernel(dt, n);
    const double omega = 12.0;
    Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(m.excited_size());
    for (std::size_t k = 0; k < n; ++k) {
        const double tau = dt * static_cast<double>(k);
        const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
        acc += w * (dt / units::kHbar) * std::polar(1.0, -omega * tau / units::kHbar) * kernel[k];
    }
    const auto u = m.emission_resolvent(cplx(0.0, omega));
    EXPECT_LT((acc - u).cwiseAbs().maxCoeff(), 1e-4 * u.cwiseAbs().maxCoeff());
}

TEST(Emission, SchurBasisIsConsistent) {
    const EmissionModel m(LindbladGenerator(jc(30.0, 50.0, 2.0, 5.0)), QuantumState::excited_vacuum(2));
    const cplx s(0.5, 7.0);
    const Eigen::VectorXcd direct = m.population_transform(s);
    const Eigen::VectorXcd schur = m.excited_basis() * m.population_transform_schur(s);
    EXPECT_LT((direct - schur).cwiseAbs().maxCoeff(), 1e-12 * direct.cwiseAbs().maxCoeff());
}

TEST(Emission, RequiresDecayingCavity) {
    // Uncoupled and lossless, the one-photon states never decay.
    EXPECT_THROW(EmissionModel(LindbladGenerator(jc(0.0, 0.0, 1.0)), QuantumState::excited_vacuum(2)),
                 DegenerateError);
}

TEST(Emission, SingleExcitationIgnoresTruncation) {
    const EmissionModel small(LindbladGenerator(jc(30.0, 50.0, 2.0, 5.0, 2)), QuantumState::excited_vacuum(2));
    const EmissionModel large(LindbladGenerator(jc(30.0, 50.0, 2.0, 5.0, 3)), QuantumState::excited_vacuum(3));
    EXPECT_NEAR(small.integrated_population(), large.integrated_population(), 1e-6 * large.integrated_population());
    const auto a = small.emission_resolvent(cplx(0.0, 4.0)) * small.population_transform(cplx(0.0, 1.0));
    const auto b = large.emission_resolvent(cplx(0.0, 4.0)) * large.population_transform(cplx(0.0, 1.0));
    EXPECT_LT(std::abs(a(0) - b(0)), 1e-6 * std::abs(b(0)));
}
