#pragma once

#include <complex>
#include <vector>

namespace fpcqed {

/// A lossless waveguide mirror. The transmittivity is fixed by t² = 1 − r².
struct MirrorSpec {
    double r = 0.0;     // amplitude reflectivity
    double phi0 = 0.0;  // reflection phase (rad)

    double t() const;
    void validate() const;
};

/// A guided mode family other than the one of interest (enters the radiation reservoir).
struct ModeFamily {
    double gamma0 = 0.0;  // bare emission rate into the family (μeV)
    double r1 = 0.0;
    double r2 = 0.0;
    double n_eff = 1.0;

    void validate() const;
};

/// Mirror-terminated waveguide with the emitter at the cavity midpoint.
///
/// The single-pass phase seen from the emitter is n_eff·L·(ħω − ħω_c)/(ħc) + φ₀, so
/// ħω_c is always an antinode resonance of the guided mode.
struct WaveguideCavity {
    double length = 1.0;     // L (μm)
    double n_eff = 2.5;
    double gammaB0 = 0.3;    // Γ_B⁰ (μeV)
    double gammaRM = 0.0;    // Γ_RM (μeV)
    MirrorSpec mirror1;
    MirrorSpec mirror2;
    std::vector<ModeFamily> extra_families;
    double omega_c = 1.0e6;  // ħω_c (μeV)

    void validate() const;

    /// Fabry-Pérot resonance spacing πħc/(n_eff·L).
    double free_spectral_range() const;

    /// Period of ldos_guided in ħω. Adjacent Fabry-Pérot resonances alternate between a
    /// field antinode and a node at the midpoint, so this is twice the resonance spacing.
    double ldos_period() const;

    /// Dimensionless detuning ω̃ = L·n_eff·(ħω − ħω_c)/(ħc).
    double reduced_detuning(double omega) const;
};

/// Extracted quantities of the Lorentzian-plus-background approximation of the guided LDOS.
struct CavityParams {
    double gammaB = 0.0;        // Γ_B (μeV)
    double Lc = 0.0;            // L_c (μeV)
    double kappa_reduced = 0.0; // κ̃ (dimensionless)
    double kappa = 0.0;         // κ (μeV)
    double g = 0.0;             // (μeV)
    double g_max = 0.0;
    double kappa_max = 0.0;
    double fit_residual = 0.0;  // relative RMS residual over the fit window
    int iterations = 0;

    /// Peak of the fitted Lorentzian, L_c/κ̃ (μeV). Equals the resonant Purcell rate 4g²/κ.
    double peak_height() const { return kappa_reduced > 0.0 ? Lc / kappa_reduced : 0.0; }
};

struct LimitValues {
    double g_max = 0.0;      // μeV
    double kappa_max = 0.0;  // μeV
};

/// Rates for a perfect back mirror (r₁ = 1) derived from the symmetric r₁ = r₂ = r₂ cavity.
struct RenormalizedRates {
    CavityParams symmetric;  // decomposition of the symmetric cavity
    double gammaB0_star = 0.0;  // 2Γ_B⁰
    double gammaB_star = 0.0;   // 2Γ_B
    double kappa_star = 0.0;    // κ/2
    double g = 0.0;             // unchanged: L_c, L and n_eff are the same
    double gammaR = 0.0;
    double beta = 0.0;          // Γ_B⁰/(Γ_B⁰ + Γ_R)
    double beta_star = 0.0;     // 2β/(β + 1)
};

struct DecomposeOptions {
    int samples = 2001;
    int max_iterations = 400;
    double tolerance = 1e-10;
};

/// r·exp(i[φ₀ + n_eff·ω·L/(ħc)]).
std::complex<double> effective_reflectivity(const MirrorSpec& mirror, double omega, double length,
                                            double n_eff);

/// Re{(1 + z₁)(1 + z₂)/(1 − z₁z₂)}. Throws PoleError when |1 − z₁z₂| < 1e-12.
double fabry_perot_factor(std::complex<double> z1, std::complex<double> z2, int family = -1);

/// Guided-mode LDOS, Γ_B⁰·Re{[1 + r̃₁][1 + r̃₂]/[1 − r̃₁r̃₂]} (μeV).
double ldos_guided(const WaveguideCavity& structure, double omega);

/// Radiation-reservoir LDOS: Γ_RM plus one Fabry-Pérot term per extra mode family.
double ldos_radiation(const WaveguideCavity& structure, double omega);

/// Γ_R = L_R(ω_X).
double radiation_rate(const WaveguideCavity& structure, double omega_X);

/// Cavity filter [1 + r̃₁]t₂/[1 − r̃₁r̃₂].
std::complex<double> filter_function(const WaveguideCavity& structure, double omega);

LimitValues limit_values(const WaveguideCavity& structure);

/// g = √(ħc·L_c/(4·L·n_eff)).
double coupling_from_weight(double Lc, double length, double n_eff);

/// Least-squares decomposition of ldos_guided into Γ_B + L_c·κ̃/(κ̃² + ω̃²) over one LDOS period
/// centred on ω_c.
CavityParams decompose_ldos(const WaveguideCavity& structure, const DecomposeOptions& options = {});

/// κ̃ of the best Lorentzian-plus-background fit to the first-order LDOS modulation cos ω̃.
/// This is the r → 0 limit of decompose_ldos.
double vanishing_mirror_linewidth();

/// Requires mirror1.r == 1.
RenormalizedRates back_mirror_renormalize(const WaveguideCavity& structure,
                                          const DecomposeOptions& options = {});

double renormalized_beta(double beta);

}  // namespace fpcqed
