#pragma once

#include "fpcqed/photonic_structure.hpp"
#include "fpcqed/spectra.hpp"

namespace fpcqed {

struct FigureOfMerit {
    double indistinguishability = 0.0;
    double efficiency = 0.0;
    double psb_fraction = 0.0;  // F
    double power_guided = 0.0;  // P_B
    double power_radiation = 0.0;  // P_R
    double quadrature_error = 0.0;  // estimated relative error of I
};

/// Rates entering the weak-coupling closed forms (μeV).
struct AnalyticRates {
    double gammaB0 = 0.0;     // raw Γ_B⁰ of the guided mode
    double gammaB_star = 0.0; // background rate seen with the back mirror
    double gammaR = 0.0;
    double g = 0.0;
    double kappa_star = 0.0;
    double gamma_tot = 0.0;   // total pure dephasing
    double B = 1.0;
    double F = 0.0;           // fraction of the sideband passed by the filter
};

struct FomOptions {
    // The inner integral must be tighter than the outer one, or its noise stalls the outer
    // error estimate.
    double outer_rel_tol = 1e-5;
    double inner_rel_tol = 1e-7;
    int max_outer_evaluations = 6000;
    int max_inner_evaluations = 20000;
};

/// I = ∫∫|G*(ω)G(ω′)S(ω, ω′)|² / (∫|G(ω)|²S(ω, ω)dω)².
double indistinguishability_numeric(const TwoColourSpectrum& S, const WaveguideCavity& structure,
                                    const FomOptions& options = {}, double* rel_error = nullptr);

/// E = P_B/(P_B + P_R).
double efficiency_numeric(const TwoColourSpectrum& S, const WaveguideCavity& structure, double gammaR);

/// F = ∫|G|²S_PSB / (4∫S_PSB); zero without a phonon sideband.
double psb_filter_fraction(const TwoColourSpectrum& S, const WaveguideCavity& structure);

/// All numeric figures of merit from one spectrum.
FigureOfMerit figures_of_merit(const TwoColourSpectrum& S, const WaveguideCavity& structure,
                               double gammaR, const FomOptions& options = {});

/// Γ_cav = 4g²/κ*.
double purcell_rate(double g, double kappa_star);

double indistinguishability_analytic(const AnalyticRates& r);
double efficiency_analytic(const AnalyticRates& r);

}  // namespace fpcqed
