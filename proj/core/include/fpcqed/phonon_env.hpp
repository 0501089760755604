#pragma once

#include <complex>
#include <vector>

namespace fpcqed {

/// Longitudinal-acoustic phonon bath with super-ohmic spectral density J(ν) = αν³exp(−ν²/ν_c²).
struct PhononEnvironment {
    double alpha = 0.03;       // ps²
    double nu_c = 2.2;         // ps⁻¹
    double temperature = 4.2;  // K
    double gamma_pd = 0.0;     // pure dephasing γ (μeV)

    void validate() const;

    /// k_B·T/ħ in ps⁻¹.
    double thermal_frequency() const;
};

/// φ(t) sampled on a uniform grid t_k = k·dt, k = 0..n−1. φ(−t) = φ(t)*.
class PhononCorrelation {
public:
    PhononCorrelation() = default;
    PhononCorrelation(double dt, std::vector<std::complex<double>> values);

    static PhononCorrelation tabulate(const PhononEnvironment& env, double dt, std::size_t count);

    double dt() const { return dt_; }
    std::size_t size() const { return values_.size(); }
    double max_time() const { return values_.empty() ? 0.0 : dt_ * static_cast<double>(size() - 1); }
    const std::vector<std::complex<double>>& values() const { return values_; }

    /// Lookup at t = k·dt for any integer k with |k| < size(); throws WindowError otherwise.
    std::complex<double> at_step(long k) const;

private:
    double dt_ = 0.0;
    std::vector<std::complex<double>> values_;
};

/// J(ν) in ps⁻¹.
double spectral_density(const PhononEnvironment& env, double nu);

/// B = exp[−½∫₀^∞ dν J(ν)/ν² coth(ħν/(2k_BT))].
double franck_condon(const PhononEnvironment& env);

/// φ(t) = ∫₀^∞ dν J(ν)/ν² [coth(ħν/(2k_BT)) cos νt − i sin νt].
std::complex<double> phonon_correlation(const PhononEnvironment& env, double t);

/// B²(e^{φ(t)} − 1): the phonon-sideband part of the polaron correlation function.
std::complex<double> sideband_correlator(const PhononEnvironment& env, double t);

/// γ_tot = γ + 2π(gB/κ)²J(2gB/ħ)coth(gB/(k_BT)) in μeV.
double enhanced_dephasing(const PhononEnvironment& env, double g, double kappa, double B);

/// Solves for α so that B⁴ equals target_b4, holding ν_c and T fixed.
PhononEnvironment calibrate_alpha(const PhononEnvironment& base, double target_b4);

}  // namespace fpcqed
