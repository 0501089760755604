#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fpcqed/photonic_structure.hpp"
#include "fpcqed/quadrature.hpp"
#include "fpcqed/quantum_dynamics.hpp"

namespace fpcqed {

enum class SpectrumPart { Total, ZeroPhonon, Sideband };

std::string to_string(SpectrumPart part);

struct SpectrumOptions {
    double half_span = 0.0;        // μeV around ω_X; 0 picks one from the phonon cutoff
    double sideband_step = 2.0;    // μeV spacing of the tabulated sideband kernel
};

/// Two-colour spectrum S(ω, ω′) = ∫∫ e^{−i(ωt − ω′t′)} C(t, t′) dt dt′, with t in ħ/μeV and
/// ω, ω′ in μeV measured from the carrier ħω_X. S is Hermitian and its diagonal integrates
/// to 2π·∫⟨σ†σ⟩dt.
///
/// Values are computed on demand from the resolvents of the emission model, so any pair of
/// frequencies can be evaluated without a fixed grid.
class TwoColourSpectrum {
public:
    TwoColourSpectrum(std::shared_ptr<const DressedEmissionModel> model, double omega_X,
                      const SpectrumOptions& options = {});

    /// All frequencies used by one row S(ω, ·), with ω fixed.
    class Row {
    public:
        cplx operator()(double omega_prime) const;

    private:
        friend class TwoColourSpectrum;
        const TwoColourSpectrum* owner_ = nullptr;
        double omega_ = 0.0;
        Eigen::RowVectorXcd zpl_, psb_;
    };

    Row row(double omega) const;
    cplx operator()(double omega, double omega_prime) const { return row(omega)(omega_prime); }
    double diagonal(double omega) const;

    SpectrumPart part() const { return part_; }
    TwoColourSpectrum restricted(SpectrumPart part) const;

    double carrier() const { return omega_X_; }
    double half_span() const { return half_span_; }
    double franck_condon() const { return model_->franck_condon(); }

    /// Peaks of S(ω, ·) in ω′ that do not move with ω (centre, width).
    const std::vector<GridFeature>& emission_features() const { return emission_features_; }
    /// Peaks of S(ω, ω + Δ) in Δ, symmetric about 0.
    const std::vector<GridFeature>& offset_features() const { return offset_features_; }

    /// Break points for integrating S(ω, ·) over ω′ ∈ [−span, span].
    std::vector<double> row_breaks(double omega, std::span<const GridFeature> extra = {}) const;
    /// Break points for integrating diagonal quantities over ω.
    std::vector<double> diagonal_breaks(std::span<const GridFeature> extra = {}) const;

    Eigen::MatrixXcd sample(std::span<const double> omega, std::span<const double> omega_prime) const;

    /// ∫ S(ω, ω) dω over the truncated span, including the Lorentzian tail estimate.
    double diagonal_integral() const;

private:
    Eigen::RowVectorXcd sideband_row(double omega) const;

    std::shared_ptr<const DressedEmissionModel> model_;
    SpectrumPart part_ = SpectrumPart::Total;
    double omega_X_ = 0.0;
    double half_span_ = 0.0;
    double table_lo_ = 0.0;
    double table_step_ = 0.0;
    std::vector<Eigen::RowVectorXcd> sideband_table_;  // Schur-basis sideband kernel
    Eigen::MatrixXcd basis_;
    std::vector<GridFeature> emission_features_;
    std::vector<GridFeature> offset_features_;
};

TwoColourSpectrum two_colour_spectrum(const DressedEmissionModel& model, double omega_X,
                                      const SpectrumOptions& options = {});

struct SpectrumComponents {
    TwoColourSpectrum zpl;
    TwoColourSpectrum psb;
};

SpectrumComponents decompose_spectrum(const TwoColourSpectrum& spectrum);

/// Feature of the cavity filter |G|² relative to the carrier, or nothing when r₁r₂ = 0.
std::vector<GridFeature> filter_features(const WaveguideCavity& structure, double omega_X);

/// P_B = (Γ_B⁰/2)·∫|G(ω)|² S(ω, ω) dω. With S in μeV⁻², powers carry a factor 2π relative to
/// emission probabilities; only their ratios are used.
double power_guided(const TwoColourSpectrum& spectrum, const WaveguideCavity& structure);

/// P_R = Γ_R·∫S(ω, ω) dω.
double power_radiation(const TwoColourSpectrum& spectrum, double gammaR);

/// Spectrum sampled on an explicit grid.
struct DenseSpectrum {
    std::vector<double> omega;  // μeV from the carrier
    Eigen::MatrixXcd values;    // S(ω_i, ω_j)
    double carrier = 0.0;

    double hermiticity_error() const;
};

/// Double Fourier transform of a sampled correlator by trapezoid quadrature in time.
/// Throws WindowError unless |C| has decayed below window_tol·max|C| at the edge of the window.
DenseSpectrum transform_correlator(const TwoTimeCorrelator& c, std::span<const double> omega,
                                   double omega_X = 0.0, double window_tol = 1e-6);

DenseSpectrum sample_spectrum(const TwoColourSpectrum& spectrum, std::span<const double> omega);

}  // namespace fpcqed
