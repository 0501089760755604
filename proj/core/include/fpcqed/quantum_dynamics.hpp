#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "fpcqed/phonon_env.hpp"

namespace fpcqed {

using cplx = std::complex<double>;

/// Parameters of the emitter ⊗ truncated-cavity master equation. Rates in μeV.
///
/// Dynamics are expressed in the frame rotating at ω_X, so ω_X only labels the carrier;
/// the cavity sits at −detuning.
struct SystemConfig {
    double omega_X = 0.0;
    double detuning = 0.0;      // ħ(ω_X − ω_c)
    double g = 0.0;
    double kappa = 0.0;
    double gammaB = 0.0;
    double gammaR = 0.0;
    double gamma_tot_pd = 0.0;  // pure dephasing; enters as D[σ†σ] with rate 2γ
    double B = 1.0;             // Franck-Condon factor; the coupling is renormalized to g·B
    int n_max = 2;

    void validate() const;
    double emitter_decay() const { return gammaB + gammaR; }
};

/// Basis |s, n⟩ with s ∈ {g, e}, n = 0..n_max; index 2n + s.
struct HilbertSpace {
    int n_max = 2;

    Eigen::Index dim() const { return 2 * (n_max + 1); }
    Eigen::Index index(bool excited, int photons) const { return 2 * photons + (excited ? 1 : 0); }
    int excitations(Eigen::Index i) const { return static_cast<int>(i / 2 + i % 2); }
};

class QuantumState {
public:
    QuantumState() = default;
    explicit QuantumState(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {}

    /// |e⟩⟨e| ⊗ |0⟩⟨0|.
    static QuantumState excited_vacuum(int n_max);

    const Eigen::MatrixXcd& matrix() const { return rho_; }
    Eigen::Index dim() const { return rho_.rows(); }

    cplx trace() const { return rho_.trace(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;
    cplx expectation(const Eigen::MatrixXcd& op) const { return (op * rho_).trace(); }

private:
    Eigen::MatrixXcd rho_;
};

/// Column-stacked Lindblad superoperator, in μeV: d vec(ρ)/dt = (L/ħ) vec(ρ).
class LindbladGenerator {
public:
    explicit LindbladGenerator(const SystemConfig& config);

    const SystemConfig& config() const { return config_; }
    const HilbertSpace& space() const { return space_; }
    const Eigen::MatrixXcd& superoperator() const { return L_; }
    const Eigen::MatrixXcd& hamiltonian() const { return H_; }
    const Eigen::MatrixXcd& sigma() const { return sigma_; }
    const Eigen::MatrixXcd& annihilation() const { return a_; }

    /// Largest |Σ_i L(ii, ·)|: zero for a trace-preserving generator.
    double trace_defect() const;

    /// exp(L·dt/ħ).
    Eigen::MatrixXcd propagator(double dt_ps) const;

    /// Total decay rates named by dissipator, for structural checks.
    double sigma_dissipator_rate() const { return config_.emitter_decay(); }
    double cavity_dissipator_rate() const { return config_.kappa; }
    double dephasing_dissipator_rate() const { return 2.0 * config_.gamma_tot_pd; }

private:
    SystemConfig config_;
    HilbertSpace space_;
    Eigen::MatrixXcd sigma_, a_, H_, L_;
};

LindbladGenerator build_generator(const SystemConfig& config);

/// States at each time of an ascending grid starting at 0.
std::vector<QuantumState> propagate(const LindbladGenerator& gen, const QuantumState& rho0,
                                    std::span<const double> t_grid);

/// C(t_a, t_b) = ⟨σ†(t_a)σ(t_b)⟩ on a uniform grid (rotating frame).
struct TwoTimeCorrelator {
    std::vector<double> times;
    Eigen::MatrixXcd values;

    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
    std::size_t size() const { return times.size(); }
    /// Largest deviation from C(t, t′) = C*(t′, t).
    double hermiticity_error() const;
};

/// Quantum regression: C(t + τ, t) = Tr[σ† e^{Lτ}(σρ(t))]. The grid must be uniform and start at 0.
TwoTimeCorrelator regression_correlator(const LindbladGenerator& gen, const QuantumState& rho0,
                                        std::span<const double> times);

struct DressedCorrelator {
    TwoTimeCorrelator total;
    TwoTimeCorrelator zpl;  // B²·C
    TwoTimeCorrelator psb;  // B²(e^{φ} − 1)·C
};

/// C_full(t, t′) = C(t, t′)·B²·e^{φ(t − t′)}. The table step must equal the correlator step.
DressedCorrelator dress_with_phonons(const TwoTimeCorrelator& c, const PhononCorrelation& phi,
                                     double B);
DressedCorrelator dress_with_phonons(const TwoTimeCorrelator& c, const PhononEnvironment& env);

/// Resolvent representation of the single-excitation emission correlator.
///
/// Splits operator space into the excited sector (|x⟩⟨y| with equal excitation number ≥ 1)
/// and the lowered sector (|x⟩⟨y| with one excitation fewer on the left). With ρ̂(s) the Laplace
/// transform of the excited part of ρ(t),
///   ∫∫_{t ≥ t′} e^{−i(ωt − ω′t′)} C(t, t′) = u(iω) · ρ̂(i(ω − ω′)),
///   u(z) = Tr[σ† (z − L_low)⁻¹ σ(·)].
/// Both resolvents use a Schur factorization, so exceptional points are harmless.
/// Frequencies in μeV; times in units of ħ/μeV.
class EmissionModel {
public:
    EmissionModel(const LindbladGenerator& gen, const QuantumState& rho0);

    Eigen::Index excited_size() const { return Q_exc_.rows(); }
    Eigen::Index lowered_size() const { return Q_low_.rows(); }

    /// (s − L_exc)⁻¹ρ₀ restricted to the excited sector.
    Eigen::VectorXcd population_transform(cplx s) const;
    /// Row vector Tr[σ†(z − L_low)⁻¹σ(·)] acting on the excited sector.
    Eigen::RowVectorXcd emission_resolvent(cplx z) const;
    /// Row vector Tr[σ† e^{L_low τ/ħ} σ(·)] for τ in ps.
    std::vector<Eigen::RowVectorXcd> emission_kernel(double dtau_ps, std::size_t count) const;

    /// The same two resolvents expressed in the Schur basis Q of the excited sector, so that
    /// population_transform(s) = Q·population_transform_schur(s).
    Eigen::VectorXcd population_transform_schur(cplx s) const;
    Eigen::RowVectorXcd emission_resolvent_schur(cplx z) const;
    const Eigen::MatrixXcd& excited_basis() const { return Q_exc_; }

    /// Eigenvalues of the two sector generators (μeV), from the Schur diagonals.
    Eigen::VectorXcd excited_eigenvalues() const { return T_exc_.diagonal(); }
    Eigen::VectorXcd lowered_eigenvalues() const { return T_low_.diagonal(); }

    /// ∫₀^∞ ⟨σ†σ⟩ dt in units of ħ/μeV.
    double integrated_population() const;

private:
    Eigen::MatrixXcd Q_exc_, T_exc_, Q_low_, T_low_;
    Eigen::MatrixXcd L_low_;
    Eigen::VectorXcd rho0_q_;     // Q_exc^H ρ₀
    Eigen::RowVectorXcd trace_q_; // (Tr[σ†·] row) · Q_low
    Eigen::RowVectorXcd trace_row_;
    Eigen::MatrixXcd lower_;      // σ(·): excited → lowered
    Eigen::MatrixXcd lower_q_;    // Q_low^H · lower
    Eigen::MatrixXcd lower_qq_;   // Q_low^H · lower · Q_exc
    Eigen::RowVectorXcd excited_population_row_;  // ⟨σ†σ⟩ on the excited sector
};

/// Emission model together with the tabulated phonon-sideband factor f(τ) = B²(e^{φ(τ)} − 1).
class DressedEmissionModel {
public:
    DressedEmissionModel(EmissionModel model, const PhononEnvironment& env,
                         double dtau_ps = 0.01, double max_tau_ps = 150.0);

    const EmissionModel& bare() const { return model_; }
    double franck_condon() const { return B_; }
    double tau_step() const { return dtau_; }
    /// ħν_c in μeV, or 0 without phonons.
    double phonon_cutoff() const { return cutoff_; }
    std::size_t tau_count() const { return sideband_.size(); }
    const std::vector<cplx>& sideband() const { return sideband_; }

    /// B²·u(iω): the zero-phonon-line kernel.
    Eigen::RowVectorXcd zpl_kernel(double omega) const;
    /// ∫₀^∞ f(τ) e^{−iωτ/ħ} Tr[σ†e^{L_low τ/ħ}σ(·)] dτ/ħ.
    Eigen::RowVectorXcd psb_kernel(double omega) const;

private:
    EmissionModel model_;
    double B_ = 1.0;
    double dtau_ = 0.01;
    double cutoff_ = 0.0;
    std::vector<cplx> sideband_;                  // f(τ_k)
    std::vector<Eigen::RowVectorXcd> weighted_;   // Simpson weight · f(τ_k) · kernel(τ_k)/ħ
};

DressedEmissionModel dress_with_phonons(const EmissionModel& model, const PhononEnvironment& env);

}  // namespace fpcqed
