#include "fpcqed/quantum_dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

#include "fpcqed/errors.hpp"
#include "fpcqed/units.hpp"

namespace fpcqed {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::RowVectorXcd;
using Eigen::VectorXcd;

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Column-stacked vec(ρ) → vec(c ρ c† − ½{c†c, ρ}).
MatrixXcd dissipator(const MatrixXcd& c) {
    const Index d = c.rows();
    const MatrixXcd id = MatrixXcd::Identity(d, d);
    const MatrixXcd cdc = c.adjoint() * c;
    return kron(c.conjugate(), c) - 0.5 * kron(id, cdc) - 0.5 * kron(cdc.transpose(), id);
}

Eigen::Map<const VectorXcd> as_vec(const MatrixXcd& m) { return {m.data(), m.size()}; }

MatrixXcd as_matrix(const VectorXcd& v, Index d) { return Eigen::Map<const MatrixXcd>(v.data(), d, d); }

void check_uniform(std::span<const double> times) {
    if (times.empty()) throw InvalidArgument("time grid is empty");
    if (times.front() != 0.0) throw InvalidArgument("time grid must start at 0");
    if (times.size() < 2) return;
    const double dt = times[1] - times[0];
    if (!(dt > 0.0)) throw InvalidArgument("time grid must be ascending");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * std::max(dt, times[i]))
            throw InvalidArgument("regression_correlator requires a uniform time grid");
}

// (s − T)⁻¹ b for upper-triangular T.
VectorXcd upper_solve(const MatrixXcd& T, cplx s, const VectorXcd& b) {
    const Index n = T.rows();
    VectorXcd y(n);
    for (Index i = n - 1; i >= 0; --i) {
        cplx acc = b[i];
        for (Index k = i + 1; k < n; ++k) acc += T(i, k) * y[k];
        y[i] = acc / (s - T(i, i));
    }
    return y;
}

// c (z − T)⁻¹ for upper-triangular T and row vector c.
RowVectorXcd row_solve(const MatrixXcd& T, cplx z, const RowVectorXcd& c) {
    const Index n = T.rows();
    RowVectorXcd x(n);
    for (Index i = 0; i < n; ++i) {
        cplx acc = c[i];
        for (Index k = 0; k < i; ++k) acc += x[k] * T(k, i);
        x[i] = acc / (z - T(i, i));
    }
    return x;
}

void require_decay(const MatrixXcd& T, const char* sector) {
    for (Index i = 0; i < T.rows(); ++i)
        if (!(T(i, i).real() < 0.0))
            throw DegenerateError(std::string("the ") + sector +
                                  " sector has a non-decaying mode; at least one decay channel "
                                  "must reach every excited state");
}

}  // namespace

void SystemConfig::validate() const {
    if (n_max < 1) throw TruncationError("cavity truncation n_max must be >= 1");
    for (double rate : {g, kappa, gammaB, gammaR, gamma_tot_pd})
        if (!(rate >= 0.0) || !std::isfinite(rate))
            throw InvalidArgument("system rates must be finite and >= 0");
    if (!std::isfinite(detuning) || !std::isfinite(omega_X))
        throw InvalidArgument("frequencies must be finite");
    if (!(B > 0.0 && B <= 1.0)) throw InvalidArgument("Franck-Condon factor must lie in (0, 1]");
}

QuantumState QuantumState::excited_vacuum(int n_max) {
    HilbertSpace hs{n_max};
    MatrixXcd rho = MatrixXcd::Zero(hs.dim(), hs.dim());
    const Index e0 = hs.index(true, 0);
    rho(e0, e0) = 1.0;
    return QuantumState(std::move(rho));
}

double QuantumState::hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }

double QuantumState::min_eigenvalue() const {
    const MatrixXcd h = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

LindbladGenerator::LindbladGenerator(const SystemConfig& config) : config_(config) {
    config_.validate();
    space_ = HilbertSpace{config_.n_max};
    const Index d = space_.dim();

    sigma_ = MatrixXcd::Zero(d, d);
    a_ = MatrixXcd::Zero(d, d);
    for (int n = 0; n <= config_.n_max; ++n) {
        sigma_(space_.index(false, n), space_.index(true, n)) = 1.0;
        if (n > 0)
            for (bool s : {false, true})
                a_(space_.index(s, n - 1), space_.index(s, n)) = std::sqrt(static_cast<double>(n));
    }

    const double gb = config_.g * config_.B;
    H_ = -config_.detuning * (a_.adjoint() * a_) +
         gb * (a_.adjoint() * sigma_ + a_ * sigma_.adjoint());

    const MatrixXcd id = MatrixXcd::Identity(d, d);
    const cplx minus_i(0.0, -1.0);
    L_ = minus_i * (kron(id, H_) - kron(H_.transpose(), id));
    if (config_.emitter_decay() > 0.0) L_ += config_.emitter_decay() * dissipator(sigma_);
    if (config_.kappa > 0.0) L_ += config_.kappa * dissipator(a_);
    if (config_.gamma_tot_pd > 0.0)
        L_ += 2.0 * config_.gamma_tot_pd * dissipator(sigma_.adjoint() * sigma_);
}

double LindbladGenerator::trace_defect() const {
    const Index d = space_.dim();
    RowVectorXcd trace_row = RowVectorXcd::Zero(d * d);
    for (Index i = 0; i < d; ++i) trace_row[i + i * d] = 1.0;
    const double scale = std::max(1.0, L_.cwiseAbs().maxCoeff());
    return (trace_row * L_).cwiseAbs().maxCoeff() / scale;
}

MatrixXcd LindbladGenerator::propagator(double dt_ps) const {
    const MatrixXcd scaled = L_ * (dt_ps / units::kHbar);
    return scaled.exp();
}

LindbladGenerator build_generator(const SystemConfig& config) { return LindbladGenerator(config); }

std::vector<QuantumState> propagate(const LindbladGenerator& gen, const QuantumState& rho0,
                                    std::span<const double> t_grid) {
    const Index d = gen.space().dim();
    if (rho0.dim() != d) throw InvalidArgument("initial state dimension does not match the generator");
    if (t_grid.empty()) return {};
    if (t_grid.front() != 0.0) throw InvalidArgument("propagation grid must start at t = 0");

    std::vector<QuantumState> out;
    out.reserve(t_grid.size());
    out.push_back(rho0);

    VectorXcd state = as_vec(rho0.matrix());
    double cached_dt = -1.0;
    MatrixXcd step;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double dt = t_grid[i] - t_grid[i - 1];
        if (dt < 0.0) throw InvalidArgument("propagation grid must be ascending");
        if (std::abs(dt - cached_dt) > 1e-12 * std::max(dt, 1.0)) {
            step = gen.propagator(dt);
            cached_dt = dt;
        }
        state = step * state;
        if (!state.allFinite())
            throw PropagationError("propagation produced non-finite values", t_grid[i]);
        out.emplace_back(as_matrix(state, d));
    }
    return out;
}

double TwoTimeCorrelator::hermiticity_error() const {
    return (values - values.adjoint()).cwiseAbs().maxCoeff();
}

TwoTimeCorrelator regression_correlator(const LindbladGenerator& gen, const QuantumState& rho0,
                                        std::span<const double> times) {
    check_uniform(times);
    const Index d = gen.space().dim();
    const auto n = static_cast<Index>(times.size());
    const auto states = propagate(gen, rho0, times);

    RowVectorXcd trace_sigma_dag(d * d);
    for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i) trace_sigma_dag[i + j * d] = std::conj(gen.sigma()(i, j));

    const MatrixXcd step = n > 1 ? gen.propagator(times[1] - times[0]) : MatrixXcd::Identity(d * d, d * d);

    TwoTimeCorrelator c;
    c.times.assign(times.begin(), times.end());
    c.values = MatrixXcd::Zero(n, n);
    for (Index a = 0; a < n; ++a) {
        const MatrixXcd lowered = gen.sigma() * states[static_cast<std::size_t>(a)].matrix();
        VectorXcd x = as_vec(lowered);
        c.values(a, a) = (trace_sigma_dag * x)(0);
        for (Index b = a + 1; b < n; ++b) {
            x = step * x;
            const cplx v = (trace_sigma_dag * x)(0);
            c.values(b, a) = v;
            c.values(a, b) = std::conj(v);
        }
    }
    return c;
}

DressedCorrelator dress_with_phonons(const TwoTimeCorrelator& c, const PhononCorrelation& phi,
                                     double B) {
    const auto n = static_cast<Index>(c.size());
    if (n > 1 && std::abs(phi.dt() - c.dt()) > 1e-9 * c.dt())
        throw InvalidArgument("phonon table step must match the correlator time step");
    const double b2 = B * B;
    DressedCorrelator out{c, c, c};
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
            const cplx factor = std::exp(phi.at_step(static_cast<long>(a - b)));
            out.zpl.values(a, b) = b2 * c.values(a, b);
            out.psb.values(a, b) = b2 * (factor - 1.0) * c.values(a, b);
            out.total.values(a, b) = out.zpl.values(a, b) + out.psb.values(a, b);
        }
    return out;
}

DressedCorrelator dress_with_phonons(const TwoTimeCorrelator& c, const PhononEnvironment& env) {
    const double dt = c.size() > 1 ? c.dt() : 1.0;
    const auto table = PhononCorrelation::tabulate(env, dt, std::max<std::size_t>(c.size(), 1));
    return dress_with_phonons(c, table, franck_condon(env));
}

EmissionModel::EmissionModel(const LindbladGenerator& gen, const QuantumState& rho0) {
    const HilbertSpace& hs = gen.space();
    const Index d = hs.dim();
    if (rho0.dim() != d) throw InvalidArgument("initial state dimension does not match the generator");

    std::vector<Index> exc, low;
    std::vector<Index> low_slot(static_cast<std::size_t>(d * d), -1);
    for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i) {
            const int ni = hs.excitations(i);
            const int nj = hs.excitations(j);
            if (ni == nj && ni >= 1) exc.push_back(i + j * d);
            if (nj == ni + 1) {
                low_slot[static_cast<std::size_t>(i + j * d)] = static_cast<Index>(low.size());
                low.push_back(i + j * d);
            }
        }

    const auto ne = static_cast<Index>(exc.size());
    const auto nl = static_cast<Index>(low.size());
    const MatrixXcd& L = gen.superoperator();

    MatrixXcd L_exc(ne, ne);
    for (Index r = 0; r < ne; ++r)
        for (Index c = 0; c < ne; ++c) L_exc(r, c) = L(exc[r], exc[c]);
    L_low_.resize(nl, nl);
    for (Index r = 0; r < nl; ++r)
        for (Index c = 0; c < nl; ++c) L_low_(r, c) = L(low[r], low[c]);

    // ρ₀ must live in the excited sector, apart from ground-state population.
    const auto v0 = as_vec(rho0.matrix());
    VectorXcd rho0_exc(ne);
    for (Index r = 0; r < ne; ++r) rho0_exc[r] = v0[exc[r]];
    const double outside = (v0.cwiseAbs2().sum() - rho0_exc.cwiseAbs2().sum() -
                            std::norm(v0[hs.index(false, 0) * (d + 1)]));
    if (outside > 1e-20)
        throw InvalidArgument("EmissionModel requires an initial state without coherences between "
                              "excitation-number sectors");

    lower_ = MatrixXcd::Zero(nl, ne);
    const MatrixXcd& sigma = gen.sigma();
    for (Index c = 0; c < ne; ++c) {
        const Index i = exc[c] % d;
        const Index j = exc[c] / d;
        for (Index k = 0; k < d; ++k) {
            if (sigma(k, i) == 0.0) continue;
            const Index slot = low_slot[static_cast<std::size_t>(k + j * d)];
            lower_(slot, c) += sigma(k, i);
        }
    }
    trace_row_.resize(nl);
    for (Index r = 0; r < nl; ++r) trace_row_[r] = std::conj(sigma(low[r] % d, low[r] / d));
    excited_population_row_ = RowVectorXcd::Zero(ne);
    for (Index r = 0; r < ne; ++r) {
        const Index i = exc[r] % d;
        const Index j = exc[r] / d;
        if (i == j && i % 2 == 1) excited_population_row_[r] = 1.0;
    }

    Eigen::ComplexSchur<MatrixXcd> schur_exc(L_exc);
    Eigen::ComplexSchur<MatrixXcd> schur_low(L_low_);
    Q_exc_ = schur_exc.matrixU();
    T_exc_ = schur_exc.matrixT();
    Q_low_ = schur_low.matrixU();
    T_low_ = schur_low.matrixT();
    require_decay(T_exc_, "excited");
    require_decay(T_low_, "lowered");

    rho0_q_ = Q_exc_.adjoint() * rho0_exc;
    trace_q_ = trace_row_ * Q_low_;
    lower_q_ = Q_low_.adjoint() * lower_;
    lower_qq_ = lower_q_ * Q_exc_;
}

VectorXcd EmissionModel::population_transform_schur(cplx s) const {
    return upper_solve(T_exc_, s, rho0_q_);
}

RowVectorXcd EmissionModel::emission_resolvent_schur(cplx z) const {
    return row_solve(T_low_, z, trace_q_) * lower_qq_;
}

VectorXcd EmissionModel::population_transform(cplx s) const {
    return Q_exc_ * upper_solve(T_exc_, s, rho0_q_);
}

RowVectorXcd EmissionModel::emission_resolvent(cplx z) const {
    return row_solve(T_low_, z, trace_q_) * lower_q_;
}

std::vector<RowVectorXcd> EmissionModel::emission_kernel(double dtau_ps, std::size_t count) const {
    std::vector<RowVectorXcd> out;
    out.reserve(count);
    if (count == 0) return out;
    const MatrixXcd step = (L_low_ * (dtau_ps / units::kHbar)).exp();
    RowVectorXcd row = trace_row_;
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(row * lower_);
        row = row * step;
    }
    return out;
}

double EmissionModel::integrated_population() const {
    return (excited_population_row_ * population_transform(0.0))(0).real();
}

DressedEmissionModel::DressedEmissionModel(EmissionModel model, const PhononEnvironment& env,
                                           double dtau_ps, double max_tau_ps)
    : model_(std::move(model)), dtau_(dtau_ps) {
    if (!(dtau_ps > 0.0) || !(max_tau_ps > dtau_ps))
        throw InvalidArgument("invalid sideband integration grid");
    B_ = fpcqed::franck_condon(env);
    if (env.alpha == 0.0) return;
    cutoff_ = units::to_ueV(env.nu_c);

    const double b2 = B_ * B_;
    const double scale = std::max(1.0 - b2, 1e-300);
    const auto chunk = static_cast<std::size_t>(std::ceil(1.0 / dtau_ps));
    const auto limit = static_cast<std::size_t>(std::ceil(max_tau_ps / dtau_ps));
    bool decayed = false;
    while (!decayed && sideband_.size() < limit) {
        double chunk_max = 0.0;
        for (std::size_t k = 0; k < chunk; ++k) {
            const double tau = dtau_ps * static_cast<double>(sideband_.size());
            const cplx f = b2 * (std::exp(phonon_correlation(env, tau)) - 1.0);
            chunk_max = std::max(chunk_max, std::abs(f));
            sideband_.push_back(f);
        }
        decayed = chunk_max < 1e-10 * scale;
    }
    if (sideband_.size() % 2 == 0) sideband_.pop_back();

    const auto kernel = model_.emission_kernel(dtau_ps, sideband_.size());
    const std::size_t n = sideband_.size();
    weighted_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double simpson = (k == 0 || k + 1 == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        weighted_[k] = (simpson / 3.0) * (dtau_ps / units::kHbar) * sideband_[k] * kernel[k];
    }
}

RowVectorXcd DressedEmissionModel::zpl_kernel(double omega) const {
    return (B_ * B_) * model_.emission_resolvent(cplx(0.0, omega));
}

RowVectorXcd DressedEmissionModel::psb_kernel(double omega) const {
    RowVectorXcd acc = RowVectorXcd::Zero(model_.excited_size());
    if (weighted_.empty()) return acc;
    const cplx rotor = std::polar(1.0, -omega * dtau_ / units::kHbar);
    cplx phase = 1.0;
    for (std::size_t k = 0; k < weighted_.size(); ++k) {
        if (k % 256 == 0) phase = std::polar(1.0, -omega * dtau_ * static_cast<double>(k) / units::kHbar);
        acc += phase * weighted_[k];
        phase *= rotor;
    }
    return acc;
}

DressedEmissionModel dress_with_phonons(const EmissionModel& model, const PhononEnvironment& env) {
    return DressedEmissionModel(model, env);
}

}  // namespace fpcqed
