#include "fpcqed/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "fpcqed/errors.hpp"
#include "fpcqed/units.hpp"

namespace fpcqed {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::RowVectorXcd;
using Eigen::VectorXcd;

constexpr double kMinSpan = 5000.0;      // μeV
constexpr double kCutoffMultiple = 4.5;  // sideband density ~ x e^{−x²} is below 1e-8 of its peak
constexpr double kMinWidth = 1e-6;
constexpr double kBroadWidth = 1000.0;  // μeV

bool has_zpl(SpectrumPart p) { return p != SpectrumPart::Sideband; }
bool has_psb(SpectrumPart p) { return p != SpectrumPart::ZeroPhonon; }

void add_feature(std::vector<double>& out, const GridFeature& f, double shift = 0.0) {
    out.push_back(shift + f.center);
    out.push_back(shift + f.center - f.width);
    out.push_back(shift + f.center + f.width);
}

}  // namespace

std::string to_string(SpectrumPart part) {
    switch (part) {
        case SpectrumPart::Total: return "total";
        case SpectrumPart::ZeroPhonon: return "zpl";
        case SpectrumPart::Sideband: return "psb";
    }
    return "unknown";
}

TwoColourSpectrum::TwoColourSpectrum(std::shared_ptr<const DressedEmissionModel> model,
                                     double omega_X, const SpectrumOptions& options)
    : model_(std::move(model)), omega_X_(omega_X) {
    if (!model_) throw InvalidArgument("TwoColourSpectrum needs an emission model");
    if (!(options.sideband_step > 0.0)) throw InvalidArgument("sideband_step must be > 0");
    const EmissionModel& bare = model_->bare();
    basis_ = bare.excited_basis();

    double reach = 0.0;
    for (const cplx& l : bare.lowered_eigenvalues()) {
        const GridFeature f{l.imag(), std::max(std::abs(l.real()), kMinWidth)};
        emission_features_.push_back(f);
        // Very broad features carry little weight and are covered by the tail estimate.
        if (f.width < kBroadWidth) reach = std::max(reach, std::abs(f.center) + 5.0 * f.width);
    }
    for (const cplx& l : bare.excited_eigenvalues()) {
        const double w = std::max(std::abs(l.real()), kMinWidth);
        offset_features_.push_back({l.imag(), w});
        if (l.imag() != 0.0) offset_features_.push_back({-l.imag(), w});
    }

    const bool phonons = model_->tau_count() > 0;
    if (options.half_span > 0.0) {
        half_span_ = options.half_span;
    } else {
        half_span_ = std::max(kMinSpan, reach);
        if (phonons) half_span_ = std::max(half_span_, kCutoffMultiple * model_->phonon_cutoff());
    }

    if (phonons) {
        table_step_ = options.sideband_step;
        table_lo_ = -half_span_ - 3.0 * table_step_;
        const auto n = static_cast<std::size_t>(std::ceil(2.0 * (half_span_ + 3.0 * table_step_) / table_step_)) + 1;
        sideband_table_.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            sideband_table_.push_back(model_->psb_kernel(table_lo_ + table_step_ * static_cast<double>(i)) * basis_);
    }
}

RowVectorXcd TwoColourSpectrum::sideband_row(double omega) const {
    if (sideband_table_.empty()) return RowVectorXcd::Zero(basis_.cols());
    const double x = (omega - table_lo_) / table_step_;
    const auto i = static_cast<long>(std::floor(x)) - 1;
    if (i < 0 || static_cast<std::size_t>(i + 3) >= sideband_table_.size())
        return model_->psb_kernel(omega) * basis_;
    // Four-point Lagrange interpolation.
    const double t = x - static_cast<double>(i);  // in [1, 2)
    const double w0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    const double w1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    const double w2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    const double w3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    const auto u = static_cast<std::size_t>(i);
    return w0 * sideband_table_[u] + w1 * sideband_table_[u + 1] + w2 * sideband_table_[u + 2] +
           w3 * sideband_table_[u + 3];
}

TwoColourSpectrum::Row TwoColourSpectrum::row(double omega) const {
    Row r;
    r.owner_ = this;
    r.omega_ = omega;
    const double b2 = model_->franck_condon() * model_->franck_condon();
    r.zpl_ = has_zpl(part_) ? RowVectorXcd(b2 * model_->bare().emission_resolvent_schur(cplx(0.0, omega)))
                            : RowVectorXcd::Zero(basis_.cols());
    r.psb_ = has_psb(part_) ? sideband_row(omega) : RowVectorXcd::Zero(basis_.cols());
    return r;
}

cplx TwoColourSpectrum::Row::operator()(double omega_prime) const {
    const TwoColourSpectrum& s = *owner_;
    const EmissionModel& bare = s.model_->bare();
    const double delta = omega_ - omega_prime;
    const cplx forward = (zpl_ + psb_) * bare.population_transform_schur(cplx(0.0, delta));

    RowVectorXcd k = RowVectorXcd::Zero(zpl_.size());
    if (has_zpl(s.part_)) {
        const double b2 = s.model_->franck_condon() * s.model_->franck_condon();
        k += b2 * bare.emission_resolvent_schur(cplx(0.0, omega_prime));
    }
    if (has_psb(s.part_)) k += s.sideband_row(omega_prime);
    const cplx backward = k * bare.population_transform_schur(cplx(0.0, -delta));
    return forward + std::conj(backward);
}

double TwoColourSpectrum::diagonal(double omega) const {
    const Row r = row(omega);
    const cplx a = (r.zpl_ + r.psb_) * model_->bare().population_transform_schur(0.0);
    return 2.0 * a.real();
}

TwoColourSpectrum TwoColourSpectrum::restricted(SpectrumPart part) const {
    TwoColourSpectrum out = *this;
    out.part_ = part;
    return out;
}

std::vector<double> TwoColourSpectrum::row_breaks(double omega, std::span<const GridFeature> extra) const {
    std::vector<double> pts{0.0, omega};
    for (const auto& f : emission_features_) add_feature(pts, f);
    for (const auto& f : offset_features_) add_feature(pts, f, omega);
    for (const auto& f : extra) add_feature(pts, f);
    return make_breaks(std::move(pts), -half_span_, half_span_);
}

std::vector<double> TwoColourSpectrum::diagonal_breaks(std::span<const GridFeature> extra) const {
    std::vector<double> pts{0.0};
    for (const auto& f : emission_features_) add_feature(pts, f);
    for (const auto& f : extra) add_feature(pts, f);
    return make_breaks(std::move(pts), -half_span_, half_span_);
}

MatrixXcd TwoColourSpectrum::sample(std::span<const double> omega, std::span<const double> omega_prime) const {
    MatrixXcd out(static_cast<Index>(omega.size()), static_cast<Index>(omega_prime.size()));
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const Row r = row(omega[i]);
        for (std::size_t j = 0; j < omega_prime.size(); ++j)
            out(static_cast<Index>(i), static_cast<Index>(j)) = r(omega_prime[j]);
    }
    return out;
}

double TwoColourSpectrum::diagonal_integral() const {
    const auto breaks = diagonal_breaks();
    const auto q = integrate_adaptive([&](double w) { return diagonal(w); }, breaks, {1e-9, 0.0, 400000});
    return q.value + lorentzian_tail(diagonal(-half_span_), half_span_) +
           lorentzian_tail(diagonal(half_span_), half_span_);
}

TwoColourSpectrum two_colour_spectrum(const DressedEmissionModel& model, double omega_X,
                                      const SpectrumOptions& options) {
    return TwoColourSpectrum(std::make_shared<const DressedEmissionModel>(model), omega_X, options);
}

SpectrumComponents decompose_spectrum(const TwoColourSpectrum& spectrum) {
    if (spectrum.part() != SpectrumPart::Total)
        throw InvalidArgument("decompose_spectrum expects the total spectrum");
    return {spectrum.restricted(SpectrumPart::ZeroPhonon), spectrum.restricted(SpectrumPart::Sideband)};
}

std::vector<GridFeature> filter_features(const WaveguideCavity& s, double omega_X) {
    const double rho = s.mirror1.r * s.mirror2.r;
    if (rho <= 0.0) return {};
    const double scale = units::kHbarC / (s.length * s.n_eff);
    // Round-trip phase φ₁ + φ₂ + 2ω̃ vanishes modulo 2π at the transmission maxima.
    const double base = -0.5 * (s.mirror1.phi0 + s.mirror2.phi0);
    const double width = std::max((1.0 - rho) / (2.0 * std::sqrt(rho)), 1e-9) * scale;
    std::vector<GridFeature> out;
    const double m0 = std::round(((omega_X - s.omega_c) / scale - base) / units::kPi);
    for (int dm = -1; dm <= 1; ++dm) {
        const double x = base + (m0 + dm) * units::kPi;
        out.push_back({s.omega_c + x * scale - omega_X, width});
    }
    return out;
}

double power_guided(const TwoColourSpectrum& spectrum, const WaveguideCavity& structure) {
    const double wx = spectrum.carrier();
    const auto features = filter_features(structure, wx);
    auto f = [&](double w) { return std::norm(filter_function(structure, wx + w)) * spectrum.diagonal(w); };
    const auto q = integrate_adaptive(f, spectrum.diagonal_breaks(features), {1e-9, 0.0, 400000});
    const double span = spectrum.half_span();
    const double integral = q.value + lorentzian_tail(f(-span), span) + lorentzian_tail(f(span), span);
    return 0.5 * structure.gammaB0 * integral;
}

double power_radiation(const TwoColourSpectrum& spectrum, double gammaR) {
    return gammaR * spectrum.diagonal_integral();
}

double DenseSpectrum::hermiticity_error() const {
    return (values - values.adjoint()).cwiseAbs().maxCoeff();
}

DenseSpectrum transform_correlator(const TwoTimeCorrelator& c, std::span<const double> omega,
                                   double omega_X, double window_tol) {
    const auto n = static_cast<Index>(c.size());
    if (n < 2) throw InvalidArgument("transform_correlator needs at least two time samples");
    const double peak = c.values.cwiseAbs().maxCoeff();
    const double edge = std::max(c.values.row(n - 1).cwiseAbs().maxCoeff(),
                                 c.values.col(n - 1).cwiseAbs().maxCoeff());
    if (edge > window_tol * peak)
        throw WindowError("correlator has not decayed within the time window (edge/peak = " +
                          std::to_string(edge / peak) + ")");

    const auto w = trapezoid_weights(c.times);
    MatrixXcd F(static_cast<Index>(omega.size()), n);
    for (std::size_t i = 0; i < omega.size(); ++i)
        for (Index a = 0; a < n; ++a)
            F(static_cast<Index>(i), a) =
                (w[static_cast<std::size_t>(a)] / units::kHbar) *
                std::polar(1.0, -omega[i] * c.times[static_cast<std::size_t>(a)] / units::kHbar);
    DenseSpectrum out;
    out.omega.assign(omega.begin(), omega.end());
    out.values = F * c.values * F.adjoint();
    out.carrier = omega_X;
    return out;
}

DenseSpectrum sample_spectrum(const TwoColourSpectrum& spectrum, std::span<const double> omega) {
    DenseSpectrum out;
    out.omega.assign(omega.begin(), omega.end());
    out.values = spectrum.sample(omega, omega);
    out.carrier = spectrum.carrier();
    return out;
}

}  // namespace fpcqed
