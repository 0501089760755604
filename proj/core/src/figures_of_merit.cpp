#include "fpcqed/figures_of_merit.hpp"

#include <cmath>

#include "fpcqed/errors.hpp"
#include "fpcqed/units.hpp"

namespace fpcqed {

namespace {

double filter_weight(const WaveguideCavity& s, double omega_abs) {
    return std::norm(filter_function(s, omega_abs));
}

// ∫ f over the spectrum's span with Lorentzian tails on both sides.
double integrate_span(const std::function<double(double)>& f, const std::vector<double>& breaks,
                      double span, double rel_tol, int max_evals, double* error = nullptr) {
    const auto q = integrate_adaptive(f, breaks, {rel_tol, 0.0, max_evals});
    if (error) *error = q.error;
    return q.value + lorentzian_tail(f(-span), span) + lorentzian_tail(f(span), span);
}

}  // namespace

double indistinguishability_numeric(const TwoColourSpectrum& S, const WaveguideCavity& structure,
                                    const FomOptions& options, double* rel_error) {
    const double wx = S.carrier();
    const double span = S.half_span();
    const auto filter = filter_features(structure, wx);

    auto diag = [&](double w) { return filter_weight(structure, wx + w) * S.diagonal(w); };
    const double norm = integrate_span(diag, S.diagonal_breaks(filter), span, 1e-9, 400000);
    if (!(norm > 0.0)) throw DegenerateError("no emission passes the filter");

    // Outer peaks appear where ω ± Δ-features meet the fixed emission features.
    std::vector<GridFeature> outer = filter;
    for (const auto& e : S.emission_features())
        for (const auto& d : S.offset_features())
            outer.push_back({e.center + d.center, std::max(e.width, d.width)});

    double inner_error = 0.0;
    auto inner = [&](double w) {
        const double gw = filter_weight(structure, wx + w);
        if (gw == 0.0) return 0.0;
        const auto row = S.row(w);
        auto f = [&](double wp) { return filter_weight(structure, wx + wp) * std::norm(row(wp)); };
        double err = 0.0;
        const double v = integrate_span(f, S.row_breaks(w, filter), span, options.inner_rel_tol,
                                        options.max_inner_evaluations, &err);
        inner_error += gw * err;
        return gw * v;
    };
    double outer_error = 0.0;
    const double total = integrate_span(inner, S.diagonal_breaks(outer), span, options.outer_rel_tol,
                                        options.max_outer_evaluations, &outer_error);
    if (rel_error) *rel_error = (outer_error + 0.0) / std::max(total, 1e-300);
    return total / (norm * norm);
}

double efficiency_numeric(const TwoColourSpectrum& S, const WaveguideCavity& structure, double gammaR) {
    const double pb = power_guided(S, structure);
    const double pr = power_radiation(S, gammaR);
    if (!(pb + pr > 0.0)) throw DegenerateError("no emitted power");
    return pb / (pb + pr);
}

double psb_filter_fraction(const TwoColourSpectrum& S, const WaveguideCavity& structure) {
    if (S.franck_condon() >= 1.0) return 0.0;
    const auto psb = S.restricted(SpectrumPart::Sideband);
    const double wx = S.carrier();
    const double span = S.half_span();
    const auto filter = filter_features(structure, wx);
    const auto breaks = psb.diagonal_breaks(filter);
    const double all = integrate_span([&](double w) { return psb.diagonal(w); }, breaks, span, 1e-9, 400000);
    if (all == 0.0) return 0.0;
    const double passed = integrate_span(
        [&](double w) { return filter_weight(structure, wx + w) * psb.diagonal(w); }, breaks, span, 1e-9, 400000);
    return passed / (4.0 * all);
}

FigureOfMerit figures_of_merit(const TwoColourSpectrum& S, const WaveguideCavity& structure,
                               double gammaR, const FomOptions& options) {
    FigureOfMerit out;
    out.indistinguishability = indistinguishability_numeric(S, structure, options, &out.quadrature_error);
    out.power_guided = power_guided(S, structure);
    out.power_radiation = power_radiation(S, gammaR);
    out.efficiency = out.power_guided / (out.power_guided + out.power_radiation);
    out.psb_fraction = psb_filter_fraction(S, structure);
    return out;
}

double purcell_rate(double g, double kappa_star) {
    if (!(kappa_star > 0.0)) throw DegenerateError("purcell_rate requires kappa* > 0");
    return 4.0 * g * g / kappa_star;
}

double indistinguishability_analytic(const AnalyticRates& r) {
    const double gcav = purcell_rate(r.g, r.kappa_star);
    const double gamma_tot = gcav + r.gammaB_star + r.gammaR;
    const double x = (r.gammaB_star + gcav) * r.B * r.B;
    const double zpl = x / (x + 2.0 * r.gammaB0 * r.F * (1.0 - r.B * r.B));
    return gamma_tot / (gamma_tot + 2.0 * r.gamma_tot) * zpl * zpl;
}

double efficiency_analytic(const AnalyticRates& r) {
    const double gcav = purcell_rate(r.g, r.kappa_star);
    const double guided = (r.gammaB_star + gcav) * r.B * r.B + 2.0 * r.gammaB0 * r.F * (1.0 - r.B * r.B);
    return guided / (guided + r.gammaR);
}

}  // namespace fpcqed
