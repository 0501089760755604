#include "fpcqed/pipeline.hpp"

#include <cmath>

#include "fpcqed/errors.hpp"
#include "fpcqed/units.hpp"

namespace fpcqed {

Method parse_method(std::string_view text) {
    if (text == "numeric") return Method::Numeric;
    if (text == "analytic") return Method::Analytic;
    if (text == "both") return Method::Both;
    throw ConfigError("unknown method '" + std::string(text) + "' (expected numeric, analytic or both)");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Numeric: return "numeric";
        case Method::Analytic: return "analytic";
        case Method::Both: return "both";
    }
    return "unknown";
}

double radiation_rate_for_beta_star(double gammaB0, double beta_star) {
    if (!(beta_star > 0.0 && beta_star <= 1.0)) throw InvalidArgument("beta* must lie in (0, 1]");
    return 2.0 * gammaB0 * (1.0 - beta_star) / beta_star;
}

std::vector<std::string> preset_names() {
    return {"fig1b", "fig1c", "fig1d", "fig2", "fig3-short", "fig3-long"};
}

RunConfig preset(std::string_view name) {
    RunConfig c;
    c.name = std::string(name);
    c.structure.length = 1.0;
    c.structure.n_eff = 2.5;
    c.structure.gammaB0 = 0.3;
    c.structure.omega_c = units::photon_energy(0.95);
    auto symmetric = [&](double r) {
        c.structure.mirror1.r = r;
        c.structure.mirror2.r = r;
    };
    if (name == "fig1b") {
        symmetric(0.0);
    } else if (name == "fig1c") {
        symmetric(0.2);
    } else if (name == "fig1d") {
        symmetric(0.9);
    } else if (name == "fig2") {
        c.r_min = 0.0;
        c.r_max = 0.99;
        c.r_points = 100;
    } else if (name == "fig3-short" || name == "fig3-long") {
        const double lambda = 0.95;
        c.structure.n_eff = 2.5;
        c.structure.length = name == "fig3-short" ? lambda / (2.0 * c.structure.n_eff)
                                                  : 15.0 * lambda / c.structure.n_eff;
        c.structure.gammaB0 = 1.1;
        c.structure.gammaRM = radiation_rate_for_beta_star(1.1, 0.974);
        c.structure.mirror1.r = 1.0;
        c.structure.mirror2.r = 0.0;
        c.structure.omega_c = units::photon_energy(lambda);
        c.phonons = {kCalibratedAlpha, 2.2, 4.2, 0.0};
    } else {
        throw ConfigError("unknown preset '" + std::string(name) + "'");
    }
    c.validate();
    return c;
}

std::vector<LdosRow> ldos_scan(const RunConfig& config) {
    const auto& s = config.structure;
    const double fsr = s.free_spectral_range();
    std::vector<LdosRow> out;
    out.reserve(static_cast<std::size_t>(config.ldos_points));
    for (int i = 0; i < config.ldos_points; ++i) {
        const double x = config.ldos_min_fsr +
                         (config.ldos_max_fsr - config.ldos_min_fsr) * i / (config.ldos_points - 1);
        const double w = s.omega_c + x * fsr;
        out.push_back({x, w, ldos_guided(s, w)});
    }
    return out;
}

std::vector<double> reflectivity_grid(const RunConfig& config) {
    std::vector<double> r;
    if (config.r_points == 1) return {config.r_min};
    for (int i = 0; i < config.r_points; ++i)
        r.push_back(config.r_min + (config.r_max - config.r_min) * i / (config.r_points - 1));
    return r;
}

ParamsRow params_point(const RunConfig& config, double r) {
    WaveguideCavity s = config.structure;
    s.mirror1.r = r;
    s.mirror2.r = r;
    return {r, decompose_ldos(s), limit_values(s)};
}

std::vector<double> transmittivity_grid(const RunConfig& config) {
    if (config.T_points == 1) return {config.T_max};
    std::vector<double> t;
    const double a = std::log(config.T_min);
    const double b = std::log(config.T_max);
    for (int i = 0; i < config.T_points; ++i) t.push_back(std::exp(a + (b - a) * i / (config.T_points - 1)));
    t.back() = config.T_max;
    return t;
}

OperatingPoint operating_point(const RunConfig& config, double T) {
    if (!(T > 0.0 && T <= 1.0)) throw InvalidArgument("transmittivity must lie in (0, 1]");
    OperatingPoint p;
    p.T = T;
    p.r2 = std::sqrt(1.0 - T);
    p.structure = config.structure;
    p.structure.mirror1.r = 1.0;
    p.structure.mirror2.r = p.r2;
    p.rates = back_mirror_renormalize(p.structure);

    p.phonons = config.target_b4 > 0.0 ? calibrate_alpha(config.phonons, config.target_b4) : config.phonons;
    p.B = franck_condon(p.phonons);
    p.gamma_tot = enhanced_dephasing(p.phonons, p.rates.g, p.rates.kappa_star, p.B);

    const double wx = config.carrier();
    SystemConfig& sys = p.system;
    sys.omega_X = wx;
    sys.detuning = wx - p.structure.omega_c;
    sys.g = p.rates.g;
    sys.kappa = p.rates.kappa_star;
    sys.gammaB = p.rates.gammaB_star;
    sys.gammaR = radiation_rate(p.structure, wx);
    sys.gamma_tot_pd = p.gamma_tot;
    sys.B = p.B;
    sys.n_max = config.n_max;
    sys.validate();
    return p;
}

TwoColourSpectrum operating_spectrum(const OperatingPoint& p) {
    const LindbladGenerator gen(p.system);
    EmissionModel model(gen, QuantumState::excited_vacuum(p.system.n_max));
    auto dressed = std::make_shared<const DressedEmissionModel>(std::move(model), p.phonons);
    return TwoColourSpectrum(dressed, p.system.omega_X);
}

FomRow run_fom_point(const RunConfig& config, double T, Method method, const FomOptions& options) {
    const OperatingPoint p = operating_point(config, T);
    FomRow row;
    row.r2 = p.r2;
    row.T = T;
    row.g = p.rates.g;
    row.kappa = p.rates.kappa_star;
    row.B = p.B;
    row.gamma_tot = p.gamma_tot;
    row.weak_coupling = p.weak_coupling();

    const TwoColourSpectrum S = operating_spectrum(p);
    row.F = psb_filter_fraction(S, p.structure);
    if (method != Method::Analytic) {
        row.P_B = power_guided(S, p.structure);
        row.P_R = power_radiation(S, p.system.gammaR);
        row.E_numeric = row.P_B / (row.P_B + row.P_R);
        row.I_numeric = indistinguishability_numeric(S, p.structure, options);
    }
    if (method != Method::Numeric) {
        AnalyticRates r;
        r.gammaB0 = p.structure.gammaB0;
        r.gammaB_star = p.rates.gammaB_star;
        r.gammaR = p.system.gammaR;
        r.g = p.rates.g;
        r.kappa_star = p.rates.kappa_star;
        r.gamma_tot = p.gamma_tot;
        r.B = p.B;
        r.F = row.F;
        row.I_analytic = indistinguishability_analytic(r);
        row.E_analytic = efficiency_analytic(r);
    }
    return row;
}

int exit_code_for(const std::exception& e) {
    return dynamic_cast<const InvalidArgument*>(&e) != nullptr ? 2 : 1;
}

}  // namespace fpcqed
