#include "fpcqed/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fpcqed/errors.hpp"
#include "fpcqed/units.hpp"

namespace fpcqed {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ConfigError("config key '" + key + "': '" + text + "' is not a finite number");
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    int v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ConfigError("config key '" + key + "': '" + text + "' is not an integer");
    return v;
}

// family = gamma0, r1, r2, n_eff
ModeFamily to_family(const std::string& key, const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(to_double(key, trim(item)));
    if (parts.size() != 4) throw ConfigError("config key 'family' expects gamma0_ueV, r1, r2, n_eff");
    return {parts[0], parts[1], parts[2], parts[3]};
}

// Shortest text that parses back to the same double, so an echoed config reproduces the run.
std::string fmt(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"name", [](RunConfig& c, const std::string&, const std::string& v) { c.name = v; }},
        {"L_um", [](RunConfig& c, const std::string& k, const std::string& v) { c.structure.length = to_double(k, v); }},
        {"n_eff", [](RunConfig& c, const std::string& k, const std::string& v) { c.structure.n_eff = to_double(k, v); }},
        {"gammaB0_ueV", [](RunConfig& c, const std::string& k, const std::string& v) { c.structure.gammaB0 = to_double(k, v); }},
        {"gammaRM_ueV", [](RunConfig& c, const std::string& k, const std::string& v) { c.structure.gammaRM = to_double(k, v); }},
        {"r1", [](RunConfig& c, const std::string& k, const std::string& v) { c.structure.mirror1.r = to_double(k, v); }},
        {"r2", [](RunConfig& c, const std::string& k, const std::string& v) { c.structure.mirror2.r = to_double(k, v); }},
        {"phi1_rad", [](RunConfig& c, const std::string& k, const std::string& v) { c.structure.mirror1.phi0 = to_double(k, v); }},
        {"phi2_rad", [](RunConfig& c, const std::string& k, const std::string& v) { c.structure.mirror2.phi0 = to_double(k, v); }},
        {"omega_c_ueV", [](RunConfig& c, const std::string& k, const std::string& v) { c.structure.omega_c = to_double(k, v); }},
        {"lambda_um", [](RunConfig& c, const std::string& k, const std::string& v) {
             const double lambda = to_double(k, v);
             if (!(lambda > 0.0)) throw ConfigError("lambda_um must be > 0");
             c.structure.omega_c = units::photon_energy(lambda);
         }},
        {"omega_X_ueV", [](RunConfig& c, const std::string& k, const std::string& v) { c.omega_X = to_double(k, v); }},
        {"family", [](RunConfig& c, const std::string& k, const std::string& v) { c.structure.extra_families.push_back(to_family(k, v)); }},
        {"alpha_ps2", [](RunConfig& c, const std::string& k, const std::string& v) { c.phonons.alpha = to_double(k, v); }},
        {"nu_c_per_ps", [](RunConfig& c, const std::string& k, const std::string& v) { c.phonons.nu_c = to_double(k, v); }},
        {"T_K", [](RunConfig& c, const std::string& k, const std::string& v) { c.phonons.temperature = to_double(k, v); }},
        {"gamma_ueV", [](RunConfig& c, const std::string& k, const std::string& v) { c.phonons.gamma_pd = to_double(k, v); }},
        {"target_B4", [](RunConfig& c, const std::string& k, const std::string& v) { c.target_b4 = to_double(k, v); }},
        {"n_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.n_max = to_int(k, v); }},
        {"ldos_min_fsr", [](RunConfig& c, const std::string& k, const std::string& v) { c.ldos_min_fsr = to_double(k, v); }},
        {"ldos_max_fsr", [](RunConfig& c, const std::string& k, const std::string& v) { c.ldos_max_fsr = to_double(k, v); }},
        {"ldos_points", [](RunConfig& c, const std::string& k, const std::string& v) { c.ldos_points = to_int(k, v); }},
        {"r_min", [](RunConfig& c, const std::string& k, const std::string& v) { c.r_min = to_double(k, v); }},
        {"r_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.r_max = to_double(k, v); }},
        {"r_points", [](RunConfig& c, const std::string& k, const std::string& v) { c.r_points = to_int(k, v); }},
        {"T_min", [](RunConfig& c, const std::string& k, const std::string& v) { c.T_min = to_double(k, v); }},
        {"T_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.T_max = to_double(k, v); }},
        {"T_points", [](RunConfig& c, const std::string& k, const std::string& v) { c.T_points = to_int(k, v); }},
        {"T_point", [](RunConfig& c, const std::string& k, const std::string& v) { c.T_point = to_double(k, v); }},
    };
    return table;
}

}  // namespace

void RunConfig::validate() const {
    try {
        structure.validate();
        phonons.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    if (n_max < 1 || n_max > 12) throw ConfigError("n_max must lie in [1, 12]");
    if (omega_X < 0.0) throw ConfigError("omega_X_ueV must be >= 0");
    if (target_b4 < 0.0 || target_b4 > 1.0) throw ConfigError("target_B4 must lie in [0, 1]");
    if (!(ldos_max_fsr > ldos_min_fsr) || ldos_points < 2) throw ConfigError("invalid LDOS scan range");
    if (!(r_min >= 0.0 && r_max < 1.0 && r_max >= r_min) || r_points < 1)
        throw ConfigError("reflectivity sweep must satisfy 0 <= r_min <= r_max < 1 with r_points >= 1");
    if (!(T_min > 0.0 && T_max <= 1.0 && T_max >= T_min) || T_points < 1)
        throw ConfigError("transmittivity sweep must satisfy 0 < T_min <= T_max <= 1 with T_points >= 1");
    if (!(T_point > 0.0 && T_point <= 1.0)) throw ConfigError("T_point must lie in (0, 1]");
}

RunConfig parse_config(std::istream& in, RunConfig base) {
    std::string line;
    int lineno = 0;
    bool families_reset = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        // A file listing families replaces the base list instead of appending to it.
        if (key == "family" && !families_reset) {
            base.structure.extra_families.clear();
            families_reset = true;
        }
        it->second(base, key, value);
    }
    base.validate();
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, std::move(base));
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> out = {
        {"name", c.name},
        {"L_um", fmt(c.structure.length)},
        {"n_eff", fmt(c.structure.n_eff)},
        {"gammaB0_ueV", fmt(c.structure.gammaB0)},
        {"gammaRM_ueV", fmt(c.structure.gammaRM)},
        {"r1", fmt(c.structure.mirror1.r)},
        {"r2", fmt(c.structure.mirror2.r)},
        {"phi1_rad", fmt(c.structure.mirror1.phi0)},
        {"phi2_rad", fmt(c.structure.mirror2.phi0)},
        {"omega_c_ueV", fmt(c.structure.omega_c)},
        {"omega_X_ueV", fmt(c.omega_X)},
    };
    for (const auto& f : c.structure.extra_families)
        out.emplace_back("family", fmt(f.gamma0) + ", " + fmt(f.r1) + ", " + fmt(f.r2) + ", " + fmt(f.n_eff));
    const std::vector<std::pair<std::string, std::string>> rest = {
        {"alpha_ps2", fmt(c.phonons.alpha)},
        {"nu_c_per_ps", fmt(c.phonons.nu_c)},
        {"T_K", fmt(c.phonons.temperature)},
        {"gamma_ueV", fmt(c.phonons.gamma_pd)},
        {"target_B4", fmt(c.target_b4)},
        {"n_max", std::to_string(c.n_max)},
        {"ldos_min_fsr", fmt(c.ldos_min_fsr)},
        {"ldos_max_fsr", fmt(c.ldos_max_fsr)},
        {"ldos_points", std::to_string(c.ldos_points)},
        {"r_min", fmt(c.r_min)},
        {"r_max", fmt(c.r_max)},
        {"r_points", std::to_string(c.r_points)},
        {"T_min", fmt(c.T_min)},
        {"T_max", fmt(c.T_max)},
        {"T_points", std::to_string(c.T_points)},
        {"T_point", fmt(c.T_point)},
    };
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

}  // namespace fpcqed
