// Command-line front end: LDOS scans, cavity-parameter sweeps and figure-of-merit sweeps.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "fpcqed/csv.hpp"
#include "fpcqed/errors.hpp"
#include "fpcqed/pipeline.hpp"

namespace {

using namespace fpcqed;

enum Exit { kOk = 0, kNumerical = 1, kUsage = 2 };

struct Options {
    std::string config_path;
    std::string out_path;
    std::string preset_name;
    std::string method = "both";
    int workers = 1;
    double T = -1.0;
};

RunConfig resolve_config(const Options& o) {
    RunConfig c = o.preset_name.empty() ? RunConfig{} : preset(o.preset_name);
    if (!o.config_path.empty()) c = load_config(o.config_path, c);
    if (o.T > 0.0) c.T_point = o.T;
    c.validate();
    return c;
}

// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void write_preamble(CsvWriter& w, const RunConfig& c, const std::string& command) {
    w.metadata("command", command);
    w.metadata(config_entries(c));
}

int cmd_ldos(const Options& o) {
    const RunConfig c = resolve_config(o);
    Sink sink(o.out_path);
    CsvWriter w(sink.stream(), {"omega_fsr", "omega_ueV", "ldos_ueV"});
    write_preamble(w, c, "ldos");
    w.metadata("fsr_ueV", CsvWriter::number(c.structure.free_spectral_range()));
    for (const auto& row : ldos_scan(c)) w.row({row.omega_fsr, row.omega, row.ldos});
    return kOk;
}

int report_failures(CsvWriter& w, const std::string& label, const std::vector<double>& grid,
                    const std::vector<std::string>& errors, const std::vector<int>& codes) {
    int code = kOk;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (errors[i].empty()) continue;
        const std::string msg = "failed " + label + "=" + CsvWriter::number(grid[i]) + ": " + errors[i];
        w.comment(msg);
        std::cerr << msg << '\n';
        code = std::max(code, codes[i] == kUsage ? int{kUsage} : int{kNumerical});
    }
    return code;
}

int cmd_params(const Options& o) {
    const RunConfig c = resolve_config(o);
    const auto grid = reflectivity_grid(c);
    const auto results = parallel_map<ParamsRow>(grid.size(), o.workers,
                                                 [&](std::size_t i) { return params_point(c, grid[i]); });
    Sink sink(o.out_path);
    CsvWriter w(sink.stream(), {"r", "gammaB_ueV", "Lc_ueV", "kappa_reduced", "kappa_ueV", "g_ueV",
                                "g_max_ueV", "kappa_max_ueV", "fit_residual"});
    write_preamble(w, c, "params");
    std::vector<std::string> errors;
    std::vector<int> codes;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        errors.push_back(results[i].error);
        codes.push_back(results[i].exit_code);
        if (!results[i].value) continue;
        const auto& r = *results[i].value;
        w.row({r.r, r.params.gammaB, r.params.Lc, r.params.kappa_reduced, r.params.kappa, r.params.g,
               r.limits.g_max, r.limits.kappa_max, r.params.fit_residual});
    }
    return report_failures(w, "r", grid, errors, codes);
}

int fom_table(const Options& o, const RunConfig& c, const std::vector<double>& grid, const std::string& command) {
    const Method method = parse_method(o.method);
    const auto results = parallel_map<FomRow>(grid.size(), o.workers,
                                              [&](std::size_t i) { return run_fom_point(c, grid[i], method); });
    Sink sink(o.out_path);
    CsvWriter w(sink.stream(), {"r2", "T", "g_ueV", "kappa_ueV", "I_numeric", "I_analytic", "E_numeric",
                                "E_analytic", "F", "P_B", "P_R"});
    write_preamble(w, c, command);
    w.metadata("method", to_string(method));
    w.metadata("spectral_window", "max(5 meV, 4.5 hbar*nu_c, emission features); Lorentzian tail estimate beyond");
    std::vector<std::string> errors;
    std::vector<int> codes;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        errors.push_back(results[i].error);
        codes.push_back(results[i].exit_code);
        if (!results[i].value) continue;
        const auto& r = *results[i].value;
        w.row({r.r2, r.T, r.g, r.kappa, r.I_numeric, r.I_analytic, r.E_numeric, r.E_analytic, r.F, r.P_B, r.P_R});
    }
    return report_failures(w, "T", grid, errors, codes);
}

int cmd_fom(const Options& o) {
    const RunConfig c = resolve_config(o);
    return fom_table(o, c, {c.T_point}, "fom");
}

int cmd_sweep(const Options& o) {
    const RunConfig c = resolve_config(o);
    return fom_table(o, c, transmittivity_grid(c), "sweep");
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config_path, "Key-value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out_path, "Output CSV (default: stdout)");
    sub->add_option("--preset", o.preset_name, "Named configuration")
        ->check(CLI::IsMember(preset_names()));
    sub->add_option("--workers", o.workers, "Worker threads for sweeps")->check(CLI::Range(1, 256));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Emitter in a waveguide Fabry-Perot cavity: LDOS, cavity parameters, and "
                 "single-photon figures of merit"};
    app.set_version_flag("--version", std::string(FPCQED_VERSION));
    app.require_subcommand(1);
    Options o;

    auto* ldos = app.add_subcommand("ldos", "Guided-mode LDOS across the resonance");
    add_common(ldos, o);
    auto* params = app.add_subcommand("params", "Cavity parameters g, kappa versus mirror reflectivity");
    add_common(params, o);
    auto* fom = app.add_subcommand("fom", "Figures of merit at one top-mirror transmittivity");
    add_common(fom, o);
    fom->add_option("--method", o.method, "numeric|analytic|both")->check(CLI::IsMember({"numeric", "analytic", "both"}));
    fom->add_option("--T", o.T, "Top-mirror transmittivity T = 1 - r2^2")->check(CLI::Range(0.0, 1.0));
    auto* sweep = app.add_subcommand("sweep", "Figures of merit over a logarithmic transmittivity grid");
    add_common(sweep, o);
    sweep->add_option("--method", o.method, "numeric|analytic|both")->check(CLI::IsMember({"numeric", "analytic", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*ldos) return cmd_ldos(o);
        if (*params) return cmd_params(o);
        if (*fom) return cmd_fom(o);
        if (*sweep) return cmd_sweep(o);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}
