#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "fpcqed/phonon_env.hpp"
#include "fpcqed/photonic_structure.hpp"

namespace fpcqed {

/// Everything a CLI run needs. Energies in μeV, lengths in μm.
struct RunConfig {
    std::string name = "custom";
    WaveguideCavity structure;
    PhononEnvironment phonons;
    double omega_X = 0.0;       // ħω_X; 0 means "at the cavity resonance"
    double target_b4 = 0.0;     // > 0 recalibrates α so that B⁴ hits this value
    int n_max = 2;

    // LDOS scan, in units of the Fabry-Pérot resonance spacing around ω_c.
    double ldos_min_fsr = -1.0;
    double ldos_max_fsr = 1.0;
    int ldos_points = 801;

    // Reflectivity sweep for `params`, symmetric cavity.
    double r_min = 0.0;
    double r_max = 0.99;
    int r_points = 100;

    // Transmittivity sweep T = 1 − r₂² for `sweep`, logarithmic.
    double T_min = 1e-3;
    double T_max = 1.0;
    int T_points = 60;

    /// Single-point T for `fom`.
    double T_point = 0.1;

    double carrier() const { return omega_X > 0.0 ? omega_X : structure.omega_c; }
    void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment. Keys absent from the text keep the values
/// in `base`. Throws ConfigError on unknown keys or malformed values.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Key/value pairs in parse_config syntax describing `config`, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config);

}  // namespace fpcqed
