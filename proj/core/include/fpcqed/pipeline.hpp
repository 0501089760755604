#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "fpcqed/config.hpp"
#include "fpcqed/figures_of_merit.hpp"
#include "fpcqed/quantum_dynamics.hpp"

namespace fpcqed {

enum class Method { Numeric, Analytic, Both };

Method parse_method(std::string_view text);
std::string to_string(Method m);

/// Named configurations reproducing the published figures.
std::vector<std::string> preset_names();
RunConfig preset(std::string_view name);

/// α giving B⁴ = 0.826 at ν_c = 2.2 ps⁻¹, T = 4.2 K; frozen so runs do not depend on the
/// calibration quadrature.
inline constexpr double kCalibratedAlpha = 0.0293975388308;

/// β* = 0.974 fixes Γ_R = 2Γ_B⁰(1 − β*)/β*.
double radiation_rate_for_beta_star(double gammaB0, double beta_star);

struct LdosRow {
    double omega_fsr = 0.0;  // (ħω − ħω_c) in units of the resonance spacing
    double omega = 0.0;      // μeV
    double ldos = 0.0;       // μeV
};
std::vector<LdosRow> ldos_scan(const RunConfig& config);

struct ParamsRow {
    double r = 0.0;
    CavityParams params;
    LimitValues limits;
};
/// Symmetric cavity r₁ = r₂ = r over the configured reflectivity grid.
std::vector<double> reflectivity_grid(const RunConfig& config);
ParamsRow params_point(const RunConfig& config, double r);

/// Everything derived from the configuration for one top-mirror transmittivity.
struct OperatingPoint {
    double T = 0.0;
    double r2 = 0.0;
    WaveguideCavity structure;  // r₁ = 1, r₂ = √(1 − T)
    RenormalizedRates rates;
    PhononEnvironment phonons;
    double B = 1.0;
    double gamma_tot = 0.0;
    SystemConfig system;

    bool weak_coupling() const { return rates.kappa_star > 10.0 * rates.g; }
};
OperatingPoint operating_point(const RunConfig& config, double T);

struct FomRow {
    double r2 = 0.0;
    double T = 0.0;
    double g = 0.0;
    double kappa = 0.0;  // κ*
    double I_numeric = std::numeric_limits<double>::quiet_NaN();
    double I_analytic = std::numeric_limits<double>::quiet_NaN();
    double E_numeric = std::numeric_limits<double>::quiet_NaN();
    double E_analytic = std::numeric_limits<double>::quiet_NaN();
    double F = 0.0;
    double P_B = std::numeric_limits<double>::quiet_NaN();
    double P_R = std::numeric_limits<double>::quiet_NaN();
    double B = 1.0;
    double gamma_tot = 0.0;
    bool weak_coupling = false;
};

/// Builds the dressed emission spectrum of an operating point.
TwoColourSpectrum operating_spectrum(const OperatingPoint& p);

FomRow run_fom_point(const RunConfig& config, double T, Method method, const FomOptions& options = {});

/// Logarithmic transmittivity grid from the configuration.
std::vector<double> transmittivity_grid(const RunConfig& config);

template <class R>
struct PointResult {
    std::optional<R> value;
    std::string error;
    int exit_code = 0;  // 1 numerical, 2 configuration
};

/// Evaluates fn(0..n−1) on up to `workers` threads. Results keep index order and each failure
/// stays with its point.
template <class R>
std::vector<PointResult<R>> parallel_map(std::size_t n, int workers, const std::function<R(std::size_t)>& fn);

// Implementation.

int exit_code_for(const std::exception& e);

template <class R>
std::vector<PointResult<R>> parallel_map(std::size_t n, int workers, const std::function<R(std::size_t)>& fn) {
    std::vector<PointResult<R>> out(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i].value = fn(i);
            } catch (const std::exception& e) {
                out[i].error = e.what();
                out[i].exit_code = exit_code_for(e);
            }
        }
    };
    const auto count = static_cast<std::size_t>(std::max(1, workers));
    if (count == 1 || n < 2) {
        work();
        return out;
    }
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < std::min(count, n); ++t) threads.emplace_back(work);
    for (auto& t : threads) t.join();
    return out;
}

}  // namespace fpcqed
