#pragma once

// Unit system used throughout the library:
//   energies and rates   ħ × angular frequency, in μeV
//   lengths              μm
//   times                ps
//   phonon frequencies   ps⁻¹ (angular)

namespace fpcqed::units {

inline constexpr double kPi = 3.14159265358979323846;

/// ħc in μeV·μm.
inline constexpr double kHbarC = 197326.98;

/// ħ in μeV·ps.
inline constexpr double kHbar = 658.2120;

/// Boltzmann constant in μeV/K.
inline constexpr double kBoltzmann = 86.173333;

inline constexpr double to_per_ps(double energy_ueV) { return energy_ueV / kHbar; }
inline constexpr double to_ueV(double rate_per_ps) { return rate_per_ps * kHbar; }

/// Photon energy ħω (μeV) of vacuum wavelength λ (μm).
inline constexpr double photon_energy(double wavelength_um) {
    return 2.0 * kPi * kHbarC / wavelength_um;
}

}  // namespace fpcqed::units
