// constants.hpp — physical constants (SI) and the unit conventions used throughout.
//
// Unit conventions:
//   - energies are stored as ordinary frequencies E/h in Hz
//   - times in seconds, capacitances in farads, rates in 1/s
//   - angular frequencies omega (rad/s) are formed explicitly as 2*pi*f
//     at the call sites that need them; every function documents whether
//     a frequency argument is ordinary (Hz) or angular (rad/s)

#pragma once

#include <numbers>

namespace lzgen {

inline constexpr double pi = std::numbers::pi;

// CODATA 2018 exact values
inline constexpr double planck_h = 6.62607015e-34;          // J s
inline constexpr double hbar = planck_h / (2.0 * pi);       // J s
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double boltzmann_k = 1.380649e-23;          // J/K
inline constexpr double cooper_pair_charge = 2.0 * elementary_charge;
inline constexpr double flux_quantum = planck_h / cooper_pair_charge; // Wb

} // namespace lzgen
