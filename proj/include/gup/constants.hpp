#pragma once

#include <numbers>

// CODATA 2018 values, SI units.
namespace gup::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double elementary_charge = 1.602176634e-19;   // C
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double hbar = 1.054571817e-34;                // J s
inline constexpr double newton_g = 6.67430e-11;                // m^3 kg^-1 s^-2
inline constexpr double speed_of_light = 299792458.0;          // m/s
inline constexpr double alpha_particle_mass = 6.6446573357e-27;  // kg
inline constexpr double mev = 1.602176634e-13;                 // J per MeV

}  // namespace gup::constants
