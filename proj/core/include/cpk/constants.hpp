#pragma once

#include <numbers>
#include <stdexcept>

namespace cpk {

// CODATA-2018 values, SI units throughout. Single authoritative constant set;
// every formula in the engine is wired to this struct.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;   // J s
  double k_B = 1.380649e-23;       // J/K
  double c = 299792458.0;          // m/s
  double eps0 = 8.8541878128e-12;  // F/m
  double mu0 = 1.25663706212e-6;   // H/m
  double debye = 3.33564e-30;      // C m (1 D)
};

inline constexpr PhysicalConstants constants{};

inline constexpr double pi = std::numbers::pi;

/// k_B T / hbar: the frequency scale of thermal fluctuations.
inline double thermal_frequency(double temperature) {
  if (temperature < 0.0)
    throw std::invalid_argument("thermal_frequency: temperature must be >= 0");
  return constants.k_B * temperature / constants.hbar;
}

/// Spacing of the Matsubara ladder, xi = 2 pi k_B T / hbar.
inline double matsubara_spacing(double temperature) {
  return 2.0 * pi * thermal_frequency(temperature);
}

/// Squared dipole matrix element, Debye^2 -> C^2 m^2.
inline double debye2_to_si(double d2_debye2) {
  return d2_debye2 * constants.debye * constants.debye;
}

}  // namespace cpk
