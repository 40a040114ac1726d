#pragma once

#include <complex>
#include <variant>

namespace cpk {

/// Idealized surface: r_s = -1, r_p = +1 at all frequencies and angles.
struct PerfectReflector {};

/// Dissipative metal, eps(w) = 1 - wp^2 / [w (w + i gamma)].
struct DrudeMetal {
  double omega_p;  // plasma frequency, rad/s
  double gamma;    // damping rate, rad/s

  void validate() const;
};

using SurfaceModel = std::variant<PerfectReflector, DrudeMetal>;

inline bool is_perfect(const SurfaceModel& m) {
  return std::holds_alternative<PerfectReflector>(m);
}

/// Drude permittivity at complex frequency. On the positive imaginary axis
/// w = i xi this is real and > 1. Throws for w = 0 (pole) and for the perfect
/// reflector (no finite permittivity; reflection coefficients short-circuit).
std::complex<double> permittivity(const SurfaceModel& model,
                                  std::complex<double> omega);

/// Transverse decay constant inside the medium,
/// b1 = sqrt(b^2 - [eps(w) - 1] w^2 / c^2), branch Re(b1) > 0.
/// When Re(b1) = 0 exactly, the Im(b1) >= 0 branch is selected (the gamma->0+
/// limit of the lossy case).
std::complex<double> b1(const SurfaceModel& model, double b,
                        std::complex<double> omega);

/// Fresnel coefficients in the (b, w) parametrization:
/// r_s = (b - b1)/(b + b1), r_p = (eps b - b1)/(eps b + b1).
std::complex<double> r_s(const SurfaceModel& model, double b,
                         std::complex<double> omega);
std::complex<double> r_p(const SurfaceModel& model, double b,
                         std::complex<double> omega);

}  // namespace cpk
