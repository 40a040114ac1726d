#include "cpk/material.hpp"

#include <cmath>
#include <stdexcept>

#include "cpk/constants.hpp"

namespace cpk {

using cplx = std::complex<double>;

void DrudeMetal::validate() const {
  if (!(omega_p > 0.0))
    throw std::invalid_argument("DrudeMetal: omega_p must be > 0");
  if (!(gamma >= 0.0))
    throw std::invalid_argument("DrudeMetal: gamma must be >= 0");
}

cplx permittivity(const SurfaceModel& model, cplx omega) {
  if (is_perfect(model))
    throw std::invalid_argument(
        "permittivity: the perfect reflector has no finite permittivity");
  const auto& d = std::get<DrudeMetal>(model);
  if (omega == cplx(0.0, 0.0))
    throw std::invalid_argument(
        "permittivity: Drude model is singular at omega = 0; the j = 0 "
        "Matsubara term must use its dedicated static limit");
  return 1.0 - d.omega_p * d.omega_p / (omega * (omega + cplx(0.0, d.gamma)));
}

cplx b1(const SurfaceModel& model, double b, cplx omega) {
  if (b < 0.0) throw std::invalid_argument("b1: b must be >= 0");
  const cplx eps = permittivity(model, omega);
  const double c = constants.c;
  cplx root = std::sqrt(b * b - (eps - 1.0) * omega * omega / (c * c));
  if (root.real() < 0.0) root = -root;
  // Re(b1) = 0: pick Im >= 0, the gamma -> 0+ limit of the lossy branch.
  if (root.real() == 0.0 && root.imag() < 0.0) root = -root;
  return root;
}

namespace {

void check_rs_rp_args(double b, cplx omega) {
  if (b < 0.0) throw std::invalid_argument("reflection: b must be >= 0");
  if (b == 0.0 && omega == cplx(0.0, 0.0))
    throw std::invalid_argument("reflection: (b, omega) = (0, 0) is singular");
}

}  // namespace

cplx r_s(const SurfaceModel& model, double b, cplx omega) {
  check_rs_rp_args(b, omega);
  if (is_perfect(model)) return {-1.0, 0.0};
  const cplx q = b1(model, b, omega);
  const cplx den = b + q;
  if (std::abs(den) == 0.0)
    throw std::invalid_argument("r_s: vanishing denominator b + b1");
  return (b - q) / den;
}

cplx r_p(const SurfaceModel& model, double b, cplx omega) {
  check_rs_rp_args(b, omega);
  if (is_perfect(model)) return {1.0, 0.0};
  const cplx eps = permittivity(model, omega);
  const cplx q = b1(model, b, omega);
  const cplx den = eps * b + q;
  if (std::abs(den) == 0.0)
    throw std::invalid_argument("r_p: vanishing denominator eps b + b1");
  return (eps * b - q) / den;
}

}  // namespace cpk
