#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cpk/material.hpp"
#include "cpk/numerics.hpp"
#include "cpk/spectrum.hpp"

namespace cpk {

struct Scenario {
  SpeciesState species;
  SurfaceModel surface;
  double z_A;          // m
  double temperature;  // K
  Tolerances tol;

  void validate() const;
};

struct ValidityFlags {
  // Set when any z_A |w_kn| / c > 1: the propagating resonant part, which this
  // engine sets to zero, is no longer negligible there.
  bool far_field_warning = false;
};

struct TransitionBreakdown {
  Transition transition;
  double u_nr;  // J
  double u_ev;  // J
};

struct PotentialBreakdown {
  double u_nonresonant;  // J
  double u_evanescent;   // J
  double u_total;        // J (= u_nr + u_ev; propagating part out of scope)
  std::vector<TransitionBreakdown> per_transition;
  Regime regime;
  ValidityFlags validity;
};

/// Nonresonant potential of one transition: Matsubara sum over b-integrals of
/// e^{-2 b z} {2 b^2 c^2 r_p(i xi_j) - xi_j^2 [r_s + r_p](i xi_j)} weighted by
/// w/(w^2 + xi_j^2). Works for any surface; the Drude j=0 reflection is taken
/// at xi = j0_xi_fraction * xi_1 (gamma-regularized static limit).
double nonresonant_transition(const SurfaceModel& surface, double omega,
                              double d2, double z_A, double temperature,
                              const Tolerances& tol,
                              double j0_xi_fraction = 1e-6);

/// Same quantity through the perfect-reflector closed form (b-integrals done
/// analytically). Requires a perfect reflector.
double nonresonant_transition_closed(double omega, double d2, double z_A,
                                     double temperature,
                                     const Tolerances& tol);

/// Evanescent potential of one transition, n(w_kn) times the b-integral of
/// e^{-2 b z} {2 b^2 c^2 Re r_p(w) + w^2 Re[r_s + r_p](w)} at the real
/// transition frequency.
double evanescent_transition(const SurfaceModel& surface, double omega,
                             double d2, double z_A, double temperature,
                             const Tolerances& tol);

/// Perfect-reflector closed form n(w_kn) |d|^2 / (24 pi eps0 z^3).
double evanescent_transition_closed(double omega, double d2, double z_A,
                                    double temperature);

/// Sums over the prepared eigenstate's transitions. Numerical path (any
/// surface); requires T > 0.
double u_nonresonant(const Scenario& sc);

/// Perfect-reflector closed form; throws std::logic_error for other surfaces.
double u_nonresonant_closed(const Scenario& sc);

double u_evanescent(const Scenario& sc);
double u_evanescent_closed(const Scenario& sc);

/// Full breakdown for an eigenstate preparation. Perfect reflectors use the
/// closed path, Drude surfaces the numerical one. T = 0 is evaluated through
/// the zero-temperature limit ladder (perfect reflector only).
PotentialBreakdown u_total_eigenstate(const Scenario& sc);

/// Closed-form asymptotes (perfect-reflector formulas). The caller picks the
/// regime explicitly; nothing is auto-selected.
enum class AsymptoteKind {
  NonresonantGeometric,  // token "eq9":  -sum [n+1/2] d2/(24 pi eps0 z^3)
  TotalConstant,         // token "eq10": -sum d2/(48 pi eps0 z^3)
  NonresonantHighT,      // token "eq11": -sum (kT/hbar w) d2/(24 pi eps0 z^3)
  EvanescentHighT,       // token "eq12": +sum (kT/hbar w - 1/2) d2/(...)
  NonresonantRetarded,   // token "eq14": -sum c d2/(16 pi^2 eps0 z^4 w)
  EvanescentLowT,        // token "eq15": -sum Theta(-w) d2/(24 pi eps0 z^3)
  TotalRetardedLowT,     // token "eq16": retarded + step-function terms
  TotalLinear,           // token "eq17": linear-in-T + step-function terms
  ThermalConstant,       // token "eq19": -sum p_nk d2/(48 pi eps0 z^3)
};

double asymptote(const Scenario& sc, AsymptoteKind kind);

/// Interface tokens used by the CLI (--asymptotes) and report files.
std::string_view asymptote_token(AsymptoteKind kind);
std::optional<AsymptoteKind> asymptote_from_token(std::string_view token);
/// All kinds applicable to the given preparation mode, in token order.
std::vector<AsymptoteKind> asymptotes_for(Preparation::Mode mode);

/// Thermal-ensemble potential, sum over level pairs of
/// (p_n + p_k) tanh(hbar w / 2 k_B T) U^nr_pair.
double u_thermal_state(const Scenario& sc);

struct CasimirResult {
  double closed_form;  // J/m^2, dilute closed form (negative: attractive)
  double numerical;    // J/m^2, distance integral of u_thermal_state
  double tail_fit_deviation;  // certification of the 1/z^3 tail fit
  bool molecule_regime_ok;    // all sampled z_A satisfy z |w|/c <= 0.1
};

/// Casimir energy per unit area of a dilute half-space of number density eta,
/// E(z) = eta int_z^inf U(z_A) dz_A, via both the closed form and numerical
/// integration with an analytic 1/z_A^3 tail beyond 8 z.
CasimirResult casimir_energy_dilute(const SpeciesState& species,
                                    const SurfaceModel& surface, double z,
                                    double temperature, double eta,
                                    const Tolerances& tol = {});

}  // namespace cpk
