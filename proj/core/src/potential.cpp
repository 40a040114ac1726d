#include "cpk/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "cpk/constants.hpp"
#include "cpk/errors.hpp"

namespace cpk {

namespace {

constexpr double kFarFieldRatio = 1.0;  // z |w|/c beyond which U^pr matters

/// |d|^2 / (24 pi eps0 z^3), the natural energy scale of the near-field forms.
double near_field_scale(double d2, double z) {
  return d2 / (24.0 * pi * constants.eps0 * z * z * z);
}

double step(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); }

void require_eigenstate(const Scenario& sc, const char* who) {
  if (sc.species.preparation.mode != Preparation::Mode::Eigenstate)
    throw std::invalid_argument(std::string(who) +
                                ": requires an eigenstate preparation");
}

void require_positive_T(const Scenario& sc, const char* who) {
  if (!(sc.temperature > 0.0))
    throw std::invalid_argument(
        std::string(who) +
        ": requires T > 0 (T = 0 is served by the closed-form limit ladder "
        "in u_total_eigenstate)");
}

}  // namespace

void Scenario::validate() const {
  species.validate();
  if (const auto* d = std::get_if<DrudeMetal>(&surface)) d->validate();
  if (!(z_A > 0.0)) throw std::invalid_argument("Scenario: z_A must be > 0");
  if (!(temperature >= 0.0))
    throw std::invalid_argument("Scenario: temperature must be >= 0");
  tol.validate();
}

double nonresonant_transition_closed(double omega, double d2, double z_A,
                                     double temperature,
                                     const Tolerances& tol) {
  if (omega == 0.0)
    throw std::invalid_argument("nonresonant_transition_closed: omega = 0");
  if (d2 == 0.0) return 0.0;
  const double xi = matsubara_spacing(temperature);
  const double aa = z_A * xi / constants.c;
  const auto term = [omega, xi, aa](long long j) {
    const double ja = static_cast<double>(j) * aa;
    const double xij = static_cast<double>(j) * xi;
    return omega * std::exp(-2.0 * ja) * (1.0 + 2.0 * ja + 2.0 * ja * ja) /
           (omega * omega + xij * xij);
  };
  const double s = sum_matsubara(term, tol);
  return -constants.k_B * temperature /
         (12.0 * pi * constants.eps0 * constants.hbar * z_A * z_A * z_A) * d2 *
         s;
}

double nonresonant_transition(const SurfaceModel& surface, double omega,
                              double d2, double z_A, double temperature,
                              const Tolerances& tol, double j0_xi_fraction) {
  if (omega == 0.0)
    throw std::invalid_argument("nonresonant_transition: omega = 0");
  if (d2 == 0.0) return 0.0;
  if (!(temperature > 0.0))
    throw std::invalid_argument("nonresonant_transition: requires T > 0");
  const double c = constants.c;
  const double xi = matsubara_spacing(temperature);
  const double prefactor =
      -constants.mu0 * constants.k_B * temperature / (6.0 * pi * constants.hbar) *
      d2;
  const bool perfect = is_perfect(surface);

  // Scale the energy floor out of the prefactor and the largest omega weight.
  Tolerances qtol = tol;
  qtol.abs_floor = tol.abs_floor / (std::abs(prefactor) / std::abs(omega));

  const auto b_integral = [&](double xij, double xi_refl) {
    const auto integrand = [&](double b) -> double {
      double rp, rs;
      if (perfect) {
        rp = 1.0;
        rs = -1.0;
      } else {
        const std::complex<double> iw(0.0, xi_refl);
        rp = r_p(surface, b, iw).real();
        rs = r_s(surface, b, iw).real();
      }
      return std::exp(-2.0 * b * z_A) *
             (2.0 * b * b * c * c * rp - xij * xij * (rs + rp));
    };
    return integrate_decaying(integrand, xij / c, 1.0 / (2.0 * z_A), qtol).value;
  };

  const double xi_static = perfect ? 0.0 : j0_xi_fraction * xi;
  const auto term = [&](long long j) {
    const double xij = static_cast<double>(j) * xi;
    const double weight = omega / (omega * omega + xij * xij);
    // j = 0: the xi^2 bracket term vanishes; r_p is taken in the static limit
    // (identically 1 for a perfect reflector, gamma-regularized for Drude).
    const double xr = (j == 0) ? xi_static : xij;
    return weight * b_integral(xij, xr);
  };
  return prefactor * sum_matsubara(term, tol);
}

double evanescent_transition_closed(double omega, double d2, double z_A,
                                    double temperature) {
  return photon_number(omega, temperature) * near_field_scale(d2, z_A);
}

double evanescent_transition(const SurfaceModel& surface, double omega,
                             double d2, double z_A, double temperature,
                             const Tolerances& tol) {
  const double n = photon_number(omega, temperature);
  if (n == 0.0 || d2 == 0.0) return 0.0;
  const double c = constants.c;
  const double prefactor = constants.mu0 / (12.0 * pi) * n * d2;
  const bool perfect = is_perfect(surface);
  const std::complex<double> w(omega, 0.0);

  Tolerances qtol = tol;
  qtol.abs_floor = tol.abs_floor / std::abs(prefactor);

  const auto integrand = [&](double b) -> double {
    double rp, rs;
    if (perfect) {
      rp = 1.0;
      rs = -1.0;
    } else {
      rp = r_p(surface, b, w).real();
      rs = r_s(surface, b, w).real();
    }
    return std::exp(-2.0 * b * z_A) *
           (2.0 * b * b * c * c * rp + omega * omega * (rs + rp));
  };
  return prefactor *
         integrate_decaying(integrand, 0.0, 1.0 / (2.0 * z_A), qtol).value;
}

double u_nonresonant(const Scenario& sc) {
  sc.validate();
  require_eigenstate(sc, "u_nonresonant");
  require_positive_T(sc, "u_nonresonant");
  KahanAccumulator<double> acc;
  for (const auto& t : sc.species.prepared_transitions())
    acc.add(nonresonant_transition(sc.surface, t.omega, t.d2, sc.z_A,
                                   sc.temperature, sc.tol));
  return acc.value();
}

double u_nonresonant_closed(const Scenario& sc) {
  sc.validate();
  require_eigenstate(sc, "u_nonresonant_closed");
  require_positive_T(sc, "u_nonresonant_closed");
  if (!is_perfect(sc.surface))
    throw std::logic_error(
        "u_nonresonant_closed: closed form is defined for the perfect "
        "reflector only");
  KahanAccumulator<double> acc;
  for (const auto& t : sc.species.prepared_transitions())
    acc.add(nonresonant_transition_closed(t.omega, t.d2, sc.z_A,
                                          sc.temperature, sc.tol));
  return acc.value();
}

double u_evanescent(const Scenario& sc) {
  sc.validate();
  require_eigenstate(sc, "u_evanescent");
  KahanAccumulator<double> acc;
  for (const auto& t : sc.species.prepared_transitions())
    acc.add(evanescent_transition(sc.surface, t.omega, t.d2, sc.z_A,
                                  sc.temperature, sc.tol));
  return acc.value();
}

double u_evanescent_closed(const Scenario& sc) {
  sc.validate();
  require_eigenstate(sc, "u_evanescent_closed");
  if (!is_perfect(sc.surface))
    throw std::logic_error(
        "u_evanescent_closed: closed form is defined for the perfect "
        "reflector only");
  KahanAccumulator<double> acc;
  for (const auto& t : sc.species.prepared_transitions())
    acc.add(evanescent_transition_closed(t.omega, t.d2, sc.z_A,
                                         sc.temperature));
  return acc.value();
}

namespace {

// T = 0 limit ladder, per transition: near-field (geometric) branch for
// z|w|/c <= 1, retarded branch beyond. Perfect-reflector asymptotics.
TransitionBreakdown zero_temperature_rung(const Transition& t, double z) {
  const double n0 = t.omega > 0.0 ? 0.0 : -1.0;
  const double w = near_field_scale(t.d2, z);
  const double r = z * std::abs(t.omega) / constants.c;
  double u_nr;
  if (r <= 1.0) {
    u_nr = -(n0 + 0.5) * w;
  } else {
    u_nr = -constants.c * t.d2 /
           (16.0 * pi * pi * constants.eps0 * z * z * z * z * t.omega);
  }
  return {t, u_nr, n0 * w};
}

}  // namespace

PotentialBreakdown u_total_eigenstate(const Scenario& sc) {
  sc.validate();
  require_eigenstate(sc, "u_total_eigenstate");
  const bool perfect = is_perfect(sc.surface);
  if (sc.temperature == 0.0 && !perfect)
    throw std::invalid_argument(
        "u_total_eigenstate: T = 0 uses the perfect-reflector limit ladder; "
        "for a Drude surface evaluate at a small positive temperature "
        "instead");

  PotentialBreakdown out;
  KahanAccumulator<double> nr, ev;
  for (const auto& t : sc.species.prepared_transitions()) {
    TransitionBreakdown tb{t, 0.0, 0.0};
    if (sc.temperature == 0.0) {
      tb = zero_temperature_rung(t, sc.z_A);
    } else if (perfect) {
      tb.u_nr = nonresonant_transition_closed(t.omega, t.d2, sc.z_A,
                                              sc.temperature, sc.tol);
      tb.u_ev = evanescent_transition_closed(t.omega, t.d2, sc.z_A,
                                             sc.temperature);
    } else {
      tb.u_nr = nonresonant_transition(sc.surface, t.omega, t.d2, sc.z_A,
                                       sc.temperature, sc.tol);
      tb.u_ev = evanescent_transition(sc.surface, t.omega, t.d2, sc.z_A,
                                      sc.temperature, sc.tol);
    }
    if (sc.z_A * std::abs(t.omega) / constants.c > kFarFieldRatio)
      out.validity.far_field_warning = true;
    nr.add(tb.u_nr);
    ev.add(tb.u_ev);
    out.per_transition.push_back(tb);
  }
  out.u_nonresonant = nr.value();
  out.u_evanescent = ev.value();
  out.u_total = out.u_nonresonant + out.u_evanescent;
  out.regime = classify_regime(sc.species, sc.z_A, sc.temperature);
  return out;
}

double asymptote(const Scenario& sc, AsymptoteKind kind) {
  sc.validate();
  const double z = sc.z_A;
  const double T = sc.temperature;
  const double kT_over_hbar = thermal_frequency(T);

  if (kind == AsymptoteKind::ThermalConstant) {
    if (sc.species.preparation.mode != Preparation::Mode::ThermalEnsemble)
      throw std::invalid_argument(
          "asymptote: thermal-state form requires a thermal ensemble");
    const auto p = boltzmann_weights(sc.species, T);
    KahanAccumulator<double> acc;
    for (const auto& pr : sc.species.ordered_pairs())
      acc.add(-(p[pr.lower] + p[pr.upper]) * 0.5 *
              near_field_scale(pr.d2, z));
    return acc.value();
  }

  require_eigenstate(sc, "asymptote");
  KahanAccumulator<double> acc;
  for (const auto& t : sc.species.prepared_transitions()) {
    const double w = near_field_scale(t.d2, z);
    const double retarded =
        -constants.c * t.d2 /
        (16.0 * pi * pi * constants.eps0 * z * z * z * z * t.omega);
    switch (kind) {
      case AsymptoteKind::NonresonantGeometric:
        acc.add(-(photon_number(t.omega, T) + 0.5) * w);
        break;
      case AsymptoteKind::TotalConstant:
        acc.add(-0.5 * w);
        break;
      case AsymptoteKind::NonresonantHighT:
        acc.add(-(kT_over_hbar / t.omega) * w);
        break;
      case AsymptoteKind::EvanescentHighT:
        acc.add((kT_over_hbar / t.omega - 0.5) * w);
        break;
      case AsymptoteKind::NonresonantRetarded:
        acc.add(retarded);
        break;
      case AsymptoteKind::EvanescentLowT:
        acc.add(-step(-t.omega) * w);
        break;
      case AsymptoteKind::TotalRetardedLowT:
        acc.add(retarded - step(-t.omega) * w);
        break;
      case AsymptoteKind::TotalLinear:
        acc.add(-(kT_over_hbar / t.omega + step(-t.omega)) * w);
        break;
      case AsymptoteKind::ThermalConstant:
        break;  // handled above
    }
  }
  return acc.value();
}

std::string_view asymptote_token(AsymptoteKind kind) {
  switch (kind) {
    case AsymptoteKind::NonresonantGeometric: return "eq9";
    case AsymptoteKind::TotalConstant: return "eq10";
    case AsymptoteKind::NonresonantHighT: return "eq11";
    case AsymptoteKind::EvanescentHighT: return "eq12";
    case AsymptoteKind::NonresonantRetarded: return "eq14";
    case AsymptoteKind::EvanescentLowT: return "eq15";
    case AsymptoteKind::TotalRetardedLowT: return "eq16";
    case AsymptoteKind::TotalLinear: return "eq17";
    case AsymptoteKind::ThermalConstant: return "eq19";
  }
  return "unknown";
}

std::optional<AsymptoteKind> asymptote_from_token(std::string_view token) {
  for (AsymptoteKind k :
       {AsymptoteKind::NonresonantGeometric, AsymptoteKind::TotalConstant,
        AsymptoteKind::NonresonantHighT, AsymptoteKind::EvanescentHighT,
        AsymptoteKind::NonresonantRetarded, AsymptoteKind::EvanescentLowT,
        AsymptoteKind::TotalRetardedLowT, AsymptoteKind::TotalLinear,
        AsymptoteKind::ThermalConstant})
    if (asymptote_token(k) == token) return k;
  return std::nullopt;
}

std::vector<AsymptoteKind> asymptotes_for(Preparation::Mode mode) {
  if (mode == Preparation::Mode::ThermalEnsemble)
    return {AsymptoteKind::ThermalConstant};
  return {AsymptoteKind::NonresonantGeometric, AsymptoteKind::TotalConstant,
          AsymptoteKind::NonresonantHighT, AsymptoteKind::EvanescentHighT,
          AsymptoteKind::NonresonantRetarded, AsymptoteKind::EvanescentLowT,
          AsymptoteKind::TotalRetardedLowT, AsymptoteKind::TotalLinear};
}

double u_thermal_state(const Scenario& sc) {
  sc.validate();
  if (sc.species.preparation.mode != Preparation::Mode::ThermalEnsemble)
    throw std::invalid_argument(
        "u_thermal_state: requires a thermal-ensemble preparation");
  require_positive_T(sc, "u_thermal_state");
  const auto p = boltzmann_weights(sc.species, sc.temperature);
  const bool perfect = is_perfect(sc.surface);
  KahanAccumulator<double> acc;
  for (const auto& pr : sc.species.ordered_pairs()) {
    const double u_nr =
        perfect ? nonresonant_transition_closed(pr.omega, pr.d2, sc.z_A,
                                                sc.temperature, sc.tol)
                : nonresonant_transition(sc.surface, pr.omega, pr.d2, sc.z_A,
                                         sc.temperature, sc.tol);
    const double th = std::tanh(constants.hbar * pr.omega /
                                (2.0 * constants.k_B * sc.temperature));
    acc.add((p[pr.lower] + p[pr.upper]) * th * u_nr);
  }
  return acc.value();
}

CasimirResult casimir_energy_dilute(const SpeciesState& species,
                                    const SurfaceModel& surface, double z,
                                    double temperature, double eta,
                                    const Tolerances& tol) {
  if (!(eta > 0.0))
    throw std::invalid_argument("casimir_energy_dilute: eta must be > 0");
  if (!(z > 0.0))
    throw std::invalid_argument("casimir_energy_dilute: z must be > 0");
  species.validate();
  if (species.preparation.mode != Preparation::Mode::ThermalEnsemble)
    throw std::invalid_argument(
        "casimir_energy_dilute: requires a thermal-ensemble species");
  tol.validate();

  const auto p = boltzmann_weights(species, temperature);
  KahanAccumulator<double> closed;
  double omega_max = 0.0;
  for (const auto& pr : species.ordered_pairs()) {
    closed.add(-eta * (p[pr.lower] + p[pr.upper]) * pr.d2 /
               (96.0 * pi * constants.eps0 * z * z));
    omega_max = std::max(omega_max, pr.omega);
  }

  const auto u_at = [&](double z_A) {
    Scenario sc{species, surface, z_A, temperature, tol};
    return u_thermal_state(sc);
  };

  const double z_cut = 8.0 * z;
  const IntegralResult body = integrate_adaptive(
      u_at, z, z_cut, std::max(tol.rel_tol, 1e-8), tol.abs_floor * z,
      tol.max_quad_depth);
  // Beyond the cutoff the potential is certified to follow C / z_A^3.
  const double coeff = u_at(z_cut) * z_cut * z_cut * z_cut;
  const double coeff2 = u_at(2.0 * z_cut) * 8.0 * z_cut * z_cut * z_cut;
  const double tail = coeff / (2.0 * z_cut * z_cut);

  CasimirResult out;
  out.closed_form = closed.value();
  out.numerical = eta * (body.value + tail);
  out.tail_fit_deviation = std::abs(coeff2 / coeff - 1.0);
  out.molecule_regime_ok =
      (2.0 * z_cut * omega_max / constants.c) <= 0.1;
  return out;
}

}  // namespace cpk
