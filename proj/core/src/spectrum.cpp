#include "cpk/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cpk/constants.hpp"
#include "cpk/numerics.hpp"

namespace cpk {

std::vector<Transition> SpeciesState::transitions_from(int level) const {
  if (level < 0 || level >= static_cast<int>(levels.size()))
    throw std::invalid_argument("transitions_from: level index out of range");
  std::vector<Transition> out;
  const double E_n = levels[level].energy;
  for (const auto& rec : records) {
    int other = -1;
    if (rec.from == level)
      other = rec.to;
    else if (rec.to == level)
      other = rec.from;
    else
      continue;
    out.push_back({(levels[other].energy - E_n) / constants.hbar, rec.d2});
  }
  return out;
}

std::vector<Transition> SpeciesState::prepared_transitions() const {
  if (preparation.mode != Preparation::Mode::Eigenstate)
    throw std::invalid_argument(
        "prepared_transitions: species is prepared as a thermal ensemble");
  return transitions_from(preparation.level);
}

std::vector<SpeciesState::Pair> SpeciesState::ordered_pairs() const {
  std::vector<Pair> out;
  for (const auto& rec : records) {
    const bool from_lower = levels[rec.from].energy < levels[rec.to].energy;
    const int lo = from_lower ? rec.from : rec.to;
    const int hi = from_lower ? rec.to : rec.from;
    out.push_back({lo, hi,
                   (levels[hi].energy - levels[lo].energy) / constants.hbar,
                   rec.d2});
  }
  return out;
}

Transition SpeciesState::dominant_transition() const {
  std::vector<Transition> pool;
  if (preparation.mode == Preparation::Mode::Eigenstate) {
    pool = prepared_transitions();
  } else {
    for (const auto& p : ordered_pairs()) pool.push_back({p.omega, p.d2});
  }
  if (pool.empty())
    throw std::invalid_argument("dominant_transition: species has no transitions");
  return *std::max_element(pool.begin(), pool.end(),
                           [](const Transition& a, const Transition& b) {
                             return a.d2 < b.d2;
                           });
}

void SpeciesState::validate() const {
  if (levels.empty())
    throw std::invalid_argument("species '" + name + "': no levels");
  for (const auto& lvl : levels)
    if (!std::isfinite(lvl.energy))
      throw std::invalid_argument("species '" + name + "': non-finite energy");
  const int n = static_cast<int>(levels.size());
  for (const auto& rec : records) {
    if (rec.from < 0 || rec.from >= n || rec.to < 0 || rec.to >= n)
      throw std::invalid_argument("species '" + name +
                                  "': transition level index out of range");
    if (rec.from == rec.to)
      throw std::invalid_argument("species '" + name +
                                  "': transition connects a level to itself");
    if (levels[rec.from].energy == levels[rec.to].energy)
      throw std::invalid_argument(
          "species '" + name +
          "': degenerate transition (omega_kn = 0 is not allowed)");
    if (!(rec.d2 >= 0.0))
      throw std::invalid_argument("species '" + name + "': d2 must be >= 0");
  }
  if (preparation.mode == Preparation::Mode::Eigenstate) {
    if (preparation.level < 0 || preparation.level >= n)
      throw std::invalid_argument("species '" + name +
                                  "': prepared level index out of range");
  }
}

double photon_number(double omega, double temperature) {
  if (omega == 0.0)
    throw std::invalid_argument("photon_number: omega = 0 is singular");
  if (temperature < 0.0)
    throw std::invalid_argument("photon_number: temperature must be >= 0");
  if (omega < 0.0) return -(photon_number(-omega, temperature) + 1.0);
  if (temperature == 0.0) return 0.0;
  const double x = constants.hbar * omega / (constants.k_B * temperature);
  return 1.0 / std::expm1(x);  // exact for x << 1, underflows cleanly to 0
}

std::vector<double> boltzmann_weights(const SpeciesState& species,
                                      double temperature) {
  if (!(temperature > 0.0))
    throw std::invalid_argument(
        "boltzmann_weights: requires T > 0 (use an eigenstate preparation "
        "for the T = 0 ground state)");
  const double kT = constants.k_B * temperature;
  double emin = std::numeric_limits<double>::infinity();
  for (const auto& lvl : species.levels) emin = std::min(emin, lvl.energy);

  std::vector<double> w(species.levels.size());
  KahanAccumulator<double> norm;
  for (size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(-(species.levels[i].energy - emin) / kT);
    norm.add(w[i]);
  }
  const double z = norm.value();
  for (auto& v : w) v /= z;
  return w;
}

CharacteristicTemperatures characteristic_temperatures(double omega,
                                                       double z_A) {
  if (omega == 0.0)
    throw std::invalid_argument("characteristic_temperatures: omega = 0");
  if (!(z_A > 0.0))
    throw std::invalid_argument("characteristic_temperatures: z_A must be > 0");
  return {constants.hbar * std::abs(omega) / constants.k_B,
          constants.hbar * constants.c / (z_A * constants.k_B)};
}

std::string_view regime_label(Regime r) {
  switch (r) {
    case Regime::MoleculeInvariant: return "temperature-invariant (molecule)";
    case Regime::AtomGeometric: return "geometric low-temperature (atom)";
    case Regime::AtomLinear: return "linear regime";
    case Regime::Saturated: return "saturated";
    case Regime::Crossover: return "crossover";
  }
  return "unknown";
}

Regime classify_regime(const SpeciesState& species, double z_A,
                       double temperature) {
  if (temperature < 0.0)
    throw std::invalid_argument("classify_regime: temperature must be >= 0");
  const Transition dom = species.dominant_transition();
  const auto [T_omega, T_z] = characteristic_temperatures(dom.omega, z_A);
  constexpr double k = 10.0;  // a << b  <=>  a < b/10
  if (k * T_omega < T_z) return Regime::MoleculeInvariant;
  if (k * T_z < T_omega) {
    if (temperature > k * T_omega) return Regime::Saturated;
    if (k * temperature < T_z) return Regime::AtomGeometric;
    return Regime::AtomLinear;
  }
  return Regime::Crossover;
}

}  // namespace cpk
