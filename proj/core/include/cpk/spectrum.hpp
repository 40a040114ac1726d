#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cpk {

/// One transition as seen from the prepared state n: signed frequency
/// omega_kn = (E_k - E_n)/hbar and the isotropic squared dipole element.
struct Transition {
  double omega;  // rad/s, signed (negative = downward)
  double d2;     // C^2 m^2
};

struct Level {
  double energy;  // J
};

/// Undirected transition between two levels of a species.
struct TransitionRecord {
  int from;
  int to;
  double d2;  // C^2 m^2
};

struct Preparation {
  enum class Mode { Eigenstate, ThermalEnsemble };
  Mode mode = Mode::Eigenstate;
  int level = 0;  // eigenstate only
};

struct SpeciesState {
  std::string name;
  std::vector<Level> levels;
  std::vector<TransitionRecord> records;
  Preparation preparation;

  /// Transitions touching `level`, with signed frequencies relative to it.
  std::vector<Transition> transitions_from(int level) const;

  /// Transitions of the prepared eigenstate (throws for thermal preparation).
  std::vector<Transition> prepared_transitions() const;

  /// Level pairs ordered by energy (omega > 0), one per record.
  struct Pair {
    int lower;
    int upper;
    double omega;  // rad/s, > 0
    double d2;     // C^2 m^2
  };
  std::vector<Pair> ordered_pairs() const;

  /// Strongest transition (largest d2) of the prepared state / ensemble.
  Transition dominant_transition() const;

  void validate() const;
};

/// Thermal photon number n(w) = 1/[exp(hbar w / k_B T) - 1], extended to
/// downward transitions by n(-w) = -[n(w) + 1]. At T = 0: 0 for w > 0,
/// -1 for w < 0. Throws for w = 0.
double photon_number(double omega, double temperature);

/// Boltzmann weights p_n at temperature T (> 0), energies shifted by min(E)
/// before exponentiation. Sums to 1 up to round-off.
std::vector<double> boltzmann_weights(const SpeciesState& species,
                                      double temperature);

struct CharacteristicTemperatures {
  double T_omega;  // hbar |w| / k_B
  double T_z;      // hbar c / (z_A k_B)
};
CharacteristicTemperatures characteristic_temperatures(double omega,
                                                       double z_A);

enum class Regime {
  MoleculeInvariant,  // T_omega << T_z: constant at all temperatures
  AtomGeometric,      // T << T_z
  AtomLinear,         // T_z << T << T_omega
  Saturated,          // T >> T_omega
  Crossover,
};

std::string_view regime_label(Regime r);

/// Advisory label from the dominant transition; threshold factor 10 for "<<".
Regime classify_regime(const SpeciesState& species, double z_A,
                       double temperature);

}  // namespace cpk
