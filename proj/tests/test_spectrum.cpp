#include <doctest.h>

#include <cmath>
#include <random>

#include "cpk/constants.hpp"
#include "cpk/spectrum.hpp"
#include "test_helpers.hpp"

using namespace cpk;
using cpk_test::rel_diff;

namespace {

SpeciesState three_levels(double e1, double e2) {
  SpeciesState s;
  s.name = "three-level";
  s.levels = {{0.0}, {e1}, {e2}};
  s.records = {{0, 1, 1e-60}, {1, 2, 1e-60}};
  s.preparation.mode = Preparation::Mode::ThermalEnsemble;
  return s;
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("photon number at hbar w = k_B T") {
  const double T = 100.0;
  const double w = constants.k_B * T / constants.hbar;
  CHECK(photon_number(w, T) ==
        doctest::Approx(0.58197670686932642).epsilon(1e-12));
}

TEST_CASE("photon number downward rule and T = 0") {
  const double w = 3e13, T = 250.0;
  CHECK(photon_number(-w, T) == -(photon_number(w, T) + 1.0));
  CHECK(photon_number(w, 0.0) == 0.0);
  CHECK(photon_number(-w, 0.0) == -1.0);
  CHECK_THROWS_AS(photon_number(0.0, 300.0), std::invalid_argument);
}

TEST_CASE("photon number classical limit") {
  // hbar w / k_B T = 1e-6: n = 1/x - 1/2 + x/12 to high accuracy
  const double T = 300.0;
  const double x = 1e-6;
  const double w = x * constants.k_B * T / constants.hbar;
  const double series = 1.0 / x - 0.5 + x / 12.0;
  CHECK(rel_diff(photon_number(w, T), series) < 1e-3);
  CHECK(rel_diff(photon_number(w, T), 1e6 - 0.5) < 1e-3);
}

TEST_CASE("photon number identity n(-w) + n(w) = -1") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> lx(-3.0, 2.0);
  std::uniform_real_distribution<double> lt(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double T = std::pow(10.0, lt(rng));
    const double x = std::pow(10.0, lx(rng));
    const double w = x * constants.k_B * T / constants.hbar;
    const double n = photon_number(w, T);
    CHECK(std::abs(photon_number(-w, T) + n + 1.0) <=
          4.0 * std::numeric_limits<double>::epsilon() * (2.0 + n));
  }
}

TEST_CASE("photon number increases with temperature") {
  const double w = 5e13;
  double prev = photon_number(w, 1.0);
  for (double T = 2.0; T < 2000.0; T *= 1.5) {
    const double n = photon_number(w, T);
    CHECK(n > prev);
    prev = n;
  }
}

TEST_CASE("boltzmann weights: forced ratios") {
  const double T = 150.0;
  const double kT = constants.k_B * T;
  SUBCASE("two levels split by kT ln 2 gives (2/3, 1/3)") {
    auto s = cpk_test::two_level_thermal(kT * std::log(2.0) / constants.hbar,
                                         1e-60);
    const auto p = boltzmann_weights(s, T);
    CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("near-degenerate pair equipartitions") {
    auto s = cpk_test::two_level_thermal(1e-8 * kT / constants.hbar, 1e-60);
    const auto p = boltzmann_weights(s, T);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-7));
  }
  SUBCASE("three levels at spacings kT and 2kT") {
    auto s = three_levels(kT, 3.0 * kT);
    const auto p = boltzmann_weights(s, T);
    const double z = 1.0 + std::exp(-1.0) + std::exp(-3.0);
    CHECK(p[0] == doctest::Approx(1.0 / z).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(std::exp(-1.0) / z).epsilon(1e-12));
    CHECK(p[2] == doctest::Approx(std::exp(-3.0) / z).epsilon(1e-12));
  }
}

TEST_CASE("boltzmann weights sum to one and shift-invariance") {
  const double T = 77.0;
  auto s = three_levels(2.1e-21, 5.3e-21);
  const auto p = boltzmann_weights(s, T);
  double sum = 0.0;
  for (double v : p) sum += v;
  CHECK(std::abs(sum - 1.0) < 1e-12);

  auto shifted = s;
  for (auto& lvl : shifted.levels) lvl.energy += 4.2e-20;
  const auto q = boltzmann_weights(shifted, T);
  for (size_t i = 0; i < p.size(); ++i) CHECK(p[i] == q[i]);
}

TEST_CASE("boltzmann weights reject T <= 0") {
  auto s = three_levels(1e-21, 2e-21);
  CHECK_THROWS_AS(boltzmann_weights(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(boltzmann_weights(s, -5.0), std::invalid_argument);
}

TEST_CASE("characteristic temperatures") {
  SUBCASE("crossover at z |w| / c = 1") {
    const double z = 3e-6;
    const double w = constants.c / z;
    const auto ct = characteristic_temperatures(w, z);
    CHECK(ct.T_omega == doctest::Approx(ct.T_z).epsilon(1e-14));
  }
  SUBCASE("room-temperature frequency maps back to ~300 K") {
    const auto ct = characteristic_temperatures(3.93e13, 5e-6);
    CHECK(rel_diff(ct.T_omega, 300.0) < 5e-3);
  }
  SUBCASE("ratio equals z |w| / c") {
    const double z = 5e-6;
    const double w = 0.046 * constants.c / z;
    const auto ct = characteristic_temperatures(w, z);
    CHECK(ct.T_omega / ct.T_z == doctest::Approx(0.046).epsilon(1e-12));
  }
  SUBCASE("signed frequency uses |w|") {
    const auto a = characteristic_temperatures(1e13, 1e-6);
    const auto b = characteristic_temperatures(-1e13, 1e-6);
    CHECK(a.T_omega == b.T_omega);
  }
}

TEST_CASE("regime classification of the bundled ratios") {
  const double z = 5e-6;
  const double d2 = cpk_test::d2_one_debye2();
  auto lih = cpk_test::species_with_ratio(0.046, z, d2);
  auto rb = cpk_test::species_with_ratio(40.2, z, d2);
  auto ybf = cpk_test::species_with_ratio(1.59, z, d2);

  for (double T : {0.0, 1.0, 77.0, 300.0, 600.0})
    CHECK(classify_regime(lih, z, T) == Regime::MoleculeInvariant);
  CHECK(classify_regime(rb, z, 300.0) == Regime::AtomLinear);
  CHECK(regime_label(classify_regime(rb, z, 300.0)) == "linear regime");
  CHECK(classify_regime(ybf, z, 300.0) == Regime::Crossover);
  CHECK(classify_regime(ybf, z, 1.0) == Regime::Crossover);

  // deep limits of the atom branch
  CHECK(classify_regime(rb, z, 1.0) == Regime::AtomGeometric);
  CHECK(classify_regime(rb, z, 1e6) == Regime::Saturated);
}

TEST_CASE("regime classification is scale invariant") {
  // depends only on T/T_z and T/T_omega: rescale z and omega together
  const double d2 = cpk_test::d2_one_debye2();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> lr(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double ratio = std::pow(10.0, lr(rng));
    const double T = std::pow(10.0, lr(rng)) * 30.0;
    const double z1 = 5e-6, z2 = 5e-4;
    auto s1 = cpk_test::species_with_ratio(ratio, z1, d2);
    auto s2 = cpk_test::species_with_ratio(ratio, z2, d2);
    // same T/T_z requires T2 = T1 * (z1/z2)
    CHECK(classify_regime(s1, z1, T) == classify_regime(s2, z2, T * z1 / z2));
  }
}

TEST_CASE("species validation") {
  SpeciesState s;
  s.name = "broken";
  s.levels = {{0.0}, {0.0}};
  s.records = {{0, 1, 1e-60}};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);  // degenerate pair
  s.levels[1].energy = 1e-21;
  s.records[0].d2 = -1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);  // negative strength
  s.records[0].d2 = 1e-60;
  s.records[0].to = 7;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);  // bad index
  s.records[0].to = 1;
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("prepared transitions are signed relative to the state") {
  auto ground = cpk_test::two_level(2e13, 1e-60, false);
  auto excited = cpk_test::two_level(2e13, 1e-60, true);
  CHECK(ground.prepared_transitions()[0].omega == doctest::Approx(2e13));
  CHECK(excited.prepared_transitions()[0].omega == doctest::Approx(-2e13));
  CHECK(ground.ordered_pairs()[0].omega > 0.0);
  CHECK(ground.ordered_pairs()[0].lower == 0);
}

}  // TEST_SUITE
