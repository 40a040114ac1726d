#include <doctest.h>

#include <random>

#include "cpk/constants.hpp"
#include "test_helpers.hpp"

using namespace cpk;
using cpk_test::rel_diff;

TEST_SUITE("units") {

TEST_CASE("constant set is internally consistent") {
  // mu0 eps0 c^2 = 1 ties the electromagnetic constants together.
  CHECK(std::abs(constants.mu0 * constants.eps0 * constants.c * constants.c -
                 1.0) < 1e-12);
  CHECK(constants.hbar > 0.0);
  CHECK(constants.k_B > 0.0);
  CHECK(constants.c > 0.0);
  CHECK(constants.eps0 > 0.0);
  CHECK(constants.mu0 > 0.0);
  CHECK(constants.debye > 0.0);
}

TEST_CASE("thermal frequency at room temperature") {
  CHECK(rel_diff(thermal_frequency(300.0), 3.93e13) < 5e-3);
}

TEST_CASE("thermal frequency edge values") {
  CHECK(thermal_frequency(0.0) == 0.0);
  CHECK(thermal_frequency(600.0) == doctest::Approx(2.0 * thermal_frequency(300.0)));
  CHECK_THROWS_AS(thermal_frequency(-1.0), std::invalid_argument);
}

TEST_CASE("thermal frequency is linear in T") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> temp(1e-3, 1e4);
  std::uniform_real_distribution<double> factor(0.25, 8.0);
  for (int i = 0; i < 200; ++i) {
    const double T = temp(rng);
    const double a = factor(rng);
    // exact to round-off: one multiplication each way
    CHECK(thermal_frequency(a * T) ==
          doctest::Approx(a * thermal_frequency(T)).epsilon(1e-14));
  }
}

TEST_CASE("debye conversion") {
  CHECK(debye2_to_si(1.0) ==
        doctest::Approx(3.33564e-30 * 3.33564e-30).epsilon(1e-15));
  CHECK(debye2_to_si(0.0) == 0.0);
}

}  // TEST_SUITE
