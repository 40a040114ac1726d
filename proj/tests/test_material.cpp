#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "cpk/constants.hpp"
#include "cpk/material.hpp"
#include "test_helpers.hpp"

using namespace cpk;
using cplx = std::complex<double>;
using cpk_test::kGold;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

// Independent direct evaluation of the Fresnel pair, kept free of the library
// implementation (plain formulas, principal square root fixed up by hand).
struct OracleRefl {
  cplx rs, rp;
};
OracleRefl oracle_drude(const DrudeMetal& m, double b, cplx w) {
  const cplx eps =
      1.0 - m.omega_p * m.omega_p / (w * (w + cplx(0.0, m.gamma)));
  cplx q = std::sqrt(b * b - (eps - 1.0) * w * w / (constants.c * constants.c));
  if (q.real() < 0.0 || (q.real() == 0.0 && q.imag() < 0.0)) q = -q;
  return {(b - q) / (b + q), (eps * b - q) / (eps * b + q)};
}

}  // namespace

TEST_SUITE("material") {

TEST_CASE("drude permittivity on the imaginary axis") {
  const DrudeMetal m{1.0e15, 0.0};
  // xi = omega_p gives eps = 1 + omega_p^2/xi^2 = 2
  CHECK(permittivity(m, cplx(0.0, 1.0e15)).real() == doctest::Approx(2.0));
  CHECK(permittivity(m, cplx(0.0, 1.0e15)).imag() == doctest::Approx(0.0));
  // transparency at high frequency
  CHECK(permittivity(m, cplx(0.0, 1.0e22)).real() == doctest::Approx(1.0));
}

TEST_CASE("drude permittivity at the first Matsubara frequency of 300 K") {
  const double xi1 = matsubara_spacing(300.0);
  const double eps = permittivity(kGold, cplx(0.0, xi1)).real();
  const double direct = 1.0 + kGold.omega_p * kGold.omega_p /
                                  (xi1 * (xi1 + kGold.gamma));
  CHECK(eps == doctest::Approx(direct).epsilon(1e-12));
  CHECK(eps > 2.6e3);
  CHECK(eps < 2.7e3);
}

TEST_CASE("drude permittivity rejects omega = 0") {
  CHECK_THROWS_AS(permittivity(kGold, cplx(0.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(permittivity(SurfaceModel{PerfectReflector{}}, cplx(1.0, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("eps(i xi) is real, > 1 and decreasing for Drude") {
  double prev = std::numeric_limits<double>::infinity();
  for (double xi : log_grid(1e10, 1e20, 40)) {
    const cplx e = permittivity(kGold, cplx(0.0, xi));
    CHECK(e.imag() == doctest::Approx(0.0));
    CHECK(e.real() > 1.0);
    CHECK(e.real() < prev);
    prev = e.real();
  }
}

TEST_CASE("b1 reduces to b in vacuum") {
  // eps = 1: an omega_p -> 0 proxy cannot be built (omega_p > 0), so probe a
  // tiny plasma frequency where eps - 1 ~ 1e-28.
  const DrudeMetal weak{1.0, 0.0};
  const double b = 123.0;
  const cplx q = b1(weak, b, cplx(0.0, 1e14));
  CHECK(q.real() == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("b1 branch: pure-imaginary result takes Im >= 0") {
  // On the lower imaginary half-axis with |omega| < gamma, (eps - 1) omega^2
  // is real positive, so at b = 0 the argument of the root is negative real
  // and b1 is pure imaginary: the tie-break must select Im >= 0.
  const double y = 2.0e13;
  const cplx q = b1(kGold, 0.0, cplx(0.0, -y));
  CHECK(q.real() == 0.0);
  CHECK(q.imag() > 0.0);
  // (eps - 1) omega^2 = omega_p^2 y / (gamma - y) there
  const double expect =
      std::sqrt(kGold.omega_p * kGold.omega_p * y / (kGold.gamma - y)) /
      constants.c;
  CHECK(std::abs(q) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("b1 on the imaginary axis is real positive") {
  for (double xi : log_grid(1e12, 1e16, 12)) {
    for (double b : log_grid(1e2, 1e9, 12)) {
      const cplx q = b1(kGold, b, cplx(0.0, xi));
      CHECK(q.imag() == doctest::Approx(0.0));
      CHECK(q.real() > 0.0);
      const double eps = permittivity(kGold, cplx(0.0, xi)).real();
      const double direct = std::sqrt(
          b * b + (eps - 1.0) * xi * xi / (constants.c * constants.c));
      CHECK(q.real() == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("Re(b1) >= 0 everywhere sampled") {
  for (double wr : log_grid(1e11, 1e16, 10))
    for (double b : log_grid(1e1, 1e9, 10)) {
      CHECK(b1(kGold, b, cplx(wr, 0.0)).real() >= 0.0);
      CHECK(b1(kGold, b, cplx(0.0, wr)).real() >= 0.0);
    }
}

TEST_CASE("perfect reflector short-circuits") {
  const SurfaceModel perfect = PerfectReflector{};
  CHECK(r_s(perfect, 1.0, cplx(1e15, 0.0)) == cplx(-1.0, 0.0));
  CHECK(r_p(perfect, 1.0, cplx(1e15, 0.0)) == cplx(1.0, 0.0));
  CHECK(r_s(perfect, 0.0, cplx(0.0, 1e12)) == cplx(-1.0, 0.0));
}

TEST_CASE("reflection rejects the (0, 0) corner") {
  CHECK_THROWS_AS(r_s(SurfaceModel{PerfectReflector{}}, 0.0, cplx(0.0, 0.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(r_p(SurfaceModel{kGold}, -1.0, cplx(0.0, 1e12)),
                  std::invalid_argument);
}

TEST_CASE("huge permittivity limit gives r_s -> -1, r_p -> +1") {
  const DrudeMetal huge{1.0e22, 0.0};
  const double b = 1e6;
  const cplx w(1e13, 0.0);
  CHECK(std::abs(r_s(huge, b, w) - cplx(-1.0, 0.0)) < 1e-3);
  CHECK(std::abs(r_p(huge, b, w) - cplx(1.0, 0.0)) < 1e-3);
}

TEST_CASE("no interface: eps -> 1 gives vanishing reflection") {
  const DrudeMetal weak{1.0, 0.0};  // eps - 1 ~ 1e-28 at omega ~ 1e14
  CHECK(std::abs(r_s(weak, 1e5, cplx(0.0, 1e14))) < 1e-12);
  CHECK(std::abs(r_p(weak, 1e5, cplx(0.0, 1e14))) < 1e-12);
}

TEST_CASE("imaginary-axis reflection ranges for Drude") {
  // On the Matsubara domain b >= xi/c: -1 <= r_s <= 0 and 0 <= r_p <= 1.
  for (double xi : log_grid(1e11, 1e16, 15)) {
    for (double mult : log_grid(1.0, 1e6, 15)) {
      const double b = mult * xi / constants.c;
      const cplx w(0.0, xi);
      const double rs = r_s(kGold, b, w).real();
      const double rp = r_p(kGold, b, w).real();
      CHECK(r_s(kGold, b, w).imag() == doctest::Approx(0.0));
      CHECK(rs <= 0.0);
      CHECK(rs >= -1.0);
      CHECK(rp >= 0.0);
      CHECK(rp <= 1.0);
    }
  }
}

TEST_CASE("evanescent reflection vs independent oracle; s passivity") {
  // |r_s| <= 1 follows from Re(b1) > 0 and holds everywhere. p-polarized
  // evanescent reflection is NOT bounded by 1: near the quasi-plasmon pole
  // |r_p| reaches O(10) on this grid. Assert the oracle agreement and the
  // honest bounds.
  double max_rs = 0.0, max_rp = 0.0;
  for (double w : log_grid(1e11, 1e14, 25)) {
    for (double mult : log_grid(1e-3, 1e8, 30)) {
      const double b = mult * w / constants.c;
      if (b == 0.0) continue;
      const cplx wr(w, 0.0);
      const auto oracle = oracle_drude(kGold, b, wr);
      CHECK(std::abs(r_s(kGold, b, wr) - oracle.rs) <=
            1e-12 * std::max(1.0, std::abs(oracle.rs)));
      CHECK(std::abs(r_p(kGold, b, wr) - oracle.rp) <=
            1e-12 * std::max(1.0, std::abs(oracle.rp)));
      max_rs = std::max(max_rs, std::abs(oracle.rs));
      max_rp = std::max(max_rp, std::abs(oracle.rp));
    }
  }
  CHECK(max_rs <= 1.0);
  CHECK(max_rp > 1.0);    // quasi-plasmon enhancement is real
  CHECK(max_rp < 20.0);   // frozen scale from the oracle scan
}

TEST_CASE("downward-frequency reflection is the conjugate") {
  // Re r(-w) = Re r(w): reality condition of the response.
  for (double w : {1e12, 5e13, 2e15}) {
    for (double b : {1e4, 1e6, 3e7}) {
      const cplx plus = r_p(kGold, b, cplx(w, 0.0));
      const cplx minus = r_p(kGold, b, cplx(-w, 0.0));
      CHECK(plus.real() == doctest::Approx(minus.real()).epsilon(1e-13));
      CHECK(plus.imag() == doctest::Approx(-minus.imag()).epsilon(1e-13));
    }
  }
}

TEST_CASE("perfect reflector equals the omega_p -> infinity Drude limit") {
  const DrudeMetal big{1e20, 4.05e13};
  for (double xi : log_grid(1e12, 1e15, 8)) {
    for (double mult : log_grid(1.0, 1e4, 8)) {
      const double b = mult * xi / constants.c;
      const cplx w(0.0, xi);
      CHECK(std::abs(r_s(big, b, w) - cplx(-1.0, 0.0)) < 1e-6);
      CHECK(std::abs(r_p(big, b, w) - cplx(1.0, 0.0)) < 1e-6);
    }
  }
}

TEST_CASE("drude validation") {
  CHECK_THROWS_AS(DrudeMetal{-1.0, 0.0}.validate(), std::invalid_argument);
  CHECK_THROWS_AS((DrudeMetal{1e16, -1.0}).validate(), std::invalid_argument);
  CHECK_NOTHROW(kGold.validate());
}

}  // TEST_SUITE
