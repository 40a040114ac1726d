#pragma once

#include <functional>

namespace cpk {

struct Tolerances {
  double rel_tol = 1e-9;
  double abs_floor = 1e-45;  // J; stops refinement of true zeros
  long long max_matsubara_terms = 1'000'000;
  int max_quad_depth = 60;

  void validate() const;
};

/// Compensated (Kahan) accumulator. Drop-in for a plain running sum.
template <typename T = double>
struct KahanAccumulator {
  T sum{};
  T compensation{};

  void add(T v) {
    const T y = v - compensation;
    const T t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }
  T value() const { return sum; }
};

struct IntegralResult {
  double value;
  double error;  // estimate, conservative for smooth integrands
};

/// Adaptive Gauss-Kronrod 7/15 on a finite interval. Refines the worst
/// subinterval until the summed error estimate drops below
/// max(rel_tol |I|, abs_floor). Throws ConvergenceError past max_depth.
IntegralResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b, double rel_tol,
                                  double abs_floor, int max_depth);

/// Semi-infinite integral of an exponentially decaying integrand,
/// int_lower^inf f(b) db, where `scale` is the decay length (1/(2 z_A) for
/// the e^{-2 b z_A} kernels here). Substitutes u = (b - lower)/scale, lays
/// octave panels in u until the running tail is negligible, then refines
/// adaptively.
IntegralResult integrate_decaying(const std::function<double(double)>& f,
                                  double lower, double scale,
                                  const Tolerances& tol);

/// Primed Matsubara sum 0.5 term(0) + sum_{j>=1} term(j), compensated
/// accumulation. Stops once 20 consecutive terms each contribute less than
/// rel_tol relative to the partial sum, then adds a smooth-tail completion
/// (midpoint-rule tail integral from integer samples) so slowly decaying
/// series reach the requested accuracy. Throws ConvergenceError when
/// max_matsubara_terms is exhausted.
double sum_matsubara(const std::function<double(long long)>& term,
                     const Tolerances& tol);

/// Closed form of sum'_{j>=0} 1/(a^2 + j^2) = pi/(2a) coth(pi a), with a
/// small-a series fallback below a = 1e-4.
double coth_sum_identity(double a);

/// Closed form of sum'_{j>=0} e^{-2ja}(1 + 2ja + 2j^2a^2)
///   = coth(a)/2 + (a/2)(1 + a coth a)/sinh^2(a),
/// small-a series fallback below a = 1e-4, overflow-safe for large a.
double exp_weighted_sum_identity(double a);

}  // namespace cpk
