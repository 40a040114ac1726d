#include "cpk/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "cpk/constants.hpp"
#include "cpk/errors.hpp"

namespace cpk {

void Tolerances::validate() const {
  if (!(rel_tol > 0.0) || rel_tol > 1e-3)
    throw std::invalid_argument("Tolerances: rel_tol must lie in (0, 1e-3]");
  if (!(abs_floor > 0.0))
    throw std::invalid_argument("Tolerances: abs_floor must be > 0");
  if (max_matsubara_terms <= 0)
    throw std::invalid_argument("Tolerances: max_matsubara_terms must be > 0");
  if (max_quad_depth <= 0)
    throw std::invalid_argument("Tolerances: max_quad_depth must be > 0");
}

namespace {

// Gauss-Kronrod 7/15. Abscissa magnitudes on [-1, 1]; even indices are the
// Kronrod-only points, odd indices (and 0 via the last row) the Gauss points.
constexpr double kGkNode[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kGkWeightK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGkWeightG[4] = {  // for nodes 1, 3, 5, 7
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a, b;
  double value;
  double error;
  int depth;
};

Panel gk15(const std::function<double(double)>& f, double a, double b,
           int depth) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double k15 = kGkWeightK[7] * f0;
  double g7 = kGkWeightG[3] * f0;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kGkNode[i];
    const double fsum = f(mid + dx) + f(mid - dx);
    k15 += kGkWeightK[i] * fsum;
    if (i % 2 == 1) g7 += kGkWeightG[i / 2] * fsum;
  }
  k15 *= half;
  g7 *= half;
  return {a, b, k15, std::abs(k15 - g7), depth};
}

struct WorsePanel {
  bool operator()(const Panel& x, const Panel& y) const {
    return x.error < y.error;
  }
};

// Refine a set of panels until the summed error estimate passes the target.
IntegralResult refine(const std::function<double(double)>& f,
                      std::vector<Panel> panels, double rel_tol,
                      double abs_floor, int max_depth) {
  double total = 0.0, err = 0.0;
  {
    KahanAccumulator<double> v, e;
    for (const Panel& p : panels) {
      v.add(p.value);
      e.add(p.error);
    }
    total = v.value();
    err = e.value();
  }
  std::priority_queue<Panel, std::vector<Panel>, WorsePanel> queue(
      WorsePanel{}, std::move(panels));
  long evals = 0;
  constexpr long kMaxPanels = 200'000;
  while (err > std::max(rel_tol * std::abs(total), abs_floor)) {
    if (queue.empty()) break;
    Panel worst = queue.top();
    queue.pop();
    if (worst.depth >= max_depth)
      throw ConvergenceError(
          "integrate: max_quad_depth exceeded before reaching tolerance",
          total, err);
    if (++evals > kMaxPanels)
      throw ConvergenceError("integrate: panel budget exhausted", total, err);
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk15(f, worst.a, mid, worst.depth + 1);
    Panel right = gk15(f, mid, worst.b, worst.depth + 1);
    total += (left.value + right.value) - worst.value;
    err += (left.error + right.error) - worst.error;
    err = std::max(err, 0.0);
    queue.push(left);
    queue.push(right);
  }
  return {total, err};
}

}  // namespace

IntegralResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b, double rel_tol,
                                  double abs_floor, int max_depth) {
  if (!(b > a)) throw std::invalid_argument("integrate_adaptive: b must be > a");
  std::vector<Panel> init{gk15(f, a, b, 0)};
  return refine(f, std::move(init), rel_tol, abs_floor, max_depth);
}

IntegralResult integrate_decaying(const std::function<double(double)>& f,
                                  double lower, double scale,
                                  const Tolerances& tol) {
  tol.validate();
  if (!(scale > 0.0))
    throw std::invalid_argument("integrate_decaying: scale must be > 0");
  if (!std::isfinite(lower))
    throw std::invalid_argument("integrate_decaying: lower must be finite");

  // u-space integrand; one unit of u is one decay length.
  const std::function<double(double)> g = [&f, lower, scale](double u) {
    return f(lower + scale * u) * scale;
  };

  std::vector<Panel> panels;
  KahanAccumulator<double> coarse;
  double edge = 0.0, width = 1.0;
  int negligible = 0;
  double last_mag = 0.0;
  constexpr int kMaxOctaves = 64;
  int k = 0;
  for (; k < kMaxOctaves; ++k) {
    Panel p = gk15(g, edge, edge + width, 0);
    panels.push_back(p);
    coarse.add(p.value);
    edge += width;
    if (k >= 1) width *= 2.0;
    last_mag = std::abs(p.value) + p.error;
    const double cutoff =
        std::max(tol.abs_floor, 0.1 * tol.rel_tol * std::abs(coarse.value()));
    if (last_mag < cutoff) {
      if (++negligible >= 2) break;
    } else {
      negligible = 0;
    }
  }
  if (k == kMaxOctaves)
    throw ConvergenceError(
        "integrate_decaying: integrand does not decay within the panel range",
        coarse.value(), last_mag);

  IntegralResult r =
      refine(g, std::move(panels), tol.rel_tol, tol.abs_floor, tol.max_quad_depth);
  // Octave panels decay at least geometrically for the admissible integrands;
  // charge the truncated tail to the error estimate.
  r.error += 3.0 * last_mag;
  return r;
}

namespace {

// 32-point Gauss-Legendre nodes/weights on (0, 1), computed once by Newton
// iteration on P_32.
const std::array<std::pair<double, double>, 32>& gauss_legendre_01() {
  static const auto table = [] {
    std::array<std::pair<double, double>, 32> t{};
    constexpr int n = 32;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      t[i] = {0.5 * (x + 1.0), 0.5 * w};
    }
    return t;
  }();
  return table;
}

// Tail of sum_{j > J} term(j) as the midpoint integral int_{J+1/2}^inf f(x)dx,
// mapped by x = (J+1/2)/t and evaluated from integer samples by linear
// interpolation. Exact enough for both geometric and algebraic tails once the
// stop rule has fired.
double tail_completion(const std::function<double(long long)>& term,
                       long long J, double last, double prev) {
  if (last == 0.0 || prev == 0.0) return 0.0;
  if ((last > 0.0) != (prev > 0.0)) return 0.0;  // alternating: tail ~ 0
  if (std::abs(last) >= std::abs(prev)) return 0.0;
  const double X = static_cast<double>(J) + 0.5;
  KahanAccumulator<double> tail;
  for (const auto& [t, w] : gauss_legendre_01()) {
    const double x = X / t;
    const double fl = std::floor(x);
    const auto j0 = static_cast<long long>(fl);
    const double frac = x - fl;
    const double fx = (1.0 - frac) * term(j0) + frac * term(j0 + 1);
    tail.add(w * fx * X / (t * t));
  }
  const double v = tail.value();
  return std::isfinite(v) ? v : 0.0;
}

}  // namespace

double sum_matsubara(const std::function<double(long long)>& term,
                     const Tolerances& tol) {
  tol.validate();
  KahanAccumulator<double> acc;
  acc.add(0.5 * term(0));

  int below = 0;
  double prev = 0.0;
  // Terms can dip non-monotonically near the knee j ~ c/(2 z xi); require 20
  // consecutive negligible terms before stopping.
  for (long long j = 1; j <= tol.max_matsubara_terms; ++j) {
    const double t = term(j);
    acc.add(t);
    if (std::abs(t) < tol.rel_tol * std::abs(acc.value())) {
      if (++below >= 20)
        return acc.value() + tail_completion(term, j, t, prev);
    } else {
      below = 0;
    }
    prev = t;
  }
  throw ConvergenceError(
      "sum_matsubara: no convergence within max_matsubara_terms (last term " +
          std::to_string(prev) + ", partial sum " +
          std::to_string(acc.value()) + ")",
      acc.value(), std::abs(prev), tol.max_matsubara_terms);
}

double coth_sum_identity(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("coth_sum_identity: a must be > 0");
  if (a < 1e-4) {
    const double a2 = a * a;
    return 0.5 / a2 + pi * pi / 6.0 - std::pow(pi, 4) * a2 / 90.0 +
           std::pow(pi, 6) * a2 * a2 / 945.0;
  }
  return pi / (2.0 * a) / std::tanh(pi * a);
}

double exp_weighted_sum_identity(double a) {
  if (!(a > 0.0))
    throw std::invalid_argument("exp_weighted_sum_identity: a must be > 0");
  if (a < 1e-4) {
    const double a3 = a * a * a;
    return 1.5 / a - a3 / 90.0 + 2.0 * a3 * a * a / 315.0;
  }
  const double coth = 1.0 / std::tanh(a);
  if (a > 350.0) return 0.5 * coth;  // sinh^2 would overflow; term is ~ e^{-2a}
  const double sh = std::sinh(a);
  return 0.5 * coth + 0.5 * a * (1.0 + a * coth) / (sh * sh);
}

}  // namespace cpk
