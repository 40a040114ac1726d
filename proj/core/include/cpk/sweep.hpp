#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cpk/potential.hpp"

namespace cpk {

struct SweepSpec {
  enum class Axis { Temperature, Distance };
  Axis axis = Axis::Temperature;
  double min = 0.0;
  double max = 0.0;
  int points = 2;
  bool log_spacing = false;
  std::vector<AsymptoteKind> asymptotes;
  bool per_transition = false;

  void validate() const;
};

struct SweepRow {
  double axis_value;
  double u_nonresonant = 0.0;
  double u_evanescent = 0.0;
  double u_total = 0.0;
  std::vector<double> asymptote_values;
  std::vector<std::pair<double, double>> per_transition;  // (u_nr, u_ev)
  Regime regime = Regime::Crossover;
  bool far_field_warning = false;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

struct SweepResult {
  SweepSpec spec;
  std::string axis_name;  // "temperature_K" or "distance_m"
  int transition_count = 0;
  std::vector<SweepRow> rows;
  bool any_error = false;
};

/// Evaluates the grid (axis value overrides the template scenario's value).
/// Rows are computed concurrently on `threads` threads and assembled in axis
/// order; output is independent of the thread count.
SweepResult run_sweep(const Scenario& scenario, const SweepSpec& spec,
                      int threads);

/// Fixed, documented column order; 17-significant-digit numerics.
void write_csv(const SweepResult& result, std::ostream& out);
void write_json(const SweepResult& result, std::ostream& out);

struct CompareEntry {
  AsymptoteKind kind;
  double value;
  double rel_deviation;  // |formula - exact counterpart| / |u_total|
  bool in_regime;
  bool exceeds_tolerance;  // in_regime && rel_deviation > tolerance
};

struct CompareRow {
  double temperature;
  double u_total;
  double u_nonresonant;
  double u_evanescent;
  std::vector<CompareEntry> entries;
  AsymptoteKind best;  // best-fitting total-potential formula
};

struct CompareReport {
  double tolerance;
  std::vector<CompareRow> rows;
  // max in-regime deviation per formula, NaN when never in regime
  std::vector<std::pair<AsymptoteKind, double>> max_in_regime_deviation;
};

/// Tabulates the exact potential against every applicable closed-form
/// asymptote on a linear temperature grid.
CompareReport compare_asymptotics(const Scenario& scenario, double tmin,
                                  double tmax, int points, double tolerance);

void write_json(const CompareReport& report, std::ostream& out);

/// CPK_THREADS environment variable; 0 or unset means all cores.
int threads_from_env();

}  // namespace cpk
