#include "cpk/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "cpk/constants.hpp"

namespace cpk {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<double> make_grid(const SweepSpec& spec) {
  std::vector<double> g(spec.points);
  if (spec.log_spacing) {
    const double l0 = std::log(spec.min), l1 = std::log(spec.max);
    for (int i = 0; i < spec.points; ++i)
      g[i] = std::exp(l0 + (l1 - l0) * i / (spec.points - 1));
  } else {
    for (int i = 0; i < spec.points; ++i)
      g[i] = spec.min + (spec.max - spec.min) * i / (spec.points - 1);
  }
  return g;
}

SweepRow eval_row(const Scenario& tmpl, const SweepSpec& spec, double value) {
  SweepRow row;
  row.axis_value = value;
  Scenario sc = tmpl;
  if (spec.axis == SweepSpec::Axis::Temperature)
    sc.temperature = value;
  else
    sc.z_A = value;
  try {
    if (sc.species.preparation.mode == Preparation::Mode::Eigenstate) {
      const PotentialBreakdown b = u_total_eigenstate(sc);
      row.u_nonresonant = b.u_nonresonant;
      row.u_evanescent = b.u_evanescent;
      row.u_total = b.u_total;
      row.regime = b.regime;
      row.far_field_warning = b.validity.far_field_warning;
      if (spec.per_transition)
        for (const auto& t : b.per_transition)
          row.per_transition.emplace_back(t.u_nr, t.u_ev);
    } else {
      // Ensemble evanescent components cancel pairwise by detailed balance;
      // the thermal potential is purely nonresonant.
      row.u_total = u_thermal_state(sc);
      row.u_nonresonant = row.u_total;
      row.u_evanescent = 0.0;
      row.regime = classify_regime(sc.species, sc.z_A, sc.temperature);
      for (const auto& pr : sc.species.ordered_pairs())
        if (sc.z_A * pr.omega / constants.c > 1.0)
          row.far_field_warning = true;
      if (spec.per_transition) {
        const auto p = boltzmann_weights(sc.species, sc.temperature);
        for (const auto& pr : sc.species.ordered_pairs()) {
          const double u_nr =
              is_perfect(sc.surface)
                  ? nonresonant_transition_closed(pr.omega, pr.d2, sc.z_A,
                                                  sc.temperature, sc.tol)
                  : nonresonant_transition(sc.surface, pr.omega, pr.d2, sc.z_A,
                                           sc.temperature, sc.tol);
          const double th = std::tanh(constants.hbar * pr.omega /
                                      (2.0 * constants.k_B * sc.temperature));
          row.per_transition.emplace_back((p[pr.lower] + p[pr.upper]) * th * u_nr,
                                          0.0);
        }
      }
    }
    for (AsymptoteKind k : spec.asymptotes)
      row.asymptote_values.push_back(asymptote(sc, k));
  } catch (const std::exception& e) {
    row = SweepRow{};
    row.axis_value = value;
    row.error = e.what();
  }
  return row;
}

int transition_count(const Scenario& sc) {
  if (sc.species.preparation.mode == Preparation::Mode::Eigenstate)
    return static_cast<int>(sc.species.prepared_transitions().size());
  return static_cast<int>(sc.species.ordered_pairs().size());
}

}  // namespace

void SweepSpec::validate() const {
  if (!(min < max)) throw std::invalid_argument("sweep: min must be < max");
  if (points < 2) throw std::invalid_argument("sweep: points must be >= 2");
  if (log_spacing && !(min > 0.0))
    throw std::invalid_argument("sweep: log spacing requires min > 0");
}

int threads_from_env() {
  const char* env = std::getenv("CPK_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0)
    throw std::invalid_argument(
        "CPK_THREADS must be a non-negative integer (0 = all cores)");
  return static_cast<int>(v);
}

SweepResult run_sweep(const Scenario& scenario, const SweepSpec& spec,
                      int threads) {
  scenario.validate();
  spec.validate();
  for (AsymptoteKind k : spec.asymptotes) {
    const auto allowed = asymptotes_for(scenario.species.preparation.mode);
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw std::invalid_argument(
          std::string("sweep: asymptote '") + std::string(asymptote_token(k)) +
          "' does not apply to this preparation mode");
  }

  SweepResult result;
  result.spec = spec;
  result.axis_name = spec.axis == SweepSpec::Axis::Temperature
                         ? "temperature_K"
                         : "distance_m";
  result.transition_count = transition_count(scenario);

  const std::vector<double> grid = make_grid(spec);
  result.rows.resize(grid.size());

  int n_threads = threads;
  if (n_threads <= 0)
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min<int>(n_threads, static_cast<int>(grid.size()));

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
      result.rows[i] = eval_row(scenario, spec, grid[i]);
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& row : result.rows)
    if (!row.ok()) result.any_error = true;
  return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
  out << result.axis_name
      << ",u_nonresonant_J,u_evanescent_J,u_total_J,regime,far_field_warning";
  for (AsymptoteKind k : result.spec.asymptotes)
    out << ",asym_" << asymptote_token(k) << "_J";
  if (result.spec.per_transition)
    for (int i = 0; i < result.transition_count; ++i)
      out << ",u_nr_t" << i << "_J,u_ev_t" << i << "_J";
  out << ",error\n";

  for (const auto& row : result.rows) {
    out << fmt17(row.axis_value);
    if (row.ok()) {
      out << ',' << fmt17(row.u_nonresonant) << ',' << fmt17(row.u_evanescent)
          << ',' << fmt17(row.u_total) << ',' << regime_label(row.regime)
          << ',' << (row.far_field_warning ? 1 : 0);
      for (double v : row.asymptote_values) out << ',' << fmt17(v);
      if (result.spec.per_transition)
        for (const auto& [nr, ev] : row.per_transition)
          out << ',' << fmt17(nr) << ',' << fmt17(ev);
      out << ',';
    } else {
      out << ",,,,,";
      for (size_t i = 0; i < result.spec.asymptotes.size(); ++i) out << ',';
      if (result.spec.per_transition)
        for (int i = 0; i < 2 * result.transition_count; ++i) out << ',';
      out << ',' << csv_quote(row.error);
    }
    out << '\n';
  }
}

void write_json(const SweepResult& result, std::ostream& out) {
  json doc;
  doc["schema"] = 1;
  doc["axis"] = result.axis_name;
  json rows = json::array();
  for (const auto& row : result.rows) {
    json r;
    r["axis_value"] = row.axis_value;
    if (row.ok()) {
      r["u_nonresonant_J"] = row.u_nonresonant;
      r["u_evanescent_J"] = row.u_evanescent;
      r["u_total_J"] = row.u_total;
      r["regime"] = std::string(regime_label(row.regime));
      r["far_field_warning"] = row.far_field_warning;
      json asym = json::object();
      for (size_t i = 0; i < result.spec.asymptotes.size(); ++i)
        asym[std::string(asymptote_token(result.spec.asymptotes[i]))] =
            row.asymptote_values[i];
      if (!asym.empty()) r["asymptotes_J"] = asym;
      if (result.spec.per_transition) {
        json pt = json::array();
        for (const auto& [nr, ev] : row.per_transition)
          pt.push_back({{"u_nr_J", nr}, {"u_ev_J", ev}});
        r["per_transition"] = pt;
      }
      r["error"] = nullptr;
    } else {
      r["error"] = row.error;
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

namespace {

// Declared validity window of each closed form, from the dominant transition.
bool in_declared_regime(AsymptoteKind kind, double r, double T, double T_omega,
                        double T_z) {
  switch (kind) {
    case AsymptoteKind::NonresonantGeometric:
      return r <= 0.1 && T <= T_z / 10.0;
    case AsymptoteKind::TotalConstant:
      return r <= 0.1;
    case AsymptoteKind::NonresonantHighT:
    case AsymptoteKind::EvanescentHighT:
      return T >= 10.0 * T_omega;
    case AsymptoteKind::NonresonantRetarded:
    case AsymptoteKind::EvanescentLowT:
    case AsymptoteKind::TotalRetardedLowT:
      return r >= 10.0 && T <= T_z / 10.0;
    case AsymptoteKind::TotalLinear:
      return r >= 10.0 && T >= 3.0 * T_z && T <= T_omega / 10.0;
    case AsymptoteKind::ThermalConstant:
      return r <= 0.1;
  }
  return false;
}

bool is_total_form(AsymptoteKind k) {
  return k == AsymptoteKind::TotalConstant ||
         k == AsymptoteKind::TotalRetardedLowT ||
         k == AsymptoteKind::TotalLinear || k == AsymptoteKind::ThermalConstant;
}

// Exact counterpart each formula approximates.
double exact_counterpart(AsymptoteKind k, const CompareRow& row) {
  switch (k) {
    case AsymptoteKind::NonresonantGeometric:
    case AsymptoteKind::NonresonantHighT:
    case AsymptoteKind::NonresonantRetarded:
      return row.u_nonresonant;
    case AsymptoteKind::EvanescentHighT:
    case AsymptoteKind::EvanescentLowT:
      return row.u_evanescent;
    default:
      return row.u_total;
  }
}

}  // namespace

CompareReport compare_asymptotics(const Scenario& scenario, double tmin,
                                  double tmax, int points, double tolerance) {
  scenario.validate();
  if (!(tmin < tmax) || points < 2)
    throw std::invalid_argument("compare: need tmin < tmax and points >= 2");
  if (!(tolerance > 0.0))
    throw std::invalid_argument("compare: tolerance must be > 0");

  const auto kinds = asymptotes_for(scenario.species.preparation.mode);
  const Transition dom = scenario.species.dominant_transition();
  const auto [T_omega, T_z] =
      characteristic_temperatures(dom.omega, scenario.z_A);
  const double r = scenario.z_A * std::abs(dom.omega) / constants.c;

  CompareReport report;
  report.tolerance = tolerance;
  std::vector<double> worst(kinds.size(),
                            -std::numeric_limits<double>::infinity());

  for (int i = 0; i < points; ++i) {
    const double T = tmin + (tmax - tmin) * i / (points - 1);
    Scenario sc = scenario;
    sc.temperature = T;

    CompareRow row;
    row.temperature = T;
    if (sc.species.preparation.mode == Preparation::Mode::Eigenstate) {
      const PotentialBreakdown b = u_total_eigenstate(sc);
      row.u_total = b.u_total;
      row.u_nonresonant = b.u_nonresonant;
      row.u_evanescent = b.u_evanescent;
    } else {
      row.u_total = u_thermal_state(sc);
      row.u_nonresonant = row.u_total;
      row.u_evanescent = 0.0;
    }

    double best_dev = std::numeric_limits<double>::infinity();
    row.best = kinds.front();
    for (size_t k = 0; k < kinds.size(); ++k) {
      CompareEntry e;
      e.kind = kinds[k];
      e.value = asymptote(sc, kinds[k]);
      const double ref = exact_counterpart(kinds[k], row);
      e.rel_deviation = std::abs(e.value - ref) / std::abs(row.u_total);
      e.in_regime = in_declared_regime(kinds[k], r, T, T_omega, T_z);
      e.exceeds_tolerance = e.in_regime && e.rel_deviation > tolerance;
      if (e.in_regime) worst[k] = std::max(worst[k], e.rel_deviation);
      if (is_total_form(kinds[k]) && e.rel_deviation < best_dev) {
        best_dev = e.rel_deviation;
        row.best = kinds[k];
      }
      row.entries.push_back(e);
    }
    report.rows.push_back(std::move(row));
  }

  for (size_t k = 0; k < kinds.size(); ++k)
    report.max_in_regime_deviation.emplace_back(
        kinds[k], std::isinf(worst[k])
                      ? std::numeric_limits<double>::quiet_NaN()
                      : worst[k]);
  return report;
}

void write_json(const CompareReport& report, std::ostream& out) {
  json doc;
  doc["schema"] = 1;
  doc["tolerance"] = report.tolerance;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["T_K"] = row.temperature;
    r["u_total_J"] = row.u_total;
    r["u_nonresonant_J"] = row.u_nonresonant;
    r["u_evanescent_J"] = row.u_evanescent;
    json entries = json::object();
    for (const auto& e : row.entries) {
      entries[std::string(asymptote_token(e.kind))] = {
          {"value_J", e.value},
          {"rel_deviation", e.rel_deviation},
          {"in_regime", e.in_regime},
          {"exceeds_tolerance", e.exceeds_tolerance}};
    }
    r["asymptotes"] = std::move(entries);
    r["best"] = std::string(asymptote_token(row.best));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  json summary = json::object();
  for (const auto& [kind, dev] : report.max_in_regime_deviation) {
    if (std::isnan(dev))
      summary[std::string(asymptote_token(kind))] = nullptr;
    else
      summary[std::string(asymptote_token(kind))] = dev;
  }
  doc["max_in_regime_deviation"] = std::move(summary);
  out << doc.dump(2) << '\n';
}

}  // namespace cpk
