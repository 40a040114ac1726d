// cpk — thermal Casimir-Polder potentials of molecules and atoms near plane
// metal surfaces. Subcommands: sweep, compare, casimir.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "cpk/io.hpp"
#include "cpk/sweep.hpp"

namespace {

// Exit codes: 0 success, 1 usage/config error, 2 partial numeric failure.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumeric = 2;

std::vector<cpk::AsymptoteKind> parse_asymptotes(
    const std::vector<std::string>& tokens) {
  std::vector<cpk::AsymptoteKind> kinds;
  for (const auto& t : tokens) {
    const auto k = cpk::asymptote_from_token(t);
    if (!k)
      throw CLI::ValidationError("--asymptotes",
                                 "unknown asymptote token '" + t + "'");
    kinds.push_back(*k);
  }
  return kinds;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cpk: thermal Casimir-Polder potentials near plane metal surfaces"};
  app.require_subcommand(1);

  // --- sweep ---
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Evaluate the potential on a temperature or distance grid");
  std::string sw_scenario, sw_axis = "temperature", sw_spacing = "linear";
  std::string sw_out, sw_format = "csv";
  double sw_min = 0.0, sw_max = 0.0;
  int sw_points = 2;
  std::vector<std::string> sw_asym;
  bool sw_per_transition = false;
  sweep_cmd->add_option("--scenario", sw_scenario, "Scenario file")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--axis", sw_axis, "Sweep axis")
      ->check(CLI::IsMember({"temperature", "distance"}));
  sweep_cmd->add_option("--min", sw_min, "Axis minimum (K or m)")->required();
  sweep_cmd->add_option("--max", sw_max, "Axis maximum (K or m)")->required();
  sweep_cmd->add_option("--points", sw_points, "Grid points (>= 2)")
      ->required();
  sweep_cmd->add_option("--spacing", sw_spacing, "Grid spacing")
      ->check(CLI::IsMember({"linear", "log"}));
  sweep_cmd->add_option("--out", sw_out, "Output file")->required();
  sweep_cmd->add_option("--format", sw_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd
      ->add_option("--asymptotes", sw_asym,
                   "Comma-separated closed-form columns (eq9,eq10,...)")
      ->delimiter(',');
  sweep_cmd->add_flag("--per-transition", sw_per_transition,
                      "Emit per-transition component columns");

  // --- compare ---
  auto* cmp_cmd = app.add_subcommand(
      "compare", "Tabulate the exact potential against every closed form");
  std::string cmp_scenario, cmp_out;
  double cmp_tmin = 0.0, cmp_tmax = 0.0, cmp_tol = 0.01;
  int cmp_points = 2;
  cmp_cmd->add_option("--scenario", cmp_scenario, "Scenario file")
      ->required()
      ->check(CLI::ExistingFile);
  cmp_cmd->add_option("--tmin", cmp_tmin, "Grid minimum, K")->required();
  cmp_cmd->add_option("--tmax", cmp_tmax, "Grid maximum, K")->required();
  cmp_cmd->add_option("--points", cmp_points, "Grid points (>= 2)")->required();
  cmp_cmd->add_option("--tolerance", cmp_tol, "Relative deviation to flag")
      ->required();
  cmp_cmd->add_option("--out", cmp_out, "Output file (JSON)")->required();

  // --- casimir ---
  auto* cas_cmd = app.add_subcommand(
      "casimir",
      "Casimir energy per unit area of a dilute molecular half-space "
      "(perfect-reflector surface, closed form and distance integral)");
  std::string cas_species;
  double cas_eta = 0.0, cas_z = 0.0, cas_T = 0.0;
  cas_cmd->add_option("--species", cas_species, "Species file")
      ->required()
      ->check(CLI::ExistingFile);
  cas_cmd->add_option("--eta", cas_eta, "Number density, 1/m^3")->required();
  cas_cmd->add_option("--z", cas_z, "Wall separation, m")->required();
  cas_cmd->add_option("--T", cas_T, "Temperature, K")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*sweep_cmd) {
      const cpk::Scenario scenario = cpk::load_scenario(sw_scenario);
      cpk::SweepSpec spec;
      spec.axis = sw_axis == "temperature" ? cpk::SweepSpec::Axis::Temperature
                                           : cpk::SweepSpec::Axis::Distance;
      spec.min = sw_min;
      spec.max = sw_max;
      spec.points = sw_points;
      spec.log_spacing = sw_spacing == "log";
      spec.asymptotes = parse_asymptotes(sw_asym);
      spec.per_transition = sw_per_transition;

      const cpk::SweepResult result =
          cpk::run_sweep(scenario, spec, cpk::threads_from_env());
      auto out = open_out(sw_out);
      if (sw_format == "csv")
        cpk::write_csv(result, out);
      else
        cpk::write_json(result, out);
      if (result.any_error) {
        std::cerr << "cpk sweep: some grid points failed (see the error "
                     "column)\n";
        return kNumeric;
      }
      return kOk;
    }

    if (*cmp_cmd) {
      const cpk::Scenario scenario = cpk::load_scenario(cmp_scenario);
      const cpk::CompareReport report = cpk::compare_asymptotics(
          scenario, cmp_tmin, cmp_tmax, cmp_points, cmp_tol);
      auto out = open_out(cmp_out);
      cpk::write_json(report, out);
      return kOk;
    }

    if (*cas_cmd) {
      const cpk::SpeciesState species = cpk::load_species(cas_species);
      const cpk::CasimirResult r = cpk::casimir_energy_dilute(
          species, cpk::PerfectReflector{}, cas_z, cas_T, cas_eta);
      nlohmann::json doc;
      doc["closed_form_J_per_m2"] = r.closed_form;
      doc["numerical_J_per_m2"] = r.numerical;
      doc["rel_difference"] =
          std::abs(r.numerical - r.closed_form) / std::abs(r.closed_form);
      doc["tail_fit_deviation"] = r.tail_fit_deviation;
      doc["molecule_regime_ok"] = r.molecule_regime_ok;
      std::cout << doc.dump(2) << '\n';
      if (!r.molecule_regime_ok)
        std::cerr << "cpk casimir: warning: sampled distances leave the "
                     "molecule regime (z |omega|/c > 0.1)\n";
      return kOk;
    }
  } catch (const cpk::SchemaError& e) {
    std::cerr << "cpk: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "cpk: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "cpk: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "cpk: numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
