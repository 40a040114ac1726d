#include "cpk/io.hpp"

#include <yaml-cpp/yaml.h>

#include <set>
#include <sstream>

#include "cpk/constants.hpp"
#include "cpk/errors.hpp"

namespace cpk {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void fail(const fs::path& file, const YAML::Node& node,
                       const std::string& msg) {
  std::ostringstream os;
  os << file.string() << ":" << (node.Mark().line + 1) << ": " << msg;
  throw SchemaError(os.str());
}

[[noreturn]] void fail(const fs::path& file, const std::string& msg) {
  throw SchemaError(file.string() + ": " + msg);
}

YAML::Node load_root(const fs::path& file) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(file.string());
  } catch (const YAML::BadFile&) {
    fail(file, "cannot open file");
  } catch (const YAML::ParserException& e) {
    fail(file, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) fail(file, "top level must be a map");
  return root;
}

void reject_unknown_keys(const fs::path& file, const YAML::Node& map,
                         const std::set<std::string>& allowed,
                         const std::string& context) {
  for (const auto& kv : map) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key))
      fail(file, kv.first, context + ": unknown key '" + key + "'");
  }
}

YAML::Node require(const fs::path& file, const YAML::Node& map,
                   const std::string& key, const std::string& context) {
  YAML::Node v = map[key];
  if (!v) fail(file, map, context + ": missing required key '" + key + "'");
  return v;
}

double as_double(const fs::path& file, const YAML::Node& node,
                 const std::string& what) {
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    fail(file, node, what + ": expected a number");
  }
}

int as_int(const fs::path& file, const YAML::Node& node,
           const std::string& what) {
  try {
    return node.as<int>();
  } catch (const YAML::Exception&) {
    fail(file, node, what + ": expected an integer");
  }
}

void check_schema(const fs::path& file, const YAML::Node& root) {
  const YAML::Node v = require(file, root, "schema", "file");
  if (as_int(file, v, "schema") != 1)
    fail(file, v, "unsupported schema version (expected 1)");
}

SurfaceModel parse_surface(const fs::path& file, const YAML::Node& node) {
  if (!node.IsMap()) fail(file, node, "surface: expected a map");
  const std::string model =
      require(file, node, "model", "surface").as<std::string>();
  if (model == "perfect_reflector") {
    reject_unknown_keys(file, node, {"model"}, "surface");
    return PerfectReflector{};
  }
  if (model == "drude") {
    reject_unknown_keys(file, node, {"model", "omega_p_rad_s", "gamma_rad_s"},
                        "surface");
    DrudeMetal d{as_double(file, require(file, node, "omega_p_rad_s", "surface"),
                           "omega_p_rad_s"),
                 as_double(file, require(file, node, "gamma_rad_s", "surface"),
                           "gamma_rad_s")};
    d.validate();
    return d;
  }
  fail(file, node, "surface: unknown model '" + model +
                       "' (expected perfect_reflector or drude)");
}

}  // namespace

SpeciesState load_species(const fs::path& file) {
  const YAML::Node root = load_root(file);
  check_schema(file, root);
  reject_unknown_keys(file, root,
                      {"schema", "name", "levels", "transitions", "preparation"},
                      "species");
  SpeciesState sp;
  sp.name = require(file, root, "name", "species").as<std::string>();

  const YAML::Node levels = require(file, root, "levels", "species");
  if (!levels.IsSequence() || levels.size() == 0)
    fail(file, levels, "levels: expected a non-empty list");
  for (const auto& lvl : levels) {
    if (!lvl.IsMap()) fail(file, lvl, "levels: each entry must be a map");
    reject_unknown_keys(file, lvl, {"energy_J"}, "level");
    sp.levels.push_back(
        {as_double(file, require(file, lvl, "energy_J", "level"), "energy_J")});
  }

  const YAML::Node trans = require(file, root, "transitions", "species");
  if (!trans.IsSequence())
    fail(file, trans, "transitions: expected a list");
  for (const auto& tr : trans) {
    if (!tr.IsMap()) fail(file, tr, "transitions: each entry must be a map");
    reject_unknown_keys(file, tr, {"from", "to", "d2_debye2"}, "transition");
    sp.records.push_back(
        {as_int(file, require(file, tr, "from", "transition"), "from"),
         as_int(file, require(file, tr, "to", "transition"), "to"),
         debye2_to_si(as_double(
             file, require(file, tr, "d2_debye2", "transition"), "d2_debye2"))});
  }

  const YAML::Node prep = require(file, root, "preparation", "species");
  if (!prep.IsMap()) fail(file, prep, "preparation: expected a map");
  const std::string mode =
      require(file, prep, "mode", "preparation").as<std::string>();
  if (mode == "eigenstate") {
    reject_unknown_keys(file, prep, {"mode", "level"}, "preparation");
    sp.preparation.mode = Preparation::Mode::Eigenstate;
    sp.preparation.level =
        prep["level"] ? as_int(file, prep["level"], "level") : 0;
  } else if (mode == "thermal") {
    reject_unknown_keys(file, prep, {"mode"}, "preparation");
    sp.preparation.mode = Preparation::Mode::ThermalEnsemble;
  } else {
    fail(file, prep, "preparation: unknown mode '" + mode +
                         "' (expected eigenstate or thermal)");
  }

  try {
    sp.validate();
  } catch (const std::invalid_argument& e) {
    fail(file, e.what());
  }
  return sp;
}

SurfaceModel load_material(const fs::path& file, const std::string& name) {
  const YAML::Node root = load_root(file);
  check_schema(file, root);
  reject_unknown_keys(file, root, {"schema", "materials"}, "materials");
  const YAML::Node mats = require(file, root, "materials", "materials");
  if (!mats.IsSequence())
    fail(file, mats, "materials: expected a list");
  std::string known;
  for (const auto& m : mats) {
    if (!m.IsMap()) fail(file, m, "materials: each entry must be a map");
    const std::string n = require(file, m, "name", "material").as<std::string>();
    if (!known.empty()) known += ", ";
    known += n;
    if (n != name) continue;
    YAML::Node surf = Clone(m);
    surf.remove("name");
    return parse_surface(file, surf);
  }
  fail(file, "material '" + name + "' not found (available: " + known + ")");
}

Scenario load_scenario(const fs::path& file) {
  const YAML::Node root = load_root(file);
  check_schema(file, root);
  reject_unknown_keys(file, root,
                      {"schema", "species_file", "surface", "material_file",
                       "material", "z_A_m", "T_K", "tolerances"},
                      "scenario");

  Scenario sc;
  const fs::path base = file.has_parent_path() ? file.parent_path() : ".";
  const std::string spfile =
      require(file, root, "species_file", "scenario").as<std::string>();
  sc.species = load_species(base / spfile);

  if (root["surface"]) {
    if (root["material_file"] || root["material"])
      fail(file, root["surface"],
           "scenario: give either an inline surface or a material reference, "
           "not both");
    sc.surface = parse_surface(file, root["surface"]);
  } else if (root["material_file"]) {
    const std::string mfile = root["material_file"].as<std::string>();
    const YAML::Node mname = require(file, root, "material", "scenario");
    sc.surface = load_material(base / mfile, mname.as<std::string>());
  } else {
    fail(file, "scenario: missing surface (inline map or material_file + "
               "material)");
  }

  sc.z_A = as_double(file, require(file, root, "z_A_m", "scenario"), "z_A_m");
  sc.temperature = as_double(file, require(file, root, "T_K", "scenario"), "T_K");

  if (root["tolerances"]) {
    const YAML::Node t = root["tolerances"];
    if (!t.IsMap()) fail(file, t, "tolerances: expected a map");
    reject_unknown_keys(
        file, t,
        {"rel_tol", "abs_floor_J", "max_matsubara_terms", "max_quad_depth"},
        "tolerances");
    if (t["rel_tol"]) sc.tol.rel_tol = as_double(file, t["rel_tol"], "rel_tol");
    if (t["abs_floor_J"])
      sc.tol.abs_floor = as_double(file, t["abs_floor_J"], "abs_floor_J");
    if (t["max_matsubara_terms"])
      sc.tol.max_matsubara_terms =
          as_int(file, t["max_matsubara_terms"], "max_matsubara_terms");
    if (t["max_quad_depth"])
      sc.tol.max_quad_depth =
          as_int(file, t["max_quad_depth"], "max_quad_depth");
  }

  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    fail(file, e.what());
  }
  return sc;
}

}  // namespace cpk
