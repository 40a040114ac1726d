#pragma once

#include <filesystem>
#include <string>

#include "cpk/errors.hpp"
#include "cpk/potential.hpp"

namespace cpk {

// Loaders for the schema-versioned YAML inputs (schema: 1). Unknown keys are
// rejected; errors carry file:line positions. Energies are J, dipole
// strengths Debye^2, distances m, temperatures K at the file boundary.

SpeciesState load_species(const std::filesystem::path& file);

/// Looks up `name` in a material database file {schema, materials: [...]}.
SurfaceModel load_material(const std::filesystem::path& file,
                           const std::string& name);

/// Scenario file; species_file / material_file paths resolve relative to the
/// scenario file's directory.
Scenario load_scenario(const std::filesystem::path& file);

}  // namespace cpk
