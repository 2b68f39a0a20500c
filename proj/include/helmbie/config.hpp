#pragma once
// Run configuration: JSON ingestion with field-level validation, and the
// inverse mapping used to echo a configuration into run reports.
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "helmbie/bie.hpp"

namespace helmbie {

struct GridSpec {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  int nx = 0, ny = 0;
};

struct EvalSpec {
  std::optional<GridSpec> grid;
  std::vector<double> farfield_angles_deg;
  std::vector<Vec2> probes;
};

struct RunConfig {
  std::vector<Vec2> profile;
  cplx wavenumber;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  Excitation excitation = PlaneWave{};
  MeshOptions mesh;
  SolveOptions solver;
  EvalSpec eval;
  std::string output_dir;
};

/// Throws Error(ConfigInvalid) naming the offending field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

/// Grid nodes in row-major order (x fastest).
std::vector<Vec2> grid_points(const GridSpec& grid);

}  // namespace helmbie
