#pragma once
// Run orchestration behind the command-line subcommands.
#include <filesystem>
#include <string>
#include <vector>

#include "helmbie/config.hpp"

namespace helmbie {

struct RunReport {
  std::filesystem::path output_dir;
  std::vector<std::filesystem::path> files;
  nlohmann::json metrics;
};

/// Writes density.csv, nearfield.csv, farfield.csv (real k only) and
/// metrics.json. Solver errors are rethrown as SolverFailure with context.
RunReport run_solve(const RunConfig& config, const std::filesystem::path& output_dir);

/// Varies one numeric config field (dotted path such as "wavenumber.re"),
/// one subdirectory per value.
std::vector<RunReport> run_sweep(const nlohmann::json& config, const std::string& param,
                                 const std::vector<double>& values, const std::filesystem::path& output_dir);

/// Shortest round-trip decimal form (17 significant digits).
std::string format_number(double v);

}  // namespace helmbie
