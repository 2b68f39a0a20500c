// helmbie: solve / verify / sweep driver for half-plane Helmholtz scattering.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "helmbie/error.hpp"
#include "helmbie/run.hpp"
#include "helmbie/special_functions.hpp"
#include "helmbie/verify.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerify = 4;

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw helmbie::Error(helmbie::ErrorCode::ConfigInvalid, "config: cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw helmbie::Error(helmbie::ErrorCode::ConfigInvalid, std::string("config: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Helmholtz scattering from a perturbed half-plane"};
  app.require_subcommand(1);

  std::string config_path, out_dir, suite = "fast", param, fault = "none";
  std::vector<double> values;

  auto* solve_cmd = app.add_subcommand("solve", "Solve one configuration");
  solve_cmd->add_option("--config", config_path, "JSON configuration")->required();
  solve_cmd->add_option("--out", out_dir, "Output directory (defaults to output_dir in the config)");

  auto* verify_cmd = app.add_subcommand("verify", "Run the self-verification suite");
  verify_cmd->add_option("--suite", suite, "fast or all")->check(CLI::IsMember({"fast", "all"}));
  verify_cmd->add_option("--out", out_dir, "Report directory")->required();
  verify_cmd->add_option("--inject-fault", fault, "Test hook: none or truncated-asymptotics")
      ->check(CLI::IsMember({"none", "truncated-asymptotics"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "Vary one numeric config field");
  sweep_cmd->add_option("--config", config_path, "JSON configuration")->required();
  sweep_cmd->add_option("--param", param, "Dotted field path, e.g. wavenumber.re")->required();
  sweep_cmd->add_option("--values", values, "Values to sweep")->required()->delimiter(',');
  sweep_cmd->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (solve_cmd->parsed()) {
      const helmbie::RunConfig config = helmbie::load_config(config_path);
      const std::string dir = out_dir.empty() ? config.output_dir : out_dir;
      if (dir.empty()) throw helmbie::Error(helmbie::ErrorCode::ConfigInvalid, "output_dir: missing and no --out given");
      const helmbie::RunReport report = helmbie::run_solve(config, dir);
      for (const auto& f : report.files) std::cout << f.string() << '\n';
      return 0;
    }
    if (verify_cmd->parsed()) {
      if (fault == "truncated-asymptotics") {
        helmbie::special::testing::set_fault(helmbie::special::testing::Fault::TruncatedAsymptotics);
      }
      const auto s = suite == "all" ? helmbie::Suite::All : helmbie::Suite::Fast;
      const bool ok = helmbie::run_verify(s, out_dir);
      std::cout << (ok ? "verify: all checks passed" : "verify: FAILED") << '\n';
      return ok ? 0 : kExitVerify;
    }
    if (sweep_cmd->parsed()) {
      const auto reports = helmbie::run_sweep(read_json(config_path), param, values, out_dir);
      for (const auto& r : reports) std::cout << r.output_dir.string() << '\n';
      return 0;
    }
  } catch (const helmbie::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == helmbie::ErrorCode::ConfigInvalid ? kExitConfig : kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
