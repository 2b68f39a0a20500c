#include "helmbie/run.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "helmbie/error.hpp"
#include "helmbie/postprocess.hpp"

namespace helmbie {

namespace fs = std::filesystem;
using nlohmann::json;
using std::numbers::pi;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::string& header) : out_(path) {
    if (!out_) throw Error(ErrorCode::SolverFailure, "cannot write " + path.string());
    out_ << header << '\n';
  }
  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) out_ << ',';
      out_ << format_number(v);
      first = false;
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::SolverFailure, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

double top_height(const BoundaryProfile& profile) {
  double top = 0.0;
  for (const Vec2& b : profile.breakpoints()) top = std::max(top, b.y());
  return top;
}

RunReport solve_and_write(const RunConfig& config, const fs::path& dir) {
  const auto start = std::chrono::steady_clock::now();
  fs::create_directories(dir);
  RunReport report{dir, {}, json::object()};
  json notes = json::array();

  const BoundaryProfile profile = build_profile(config.profile);
  const Wavenumber k(config.wavenumber);
  const BieProblem problem = BieProblem::make(profile, config.mesh, k, config.bc, config.excitation);
  const DensitySolution sol = solve(problem, config.solver);

  {
    const fs::path path = dir / "density.csv";
    CsvWriter csv(path, "t,x,y,re,im");
    for (std::size_t i = 0; i < problem.mesh.size(); ++i) {
      const MeshNode& node = problem.mesh.nodes()[i];
      const cplx v = sol.values[static_cast<Eigen::Index>(i)];
      csv.row({node.t, node.point.x(), node.point.y(), v.real(), v.imag()});
    }
    report.files.push_back(path);
  }

  {
    std::vector<Vec2> points = config.eval.grid ? grid_points(*config.eval.grid) : std::vector<Vec2>{};
    points.insert(points.end(), config.eval.probes.begin(), config.eval.probes.end());
    std::vector<FieldSample> samples;
    try {
      samples = eval_field(problem, sol.values, points);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PointTooCloseToBoundary || e.code() == ErrorCode::PointOutsideDomain) {
        throw Error(ErrorCode::ConfigInvalid, std::string("eval: ") + e.what());
      }
      throw;
    }
    const fs::path path = dir / "nearfield.csv";
    CsvWriter csv(path, "x,y,re_total,im_total,abs_total,re_correction,im_correction");
    for (const FieldSample& s : samples) {
      csv.row({s.point.x(), s.point.y(), s.total.real(), s.total.imag(), std::abs(s.total), s.correction.real(),
               s.correction.imag()});
    }
    report.files.push_back(path);
  }

  json& m = report.metrics;
  m["residual_norm"] = sol.residual_norm;
  m["condition_estimate"] = sol.condition_estimate;
  m["unknowns"] = problem.mesh.size();

  if (k.is_real()) {
    std::vector<double> degrees = config.eval.farfield_angles_deg;
    if (degrees.empty()) {
      for (double a : default_angles(90)) degrees.push_back(a * 180.0 / pi);
    }
    std::vector<double> angles;
    for (double d : degrees) angles.push_back(d * pi / 180.0);
    const std::vector<cplx> f = far_field(k, problem.mesh, sol.values, config.bc, angles);
    const fs::path path = dir / "farfield.csv";
    CsvWriter csv(path, "theta_deg,re,im,abs");
    for (std::size_t i = 0; i < f.size(); ++i) csv.row({degrees[i], f[i].real(), f[i].imag(), std::abs(f[i])});
    report.files.push_back(path);

    const FieldEvaluator eval(problem, sol.values);
    const double mid = 0.5 * (profile.support_begin() + profile.support_end());
    const FluxResult flux = flux_check(k, profile, [&](const Vec2& p) { return eval.total(p); },
                                       Vec2(mid, top_height(profile) + 0.6), 0.5);
    m["flux_check"] = flux.relative();

    const double kr = k.value().real();
    const std::vector<double> rad_angles = default_angles(32);
    json residuals = json::array();
    for (double radius : {50.0 / kr, 200.0 / kr}) {
      const double r = radiation_residual(k, [&](const Vec2& p) { return eval.correction(p); }, radius, rad_angles,
                                          Vec2(mid, 0.0));
      residuals.push_back({{"radius", radius}, {"residual", r}});
    }
    m["radiation_residuals"] = residuals;
  } else {
    notes.push_back("farfield skipped: complex k");
    notes.push_back("flux_check and radiation_residuals skipped: complex k");
  }

  m["notes"] = notes;
  m["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json files = json::array();
  for (const fs::path& f : report.files) files.push_back(f.filename().string());
  files.push_back("metrics.json");
  json doc = {{"config", to_json(config)}, {"files", files}, {"metrics", m}};
  const fs::path metrics_path = dir / "metrics.json";
  write_json(metrics_path, doc);
  report.files.push_back(metrics_path);
  return report;
}

}  // namespace

RunReport run_solve(const RunConfig& config, const fs::path& output_dir) {
  try {
    return solve_and_write(config, output_dir);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigInvalid || e.code() == ErrorCode::SolverFailure) throw;
    throw Error(ErrorCode::SolverFailure, std::string("solve: ") + e.what());
  } catch (const fs::filesystem_error& e) {
    throw Error(ErrorCode::SolverFailure, std::string("output: ") + e.what());
  }
}

std::vector<RunReport> run_sweep(const json& config, const std::string& param, const std::vector<double>& values,
                                 const fs::path& output_dir) {
  if (values.empty()) throw Error(ErrorCode::ConfigInvalid, "sweep: no values given");
  const json::json_pointer pointer("/" + [&] {
    std::string p = param;
    for (char& c : p) {
      if (c == '.') c = '/';
    }
    return p;
  }());
  if (!config.contains(pointer) || !config.at(pointer).is_number()) {
    throw Error(ErrorCode::ConfigInvalid, param + ": not a numeric config field");
  }
  const bool integral = config.at(pointer).is_number_integer();
  std::vector<RunReport> reports;
  json summary = json::array();
  for (double v : values) {
    json c = config;
    if (integral) {
      if (v != std::floor(v)) throw Error(ErrorCode::ConfigInvalid, param + ": expects integer values");
      c[pointer] = static_cast<long long>(v);
    } else {
      c[pointer] = v;
    }
    const fs::path dir = output_dir / (param + "=" + format_number(v));
    reports.push_back(run_solve(parse_config(c), dir));
    summary.push_back({{"value", v}, {"dir", dir.filename().string()}, {"metrics", reports.back().metrics}});
  }
  write_json(output_dir / "sweep.json", {{"param", param}, {"runs", summary}});
  return reports;
}

}  // namespace helmbie
