#include "helmbie/verify.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "helmbie/error.hpp"
#include "helmbie/panel_quadrature.hpp"
#include "helmbie/postprocess.hpp"
#include "helmbie/special_functions.hpp"

namespace helmbie {

namespace {

using namespace std::complex_literals;
using std::numbers::pi;

CheckResult at_most(std::string name, double measured, double tolerance, std::string detail = {}) {
  const bool ok = std::isfinite(measured) && measured <= tolerance;
  return {std::move(name), measured, tolerance, ok, detail.empty() ? "measured <= tolerance" : std::move(detail)};
}

CheckResult at_least(std::string name, double measured, double tolerance, std::string detail = {}) {
  const bool ok = std::isfinite(measured) && measured >= tolerance;
  return {std::move(name), measured, tolerance, ok, detail.empty() ? "measured >= tolerance" : std::move(detail)};
}

BoundaryProfile triangle_bump() { return build_profile({{0.0, 0.0}, {0.5, 0.3}, {1.0, 0.0}}); }
BoundaryProfile flat_profile() { return build_profile({{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}}); }

const Vec2 kSource(0.5, -0.1);
constexpr double kManufacturedK = 3.0;

MeshOptions mesh_with(std::size_t n) {
  MeshOptions m;
  m.n_panels = n;
  return m;
}

struct Solved {
  BieProblem problem;
  DensitySolution solution;
};

Solved solve_problem(const BoundaryProfile& profile, std::size_t n, double k, BoundaryCondition bc,
                     const Excitation& excitation) {
  BieProblem problem = BieProblem::make(profile, mesh_with(n), Wavenumber(k), bc, excitation);
  DensitySolution solution = solve(problem);
  return {std::move(problem), std::move(solution)};
}

double manufactured_error(const Solved& s) {
  const Wavenumber& k = s.problem.k;
  const ManufacturedSource source(s.problem.profile, kSource);
  const FieldEvaluator eval(s.problem, s.solution.values);
  double err = 0.0;
  for (const Vec2& p : probe_points(s.problem.profile, 20, 0.5 * k.wavelength())) {
    const cplx exact = source.field(s.problem.bc, k, p).value;
    err = std::max(err, std::abs(eval.sample(p).total - exact) / std::abs(exact));
  }
  return err;
}

std::string bc_name(BoundaryCondition bc) { return std::string(to_string(bc)); }

// ---------------------------------------------------------------- checks

void special_checks(std::vector<CheckResult>& out) {
  using namespace special;
  double wronskian = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = 0.1 * std::pow(2000.0, i / 49.0);
    const double j0 = bessel_real(0, BesselKind::J, x), j1 = bessel_real(1, BesselKind::J, x);
    const double y0 = bessel_real(0, BesselKind::Y, x), y1 = bessel_real(1, BesselKind::Y, x);
    wronskian = std::max(wronskian, std::abs(j1 * y0 - j0 * y1 - 2.0 / (pi * x)));
  }
  out.push_back(at_most("special.wronskian", wronskian, 1e-10, "max |J1 Y0 - J0 Y1 - 2/(pi x)| on [0.1, 200]"));

  double split = 0.0;
  // Real arguments, and complex ones inside the series disc; off the real
  // axis the split cancels exponentially large terms beyond it.
  std::vector<cplx> args;
  for (int i = 0; i < 30; ++i) args.emplace_back(0.05 * std::pow(1000.0, i / 29.0), 0.0);
  for (int i = 0; i < 30; ++i) args.push_back(std::polar(0.05 * std::pow(80.0, i / 29.0), 0.5 * pi * (i % 5) / 4.0));
  for (const cplx& z : args) {
    const HankelValue h = hankel01(z);
    const LogSplit s0 = log_split_h0(z), s1 = log_split_h1(z);
    const cplx lz = std::log(z);
    split = std::max(split, std::abs(s0.log_coeff * lz + s0.regular - h.h0) / std::abs(h.h0));
    split = std::max(split, std::abs(s1.log_coeff * lz - 2.0i / (pi * z) + s1.regular - h.h1) / std::abs(h.h1));
  }
  out.push_back(at_most("special.log_split_reconstruction", split, 1e-12, "relative; real axis to 50 and |z| <= 4 in the first quadrant"));

  double jump = 0.0;
  for (double r : {kSeriesRadius, kAsymptoticRadius}) {
    for (int a = 0; a <= 4; ++a) {
      const double theta = 0.5 * pi * a / 4.0;
      const HankelValue lo = hankel01(std::polar(r * (1.0 - 1e-12), theta));
      const HankelValue hi = hankel01(std::polar(r * (1.0 + 1e-12), theta));
      jump = std::max(jump, std::abs(lo.h0 - hi.h0) / std::abs(hi.h0));
      jump = std::max(jump, std::abs(lo.h1 - hi.h1) / std::abs(hi.h1));
    }
  }
  out.push_back(at_most("special.regime_continuity", jump, 1e-10, "relative jump across regime switches"));
}

void kernel_checks(std::vector<CheckResult>& out) {
  const Wavenumber k(2.0, 0.3);
  const Vec2 pts[] = {{0.1, 0.4}, {0.7, 1.3}, {-0.5, 0.2}, {1.4, 2.2}};
  double reciprocity = 0.0, odd = 0.0;
  for (const Vec2& m : pts) {
    for (const Vec2& p : pts) {
      if (m == p) continue;
      for (GreenKind g : {GreenKind::Dirichlet, GreenKind::Neumann}) {
        const cplx a = greens(g, k, m, p), b = greens(g, k, p, m);
        reciprocity = std::max(reciprocity, std::abs(a - b) / std::abs(a));
      }
    }
    odd = std::max(odd, std::abs(greens(GreenKind::Dirichlet, k, Vec2(m.x(), 0.0), pts[1])));
  }
  out.push_back(at_most("kernels.reciprocity", reciprocity, 1e-14, "relative |G(M,P) - G(P,M)|"));
  out.push_back(at_most("kernels.dirichlet_vanishes_on_axis", odd, 1e-15));

  const BoundaryMesh mesh = build_mesh(flat_profile(), mesh_with(32));
  const OperatorMatrix v = assemble_operator(OperatorKind::V, Wavenumber(1.0), mesh);
  const PanelQuadrature quad(mesh.rule());
  double asym = 0.0, scale = 0.0;
  const auto& nodes = mesh.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      const cplx kij = v.entries(ii, jj) / nodes[j].arc_weight();
      scale = std::max(scale, std::abs(kij));
      if (quad.is_near(mesh.panels()[nodes[j].panel], nodes[i].point) ||
          quad.is_near(mesh.panels()[nodes[i].panel], nodes[j].point)) {
        continue;
      }
      asym = std::max(asym, std::abs(kij - v.entries(jj, ii) / nodes[i].arc_weight()));
    }
  }
  out.push_back(at_most("bie.v_kernel_symmetry", asym / scale, 1e-12, "far pairs, flat profile, k = 1"));
}

void flat_checks(std::vector<CheckResult>& out) {
  const BoundaryProfile flat = flat_profile();
  const BoundaryMesh mesh = build_mesh(flat, mesh_with(64));
  const OperatorMatrix w = assemble_operator(OperatorKind::W, Wavenumber(3.0), mesh);
  out.push_back(at_most("flat.w_matrix_zero", w.entries.cwiseAbs().maxCoeff(), 1e-14));
  for (BoundaryCondition bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    const Solved s = solve_problem(flat, 64, 3.0, bc, PlaneWave{0.3});
    out.push_back(at_most("flat.density_zero." + bc_name(bc), s.solution.values.cwiseAbs().maxCoeff(), 1e-12));
    const auto angles = default_angles(16);
    double ff = 0.0;
    for (const cplx& f : far_field(s.problem.k, s.problem.mesh, s.solution.values, bc, angles)) {
      ff = std::max(ff, std::abs(f));
    }
    out.push_back(at_most("flat.farfield_zero." + bc_name(bc), ff, 1e-12));
  }
}

void manufactured_checks(std::vector<CheckResult>& out) {
  const BoundaryProfile bump = triangle_bump();
  for (BoundaryCondition bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    const std::string tag = bc_name(bc);
    std::vector<double> errors;
    for (std::size_t n : {32, 64, 128}) {
      errors.push_back(manufactured_error(solve_problem(bump, n, kManufacturedK, bc, PointSource{kSource})));
    }
    double order = INFINITY;
    for (std::size_t i = 1; i < errors.size(); ++i) order = std::min(order, std::log2(errors[i - 1] / errors[i]));
    out.push_back(at_least("manufactured.observed_order." + tag, order, 1.0, "min log2 error ratio, n = 32..128"));

    const Solved coarse = solve_problem(bump, 256, kManufacturedK, bc, PointSource{kSource});
    const Solved fine = solve_problem(bump, 512, kManufacturedK, bc, PointSource{kSource});
    const double e256 = manufactured_error(coarse), e512 = manufactured_error(fine);
    out.push_back(at_most("manufactured.error_n256." + tag, e256,
                          bc == BoundaryCondition::Dirichlet ? 1e-3 : 3e-3, "relative L-inf at 20 probes"));
    out.push_back(at_most("manufactured.halving." + tag, e512 / e256, 0.5, "error(512) / error(256)"));
    out.push_back(at_most("bie.residual." + tag, fine.solution.residual_norm, 1e-10));

    const Wavenumber& k = coarse.problem.k;
    const FieldEvaluator eval(coarse.problem, coarse.solution.values);

    // Jump relations at 16 interior nodes, both sides, both layer types.
    const BoundaryMesh& mesh = coarse.problem.mesh;
    const double dmax = coarse.solution.values.cwiseAbs().maxCoeff();
    double worst = 0.0;
    std::size_t tested = 0;
    for (std::size_t i = mesh.size() / 40; i < mesh.size() && tested < 16; i += mesh.size() / 20) {
      if (mesh.nodes()[i].corner_adjacent) continue;
      ++tested;
      for (Side side : {Side::Plus, Side::Minus}) {
        for (LayerType layer : {LayerType::Double, LayerType::Single}) {
          worst = std::max(worst, jump_check(k, mesh, coarse.solution.values, i, side, layer).deviation / dmax);
        }
      }
    }
    out.push_back(at_most("jump.relations." + tag, worst, 5e-3, std::to_string(tested) + " nodes, relative"));

    const Vec2 center(0.5, 0.0);
    const auto angles = default_angles(32);
    const auto scattered = [&](const Vec2& p) { return eval.correction(p); };
    std::vector<double> scaled;
    std::vector<double> residuals;
    for (double r : {50.0 / kManufacturedK, 100.0 / kManufacturedK, 200.0 / kManufacturedK}) {
      residuals.push_back(radiation_residual(k, scattered, r, angles, center));
      scaled.push_back(residuals.back() * std::pow(r, 1.5));
    }
    out.push_back(at_most("radiation.decay_ratio." + tag, residuals[2] / residuals[0], 0.35,
                          "residual(200/k) / residual(50/k)"));
    out.push_back(at_most("radiation.scaled_band." + tag,
                          *std::max_element(scaled.begin(), scaled.end()) /
                              *std::min_element(scaled.begin(), scaled.end()),
                          2.0, "max/min of residual R^1.5"));

    const FluxResult flux =
        flux_check(k, bump, [&](const Vec2& p) { return eval.total(p); }, Vec2(0.5, 1.5), 0.5);
    out.push_back(at_most("flux.manufactured." + tag, flux.relative(), 1e-5));

    std::vector<cplx> f = far_field(k, mesh, coarse.solution.values, bc, angles);
    double near_err = 0.0, far_err = 0.0;
    for (std::size_t a = 0; a < angles.size(); ++a) {
      const Vec2 dir(std::cos(angles[a]), std::sin(angles[a]));
      for (double r : {100.0 / kManufacturedK, 400.0 / kManufacturedK}) {
        const cplx u = eval.correction(r * dir) * std::sqrt(r) * std::exp(-1.0i * kManufacturedK * r);
        double& slot = r < 200.0 / kManufacturedK ? near_err : far_err;
        slot = std::max(slot, std::abs(u - f[a]));
      }
    }
    out.push_back(at_most("farfield.consistency." + tag, far_err / near_err, 0.25,
                          "error at R = 400/k over error at R = 100/k"));
    if (bc == BoundaryCondition::Dirichlet) {
      double fmax = 0.0;
      for (const cplx& v : f) fmax = std::max(fmax, std::abs(v));
      const std::vector<double> grazing = {0.01, pi - 0.01};
      double g = 0.0;
      for (const cplx& v : far_field(k, mesh, coarse.solution.values, bc, grazing)) g = std::max(g, std::abs(v));
      out.push_back(at_most("farfield.grazing_cancellation", g / fmax, 0.05, "|F| at 0.01 rad over max |F|"));
    }
  }
}

void plane_wave_checks(std::vector<CheckResult>& out) {
  const BoundaryProfile bump = triangle_bump();
  {
    const Wavenumber k(2.0);
    const auto reference = [&](const Vec2& p) {
      return reference_halfplane(BoundaryCondition::Dirichlet, k, 0.4, p).value;
    };
    out.push_back(at_most("flux.reference_field",
                          flux_check(k, bump, reference, Vec2(0.5, 1.5), 0.5).relative(), 1e-8));
  }
  for (BoundaryCondition bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    const Solved s = solve_problem(bump, 256, kManufacturedK, bc, PlaneWave{0.4});
    const FieldEvaluator eval(s.problem, s.solution.values);
    const FluxResult flux =
        flux_check(s.problem.k, bump, [&](const Vec2& p) { return eval.total(p); }, Vec2(0.5, 1.5), 0.5);
    out.push_back(at_most("flux.plane_wave." + bc_name(bc), flux.relative(), 1e-5));
  }
}

void uniqueness_checks(std::vector<CheckResult>& out, const std::vector<double>& wavenumbers) {
  const BoundaryProfile bump = triangle_bump();
  for (double kv : wavenumbers) {
    for (BoundaryCondition bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
      const Wavenumber k(kv);
      const auto probes = probe_points(bump, 20, 0.5 * k.wavelength());
      const double d1 = uniqueness_probe(bump, MeshOptions{}, k, bc, PlaneWave{0.4}, 128, 256, probes);
      const double d2 = uniqueness_probe(bump, MeshOptions{}, k, bc, PlaneWave{0.4}, 256, 512, probes);
      std::ostringstream tag;
      tag << bc_name(bc) << ".k" << kv;
      out.push_back(at_most("uniqueness.n128_n256." + tag.str(), d1, 5e-3));
      out.push_back(at_most("uniqueness.refinement." + tag.str(), d2 / d1, 1.0, "disagreement(256,512) / (128,256)"));
    }
  }
}

void mollification_checks(std::vector<CheckResult>& out) {
  const BoundaryProfile bump = triangle_bump();
  for (BoundaryCondition bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    MollificationOptions options;
    options.mesh = mesh_with(256);
    const MollificationResult r = mollification_experiment(bump, Wavenumber(kManufacturedK), bc, options);
    double worst_ratio = 0.0;
    for (std::size_t j = 1; j < 5 && j < r.distances.size(); ++j) {
      worst_ratio = std::max(worst_ratio, r.distances[j] / r.distances[j - 1]);
    }
    std::ostringstream seq;
    for (double d : r.distances) seq << d << ' ';
    CheckResult dec = at_most("mollification.decreasing." + bc_name(bc), worst_ratio, 1.0 - 1e-12,
                              "max d_{j+1}/d_j for j = 0..4; d = " + seq.str());
    out.push_back(dec);
    out.push_back(at_most("mollification.limit." + bc_name(bc), r.final_distance, 5e-3,
                          "relative L2 distance to the Lipschitz solve"));
  }
}

}  // namespace

std::vector<CheckResult> run_checks(Suite suite) {
  std::vector<CheckResult> out;
  special_checks(out);
  kernel_checks(out);
  flat_checks(out);
  manufactured_checks(out);
  plane_wave_checks(out);
  if (suite == Suite::Fast) {
    uniqueness_checks(out, {3.0});
  } else {
    uniqueness_checks(out, {1.0, 3.0, 5.0});
    mollification_checks(out);
  }
  return out;
}

nlohmann::json to_json(const CheckResult& c) {
  return {{"name", c.name}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"passed", c.passed},
          {"detail", c.detail}};
}

bool run_verify(Suite suite, const std::filesystem::path& output_dir) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<CheckResult> checks;
  nlohmann::json report;
  try {
    checks = run_checks(suite);
  } catch (const Error& e) {
    checks.push_back({"suite.exception", 0.0, 0.0, false, e.what()});
  }
  bool ok = true;
  report["suite"] = suite == Suite::Fast ? "fast" : "all";
  report["checks"] = nlohmann::json::array();
  for (const CheckResult& c : checks) {
    report["checks"].push_back(to_json(c));
    ok = ok && c.passed;
  }
  report["passed"] = ok;
  report["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::filesystem::create_directories(output_dir);
  std::ofstream(output_dir / "verify_report.json") << report.dump(2) << '\n';
  return ok;
}

}  // namespace helmbie
