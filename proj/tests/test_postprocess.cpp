#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helmbie/postprocess.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace helmbie;
using std::numbers::pi;

namespace {

BoundaryProfile flat() { return build_profile({{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}}); }
BoundaryProfile bump() { return build_profile({{0.0, 0.0}, {0.5, 0.3}, {1.0, 0.0}}); }

MeshOptions panels(std::size_t n) {
  MeshOptions m;
  m.n_panels = n;
  return m;
}

int green_index(BoundaryCondition bc) { return bc == BoundaryCondition::Dirichlet ? 1 : 2; }

// Image-pair field of a unit source at s, with the boundary condition of bc on y = 0.
cplx exact_field(BoundaryCondition bc, double k, const Vec2& x, const Vec2& s) {
  return oracle::green(green_index(bc), k, x.x(), x.y(), s.x(), s.y());
}

// Far-field amplitude of the same pair from the large-argument form of H0.
cplx exact_far_field(BoundaryCondition bc, double k, double theta, const Vec2& s) {
  const double cx = std::cos(theta), cy = std::sin(theta);
  const cplx pre = cplx(0.0, 0.25) * std::sqrt(2.0 / (pi * k)) * std::exp(cplx(0.0, -0.25 * pi));
  const cplx direct = std::exp(cplx(0.0, -k * (cx * s.x() + cy * s.y())));
  const cplx image = std::exp(cplx(0.0, -k * (cx * s.x() - cy * s.y())));
  return pre * (direct + (bc == BoundaryCondition::Dirichlet ? -1.0 : 1.0) * image);
}

const Vec2 kSource(0.5, -0.1);

}  // namespace

TEST_CASE("zero density reproduces the reference field") {
  const BieProblem pb = BieProblem::make(bump(), panels(16), Wavenumber(2.0), BoundaryCondition::Dirichlet, PlaneWave{0.3});
  const FieldEvaluator ev(pb, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(pb.mesh.size())));
  const Vec2 x(0.2, 1.3);
  const FieldSample s = ev.sample(x);
  CHECK(s.correction == cplx(0.0));
  // Downgoing wave plus its Dirichlet reflection, evaluated directly.
  const double a = 0.3;
  const cplx inc = std::exp(cplx(0.0, 2.0 * (x.x() * std::sin(a) - x.y() * std::cos(a))));
  const cplx refl = std::exp(cplx(0.0, 2.0 * (x.x() * std::sin(a) + x.y() * std::cos(a))));
  CHECK(std::abs(s.total - (inc - refl)) < 1e-14);
}

TEST_CASE("manufactured field matches the image-pair source") {
  for (BoundaryCondition bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    const BieProblem pb = BieProblem::make(bump(), panels(128), Wavenumber(3.0), bc, PointSource{kSource});
    const Eigen::VectorXcd d = solve(pb).values;
    const std::vector<Vec2> pts = {{0.5, 0.6}, {-0.7, 0.4}, {1.8, 0.2}, {0.1, 2.5}, {3.0, 0.05}};
    const std::vector<FieldSample> out = eval_field(pb, d, pts);
    REQUIRE(out.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const cplx ref = exact_field(bc, 3.0, pts[i], kSource);
      CHECK(std::abs(out[i].total - ref) <= 1e-8 * std::abs(ref));
      CHECK(out[i].reference == cplx(0.0));
    }
  }
}

TEST_CASE("Dirichlet correction vanishes on the flat part of the boundary") {
  const BieProblem pb = BieProblem::make(bump(), panels(32), Wavenumber(2.0), BoundaryCondition::Dirichlet, PlaneWave{0.2});
  const FieldEvaluator ev(pb, solve(pb).values);
  for (double x : {-2.0, -0.5, 1.5, 4.0}) CHECK(std::abs(ev.correction(Vec2(x, 0.0))) < 1e-14);
}

TEST_CASE("guard band") {
  const BieProblem pb = BieProblem::make(bump(), panels(16), Wavenumber(2.0), BoundaryCondition::Dirichlet, PlaneWave{});
  const FieldEvaluator ev(pb, solve(pb).values);
  CHECK(code_of([&] { ev.sample(Vec2(0.5, 0.2)); }) == ErrorCode::PointOutsideDomain);
  CHECK(code_of([&] { ev.sample(Vec2(0.25, 0.15 + 1e-4)); }) == ErrorCode::PointTooCloseToBoundary);
  CHECK(std::isfinite(std::abs(ev.correction(Vec2(0.25, 0.15 + 1e-4)))));
}

TEST_CASE("probe points lie above the boundary and are deterministic") {
  const std::vector<Vec2> a = probe_points(bump(), 40, 0.2), b = probe_points(bump(), 40, 0.2);
  CHECK(a.size() == 40);
  CHECK(a == b);
  const BoundaryMesh mesh = build_mesh(bump(), panels(32));
  for (const Vec2& p : a) {
    CHECK(p.y() > bump().height(p.x()));
    CHECK(mesh.distance_to(p) >= 0.2);
  }
}

TEST_CASE("jump relations at smooth nodes") {
  const BoundaryMesh mesh = build_mesh(bump(), panels(64));
  const Wavenumber k(3.0);
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(mesh.size()));
  for (std::size_t j = 0; j < mesh.size(); ++j) {
    const double x = mesh.nodes()[j].point.x();
    psi[static_cast<Eigen::Index>(j)] = cplx(std::cos(2.0 * x), x * x);
  }
  std::size_t checked = 0;
  for (std::size_t i = 0; i < mesh.size(); i += 7) {
    if (mesh.nodes()[i].corner_adjacent) continue;
    for (Side side : {Side::Plus, Side::Minus}) {
      for (LayerType layer : {LayerType::Double, LayerType::Single}) {
        const JumpResult r = jump_check(k, mesh, psi, i, side, layer);
        CHECK(r.deviation < 1e-6);
        CHECK(r.deviation <= std::abs(r.measured - r.predicted) + 1e-300);
      }
    }
    ++checked;
  }
  CHECK(checked > 4);
  std::size_t corner = 0;
  while (!mesh.nodes()[corner].corner_adjacent) ++corner;
  CHECK(code_of([&] { jump_check(k, mesh, psi, corner, Side::Plus, LayerType::Double); }) == ErrorCode::CornerNode);
}

TEST_CASE("far field of the manufactured solution") {
  for (BoundaryCondition bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann}) {
    const BieProblem pb = BieProblem::make(bump(), panels(128), Wavenumber(3.0), bc, PointSource{kSource});
    const Eigen::VectorXcd d = solve(pb).values;
    const std::vector<double> angles = default_angles(12);
    const std::vector<cplx> f = far_field(pb.k, pb.mesh, d, bc, angles);
    for (std::size_t i = 0; i < angles.size(); ++i) {
      CHECK(std::abs(f[i] - exact_far_field(bc, 3.0, angles[i], kSource)) < 1e-8);
    }
  }
  const BoundaryMesh mesh = build_mesh(bump(), panels(16));
  const std::vector<double> angles = default_angles(3);
  CHECK(code_of([&] {
          far_field(Wavenumber(2.0, 0.1), mesh, Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(mesh.size())),
                    BoundaryCondition::Dirichlet, angles);
        }) == ErrorCode::ComplexWavenumber);
  for (double a : default_angles(50)) CHECK((a > 0.0 && a < pi));
}

TEST_CASE("radiation residual") {
  const std::vector<double> angles = default_angles(16);
  const Wavenumber k(3.0);
  CHECK(radiation_residual(k, [](const Vec2&) { return cplx(0.0); }, 10.0, angles) == 0.0);
  const FieldFunction outgoing = [](const Vec2& x) { return exact_field(BoundaryCondition::Neumann, 3.0, x, kSource); };
  const double r1 = radiation_residual(k, outgoing, 20.0, angles);
  const double r2 = radiation_residual(k, outgoing, 80.0, angles);
  // Decay like R^{-3/2}: a factor 8 from R to 4R.
  CHECK(r2 < r1 / 6.0);
  // An incoming wave does not radiate.
  const FieldFunction incoming = [](const Vec2& x) { return std::conj(exact_field(BoundaryCondition::Neumann, 3.0, x, kSource)); };
  CHECK(radiation_residual(k, incoming, 80.0, angles) > 100.0 * r2);
}

TEST_CASE("flux balance") {
  const Wavenumber k(3.0);
  const Vec2 c(0.5, 1.0);
  const FieldFunction u = [](const Vec2& x) { return exact_field(BoundaryCondition::Dirichlet, 3.0, x, kSource); };
  const FluxResult good = flux_check(k, bump(), u, c, 0.5);
  CHECK(good.relative() < 1e-8);
  CHECK(good.absolute_flux > 0.0);
  // A field with an interior source inside the circle carries net flux.
  const FieldFunction v = [&](const Vec2& x) { return oracle::phi(3.0, (x - c).norm()); };
  CHECK(flux_check(k, bump(), v, c + Vec2(0.01, 0.0), 0.5).relative() > 1e-2);
  CHECK(flux_check(k, bump(), [](const Vec2&) { return cplx(0.0); }, c, 0.5).relative() == 0.0);
  CHECK(code_of([&] { flux_check(k, bump(), u, Vec2(0.5, 0.5), 0.5); }) == ErrorCode::CircleOutsideDomain);
  CHECK(code_of([&] { flux_check(Wavenumber(3.0, 0.1), bump(), u, c, 0.5); }) == ErrorCode::ComplexWavenumber);
}

TEST_CASE("abscissa L2 helpers") {
  const BoundaryMesh mesh = build_mesh(flat(), panels(32));
  Eigen::VectorXcd one = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(mesh.size()));
  CHECK(l2_norm_x(mesh, one, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(l2_distance_x(mesh, one, mesh, one, 0.0, 1.0) == 0.0);
  const BoundaryMesh other = build_mesh(flat(), panels(16));
  Eigen::VectorXcd two = 2.0 * Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(other.size()));
  CHECK(l2_distance_x(mesh, one, other, two, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("mollification requires a corner") {
  MollificationOptions opt;
  opt.j_max = 2;
  CHECK(code_of([&] { mollification_experiment(flat(), Wavenumber(2.0), BoundaryCondition::Dirichlet, opt); }) ==
        ErrorCode::PreconditionViolated);
}

TEST_CASE("mollified Dirichlet densities approach the Lipschitz density") {
  MollificationOptions opt;
  opt.j_max = 3;
  opt.mesh = panels(64);
  const MollificationResult r = mollification_experiment(bump(), Wavenumber(2.0), BoundaryCondition::Dirichlet, opt);
  REQUIRE(r.radii.size() == 4);
  REQUIRE(r.distances.size() == 3);
  for (std::size_t j = 1; j < r.radii.size(); ++j) CHECK(r.radii[j] == doctest::Approx(0.5 * r.radii[j - 1]));
  for (std::size_t j = 1; j < r.distances.size(); ++j) CHECK(r.distances[j] < r.distances[j - 1]);
  CHECK(r.lipschitz_norm > 0.0);
  CHECK(r.final_distance < 0.05);
}

TEST_CASE("uniqueness probe") {
  const std::vector<Vec2> probes = probe_points(bump(), 8, 0.3);
  CHECK(uniqueness_probe(flat(), panels(16), Wavenumber(2.0), BoundaryCondition::Neumann, PlaneWave{0.2}, 16, 32,
                         probes) < 1e-14);
  CHECK(uniqueness_probe(bump(), panels(16), Wavenumber(3.0), BoundaryCondition::Dirichlet, PlaneWave{0.2}, 64, 128,
                         probes) < 1e-6);
  CHECK(code_of([&] {
          uniqueness_probe(bump(), panels(16), Wavenumber(3.0), BoundaryCondition::Dirichlet, PlaneWave{}, 64, 100, probes);
        }) == ErrorCode::PreconditionViolated);
}
