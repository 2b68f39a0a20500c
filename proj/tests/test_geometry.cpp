#include <doctest.h>

#include <cmath>
#include <numeric>

#include "helmbie/geometry.hpp"
#include "test_util.hpp"

using namespace helmbie;

namespace {

BoundaryProfile triangle() { return build_profile({{0.0, 0.0}, {0.5, 0.3}, {1.0, 0.0}}); }

}  // namespace

TEST_CASE("profile validation") {
  CHECK(code_of([] { build_profile({{0.0, 0.0}}); }) == ErrorCode::TooFewPoints);
  CHECK(code_of([] { build_profile({{0.0, 0.0}, {0.5, 0.2}, {0.5, 0.1}, {1.0, 0.0}}); }) == ErrorCode::NonMonotoneX);
  CHECK(code_of([] { build_profile({{0.0, 0.1}, {1.0, 0.0}}); }) == ErrorCode::NonZeroEndpoints);
  CHECK(code_of([] { build_profile({{0.0, 0.0}, {1.0, 0.2}}); }) == ErrorCode::NonZeroEndpoints);
}

TEST_CASE("profile evaluation") {
  const BoundaryProfile p = triangle();
  CHECK(p.segment_count() == 2);
  CHECK(p.lipschitz_constant() == doctest::Approx(0.6));
  CHECK(p.height(0.25) == doctest::Approx(0.15));
  CHECK(p.height(0.75) == doctest::Approx(0.15));
  CHECK(p.height(-3.0) == 0.0);
  CHECK(p.height(4.0) == 0.0);
  CHECK(eval_height(p, 0.5) == doctest::Approx(0.3));
  CHECK(p.slope(1) == doctest::Approx(-0.6));
  CHECK(p.arc_length() == doctest::Approx(2.0 * std::hypot(0.5, 0.3)));
  CHECK(p.min_height() == 0.0);
  CHECK_FALSE(p.is_flat());
  CHECK(p.contains(0.5, 0.31));
  CHECK_FALSE(p.contains(0.5, 0.29));
  // Turning angles sum to zero for a profile returning to the axis.
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) total += p.turning_angle(i);
  CHECK(std::abs(total) < 1e-14);
  CHECK(p.turning_angle(1) == doctest::Approx(-2.0 * std::atan(0.6)));
  CHECK(build_profile({{0.0, 0.0}, {1.0, 0.0}}).is_flat());
}

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2n-1 exactly") {
  for (std::size_t n : {1, 2, 4, 7, 16}) {
    const GaussRule r = gauss_legendre(n);
    CHECK(r.nodes.size() == n);
    CHECK(std::is_sorted(r.nodes.begin(), r.nodes.end()));
    for (std::size_t d = 0; d <= 2 * n - 1; ++d) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += r.weights[i] * std::pow(r.nodes[i], static_cast<double>(d));
      const double exact = d % 2 == 1 ? 0.0 : 2.0 / static_cast<double>(d + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("mesh quadrature reproduces arc length and integrals along the graph") {
  const BoundaryProfile p = triangle();
  for (std::size_t n : {8, 64, 256}) {
    const BoundaryMesh mesh = build_mesh(p, n, 3.0);
    CHECK(mesh.size() == mesh.panels().size() * 4);
    double arc = 0.0, moment = 0.0;
    for (const MeshNode& node : mesh.nodes()) {
      arc += node.arc_weight();
      moment += node.weight * node.point.x() * node.point.x();
    }
    CHECK(arc == doctest::Approx(p.arc_length()).epsilon(1e-13));
    CHECK(mesh.arc_length() == doctest::Approx(p.arc_length()).epsilon(1e-13));
    CHECK(moment == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  }
}

TEST_CASE("mesh nodes lie on the graph with upward unit normals, ordered in t") {
  const BoundaryMesh mesh = build_mesh(triangle(), 32, 3.0);
  double prev = -1.0;
  for (const MeshNode& node : mesh.nodes()) {
    CHECK(std::abs(node.point.y() - triangle().height(node.point.x())) < 1e-14);
    CHECK(node.normal.norm() == doctest::Approx(1.0));
    CHECK(node.normal.y() > 0.0);
    CHECK(node.t > prev);
    prev = node.t;
  }
}

TEST_CASE("grading concentrates panels at corners") {
  const BoundaryMesh graded = build_mesh(triangle(), 64, 3.0);
  const BoundaryMesh uniform = build_mesh(triangle(), 64, 1.0);
  auto min_len = [](const BoundaryMesh& m) {
    double v = INFINITY;
    for (const Panel& p : m.panels()) v = std::min(v, p.length);
    return v;
  };
  CHECK(min_len(graded) < 0.05 * min_len(uniform));
  // The smallest panels touch a corner.
  for (const Panel& p : graded.panels()) {
    if (p.length == min_len(graded)) CHECK(p.corner_adjacent);
  }
  CHECK(graded.grading_exponent() == 3.0);
  // A flat profile has no corners, so grading has no effect.
  const BoundaryProfile flat = build_profile({{0.0, 0.0}, {1.0, 0.0}});
  const BoundaryMesh a = build_mesh(flat, 16, 3.0);
  CHECK(min_len(a) == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("mesh validation and distance") {
  CHECK(code_of([] { build_mesh(triangle(), 3, 3.0); }) == ErrorCode::TooFewPanels);
  CHECK(code_of([] { build_mesh(triangle(), 16, 0.5); }) == ErrorCode::InvalidMesh);
  MeshOptions o;
  o.gauss_per_panel = 17;
  CHECK(code_of([&] { build_mesh(triangle(), o); }) == ErrorCode::InvalidMesh);
  const BoundaryMesh mesh = build_mesh(triangle(), 16, 3.0);
  CHECK(mesh.distance_to(Vec2(0.5, 1.3)) == doctest::Approx(1.0));
  CHECK(mesh.distance_to(Vec2(0.25, 0.15)) < 1e-14);
}

TEST_CASE("mollified profiles: C1 polylines above h approaching it") {
  const BoundaryProfile p = triangle();
  const MollifiedFamily fam = mollify(p, 4, 0.1);
  REQUIRE(fam.members.size() == 5);
  double prev = INFINITY;
  for (std::size_t j = 0; j < fam.members.size(); ++j) {
    const BoundaryProfile& m = fam.members[j];
    CHECK(fam.radii[j] == doctest::Approx(0.1 * std::ldexp(1.0, -static_cast<int>(j))));
    CHECK(m.breakpoints().size() > p.breakpoints().size());
    // Each kink is spread over kFilletSegments small turns.
    const double bound = 5.0 * 2.0 * std::atan(0.6) / static_cast<double>(kFilletSegments);
    for (std::size_t i = 0; i < m.breakpoints().size(); ++i) CHECK(std::abs(m.turning_angle(i)) < bound);
    for (int s = 0; s <= 200; ++s) {
      const double x = -0.2 + 1.4 * s / 200.0;
      CHECK(m.height(x) >= p.height(x) - 1e-14);
    }
    const double dev = sup_deviation(m, p);
    CHECK(dev < prev);
    if (j > 0) CHECK(dev / prev == doctest::Approx(0.5).epsilon(0.02));
    prev = dev;
  }
  CHECK(sup_deviation(p, p) == 0.0);
}

TEST_CASE("sup_deviation is exact for piecewise-linear profiles") {
  const BoundaryProfile a = triangle();
  const BoundaryProfile b = build_profile({{0.0, 0.0}, {0.5, 0.1}, {1.0, 0.0}});
  CHECK(sup_deviation(a, b) == doctest::Approx(0.2));
  const BoundaryProfile c = build_profile({{-1.0, 0.0}, {2.0, 0.0}});
  CHECK(sup_deviation(a, c) == doctest::Approx(0.3));
}

TEST_CASE("mollification radius limits") {
  CHECK(code_of([] { mollify(triangle(), 3, 0.4); }) == ErrorCode::RadiusTooLarge);
  CHECK(code_of([] { mollify(triangle(), 3, 0.0); }) == ErrorCode::RadiusTooLarge);
  CHECK(code_of([] { round_corners(build_profile({{0.0, 0.0}, {0.1, 0.05}, {1.0, 0.0}}), 0.09); }) ==
        ErrorCode::RadiusTooLarge);
}
