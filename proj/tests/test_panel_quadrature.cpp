#include <doctest.h>

#include <cmath>

#include "helmbie/panel_quadrature.hpp"
#include "oracles.hpp"

using namespace helmbie;

namespace {

struct Fixture {
  explicit Fixture(std::size_t n = 64) : mesh(build_mesh(profile, n, 1.0)) {}
  BoundaryProfile profile = build_profile({{0.0, 0.0}, {0.5, 0.3}, {1.0, 0.0}});
  BoundaryMesh mesh;
  const Panel& panel = mesh.panels()[1];
  std::span<const MeshNode> nodes{mesh.nodes().data() + panel.first_node, mesh.nodes_per_panel()};
};

// Smooth density in physical coordinates.
cplx density(const Vec2& p) { return std::exp(cplx(0.5, 2.0) * p.x()) * (1.0 + p.y()); }

// Boost-backed kernel for real k.
cplx kernel_oracle(LayerKernel kind, double k, const Vec2& x, const Vec2& nu, const Vec2& p, const Vec2& n) {
  const Vec2 d = x - p;
  const double r = d.norm();
  if (kind == LayerKernel::Single) return oracle::phi(k, r);
  const cplx dphi = cplx(0.0, -0.25) * k * boost::math::cyl_hankel_1(1, k * r) / r;  // Phi'(r)/r
  return kind == LayerKernel::DoubleSource ? -dphi * d.dot(n) : dphi * d.dot(nu);
}

cplx quadrature_value(const Fixture& f, LayerKernel kind, cplx k, const Vec2& x, const Vec2& nu) {
  const PanelQuadrature q(f.mesh.rule());
  std::vector<cplx> w(f.nodes.size(), 0.0);
  q.add_weights(kind, k, f.panel, f.nodes, x, nu, 1.0, w);
  cplx sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) sum += w[j] * density(f.nodes[j].point);
  return sum;
}

cplx oracle_value(const Fixture& f, LayerKernel kind, double k, const Vec2& x, const Vec2& nu) {
  auto integrand = [&](double t) {
    return kernel_oracle(kind, k, x, nu, f.panel.at(t), f.panel.normal) * density(f.panel.at(t)) *
           (0.5 * f.panel.length);
  };
  // Split at the projection of the target onto the panel line.
  const double t0 = 2.0 * (x - f.panel.center()).dot(f.panel.tangent) / f.panel.length;
  if (t0 > -1.0 && t0 < 1.0) return oracle::integrate(integrand, -1.0, t0) + oracle::integrate(integrand, t0, 1.0);
  return oracle::integrate(integrand, -1.0, 1.0);
}

}  // namespace

TEST_CASE("free kernels match Boost pointwise") {
  const Vec2 x(0.3, 0.9), p(0.1, 0.2), n(0.6, 0.8), nu(-0.8, 0.6);
  for (LayerKernel kind : {LayerKernel::Single, LayerKernel::DoubleSource, LayerKernel::DoubleTarget}) {
    const cplx a = free_kernel(kind, 3.0, x, nu, p, n);
    const cplx b = kernel_oracle(kind, 3.0, x, nu, p, n);
    CHECK(std::abs(a - b) < 1e-13 * std::abs(b));
  }
}

TEST_CASE("double-layer kernel is the source-normal derivative of Phi") {
  const Vec2 x(0.3, 0.9), p(0.1, 0.2), n(0.6, 0.8);
  const double h = 1e-5;
  const cplx fd = (free_kernel(LayerKernel::Single, 2.0, x, n, p + h * n, n) -
                   free_kernel(LayerKernel::Single, 2.0, x, n, p - h * n, n)) /
                  (2.0 * h);
  CHECK(std::abs(fd - free_kernel(LayerKernel::DoubleSource, 2.0, x, n, p, n)) < 1e-9);
}

TEST_CASE("log moments of the Lagrange basis sum to the closed form") {
  const Fixture f;
  const PanelQuadrature q(f.mesh.rule());
  for (double z0 : {-0.9, -0.2, 0.0, 0.37, 0.99}) {
    std::vector<double> lam(q.order());
    std::vector<cplx> kap(q.order());
    q.moments(z0, lam, kap);
    double sum = 0.0;
    for (double v : lam) sum += v;
    CHECK(sum == doctest::Approx((1.0 - z0) * std::log(1.0 - z0) + (1.0 + z0) * std::log(1.0 + z0) - 2.0).epsilon(1e-13));
  }
  // Off the line, the Cauchy moments sum to log((1 - z0) / (-1 - z0)).
  const cplx z0(0.3, 0.2);
  std::vector<double> lam(q.order());
  std::vector<cplx> kap(q.order());
  q.moments(z0, lam, kap);
  cplx sum = 0.0;
  for (const cplx& v : kap) sum += v;
  CHECK(std::abs(sum - (std::log(1.0 - z0) - std::log(-1.0 - z0))) < 1e-13);
}

std::vector<Vec2> near_targets(const Fixture& f) {
  const Vec2 n = f.panel.normal;
  const double L = f.panel.length;
  return {
      f.panel.at(0.3) + 0.01 * L * n,  // very close, above
      f.panel.at(-0.7) - 0.2 * L * n,  // close, below
      f.panel.at(1.4) + 0.05 * L * n,  // beyond the end
      f.panel.center() + 1.5 * L * n,  // inside the near zone
      f.panel.center() + 6.0 * L * n,  // far: plain Gauss
  };
}

double worst_error(const Fixture& f, LayerKernel kind, const Vec2& nu) {
  double worst = 0.0;
  for (const Vec2& x : near_targets(f)) {
    worst = std::max(worst, std::abs(quadrature_value(f, kind, 3.0, x, nu) - oracle_value(f, kind, 3.0, x, nu)));
  }
  return worst;
}

TEST_CASE("product integration matches adaptive quadrature for near and on-panel targets") {
  const Fixture f;
  const Vec2 n = f.panel.normal;
  const Vec2 nu = (0.6 * n + 0.8 * f.panel.tangent).normalized();
  for (LayerKernel kind : {LayerKernel::Single, LayerKernel::DoubleSource, LayerKernel::DoubleTarget}) {
    CHECK(worst_error(f, kind, nu) < 1e-9);
  }
  // Targets on the panel: log-singular single layer, vanishing double layers.
  for (double s : {-0.5, 0.1, f.mesh.rule().nodes[2]}) {
    const Vec2 x = f.panel.at(s);
    CHECK(std::abs(quadrature_value(f, LayerKernel::Single, 3.0, x, n) -
                   oracle_value(f, LayerKernel::Single, 3.0, x, n)) < 1e-11);
    CHECK(quadrature_value(f, LayerKernel::DoubleSource, 3.0, x, n) == cplx(0.0));
    CHECK(quadrature_value(f, LayerKernel::DoubleTarget, 3.0, x, n) == cplx(0.0));
  }
}

TEST_CASE("near-field quadrature error decays at high order with panel length") {
  const Fixture coarse(16), fine(32);
  for (LayerKernel kind : {LayerKernel::Single, LayerKernel::DoubleSource, LayerKernel::DoubleTarget}) {
    const Vec2 nu_c = (0.6 * coarse.panel.normal + 0.8 * coarse.panel.tangent).normalized();
    const Vec2 nu_f = (0.6 * fine.panel.normal + 0.8 * fine.panel.tangent).normalized();
    CHECK(std::log2(worst_error(coarse, kind, nu_c) / worst_error(fine, kind, nu_f)) > 3.5);
  }
}

TEST_CASE("product integration with complex wavenumber") {
  const Fixture f;
  const cplx k(2.0, 0.5);
  const Vec2 x = f.panel.at(0.2) + 0.02 * f.panel.length * f.panel.normal;
  auto integrand = [&](double t) {
    return free_kernel(LayerKernel::Single, k, x, f.panel.normal, f.panel.at(t), f.panel.normal) *
           density(f.panel.at(t)) * (0.5 * f.panel.length);
  };
  const cplx ref = oracle::integrate(integrand, -1.0, 0.2) + oracle::integrate(integrand, 0.2, 1.0);
  CHECK(std::abs(quadrature_value(f, LayerKernel::Single, k, x, f.panel.normal) - ref) < 1e-10);
}

TEST_CASE("near-zone classification") {
  const Fixture f;
  const PanelQuadrature q(f.mesh.rule(), 2.5);
  CHECK(q.is_near(f.panel, f.panel.center() + 2.4 * f.panel.length * f.panel.normal));
  CHECK_FALSE(q.is_near(f.panel, f.panel.center() + 2.6 * f.panel.length * f.panel.normal));
}
