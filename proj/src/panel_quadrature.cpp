#include "helmbie/panel_quadrature.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "helmbie/special_functions.hpp"

namespace helmbie {

namespace {

using namespace std::complex_literals;
using std::numbers::pi;

cplx as_complex(const Vec2& v) { return {v.x(), v.y()}; }

}  // namespace

cplx free_kernel(LayerKernel kernel, cplx k, const Vec2& target, const Vec2& target_normal, const Vec2& source,
                 const Vec2& source_normal) {
  const Vec2 diff = target - source;
  const double r = diff.norm();
  const special::HankelValue h = special::hankel01(k * r);
  switch (kernel) {
    case LayerKernel::Single:
      return 0.25i * h.h0;
    case LayerKernel::DoubleSource:
      return 0.25i * k * h.h1 * diff.dot(source_normal) / r;
    case LayerKernel::DoubleTarget:
      return -0.25i * k * h.h1 * diff.dot(target_normal) / r;
  }
  return 0.0;
}

PanelQuadrature::PanelQuadrature(const GaussRule& rule, double near_factor)
    : rule_(rule), near_factor_(near_factor) {
  const auto n = static_cast<Eigen::Index>(rule_.nodes.size());
  Eigen::MatrixXd vandermonde(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (Eigen::Index m = 0; m < n; ++m) {
      vandermonde(i, m) = p;
      p *= rule_.nodes[static_cast<std::size_t>(i)];
    }
  }
  const Eigen::MatrixXd inv = vandermonde.inverse();
  monomial_to_lagrange_.resize(static_cast<std::size_t>(n * n));
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index j = 0; j < n; ++j) monomial_to_lagrange_[static_cast<std::size_t>(m * n + j)] = inv(m, j);
  }
}

bool PanelQuadrature::is_near(const Panel& panel, const Vec2& target) const {
  return (target - panel.center()).norm() < near_factor_ * panel.length;
}

void PanelQuadrature::moments(cplx z0, std::span<double> log_moments, std::span<cplx> cauchy_moments) const {
  const std::size_t n = order();
  // Monomial moments I_m = int t^m ln|t - z0|, J_m = int t^m / (t - z0).
  std::vector<double> im(n);
  std::vector<cplx> jm(n + 1);
  const bool on_line = z0.imag() == 0.0;
  cplx log_right, log_left;  // log(1 - z0), log(-1 - z0) on a branch continuous along [-1, 1]
  if (on_line) {
    log_right = std::log(std::abs(1.0 - z0.real()));
    log_left = std::log(std::abs(-1.0 - z0.real()));
  } else {
    log_right = std::log(1.0 - z0);
    log_left = std::log(-1.0 - z0);
  }
  jm[0] = log_right - log_left;
  for (std::size_t m = 1; m <= n; ++m) {
    const double md = static_cast<double>(m);
    jm[m] = z0 * jm[m - 1] + (m % 2 == 1 ? 2.0 / md : 0.0);
  }
  for (std::size_t m = 0; m < n; ++m) {
    const double mp1 = static_cast<double>(m + 1);
    const double sign_left = (m % 2 == 0) ? -1.0 : 1.0;  // (-1)^{m+1}
    const cplx boundary = (log_right - sign_left * log_left) / mp1;
    im[m] = (boundary - jm[m + 1] / mp1).real();
  }
  for (std::size_t j = 0; j < n; ++j) {
    double lj = 0.0;
    cplx cj = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double c = monomial_to_lagrange_[m * n + j];
      lj += c * im[m];
      cj += c * jm[m];
    }
    log_moments[j] = lj;
    cauchy_moments[j] = cj;
  }
}

void PanelQuadrature::add_weights(LayerKernel kernel, cplx k, const Panel& panel, std::span<const MeshNode> nodes,
                                  const Vec2& target, const Vec2& target_normal, cplx scale,
                                  std::span<cplx> out) const {
  const std::size_t n = order();
  const double half = 0.5 * panel.length;

  if (!is_near(panel, target)) {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx kv = free_kernel(kernel, k, target, target_normal, nodes[j].point, panel.normal);
      out[j] += scale * (half * rule_.weights[j]) * kv;
    }
    return;
  }

  const cplx e = as_complex(panel.tangent);
  cplx z0 = std::conj(e) * as_complex(target - panel.center()) / half;
  // Snap targets lying on the panel line (to absolute rounding) onto it.
  if (std::abs(z0.imag()) * half <= 1e-13 * (1.0 + target.norm())) z0.imag(0.0);
  const bool on_panel = z0.imag() == 0.0 && std::abs(z0.real()) < 1.0;

  const Vec2& nu = kernel == LayerKernel::DoubleTarget ? target_normal : panel.normal;
  if (kernel != LayerKernel::Single && on_panel) {
    // (X - P).nu vanishes identically on the line when nu is its normal.
    if (std::abs(nu.dot(panel.tangent)) > 1e-12) {
      throw std::logic_error("product integration: tangential target normal on a source panel");
    }
    return;
  }

  std::vector<double> lam(n);
  std::vector<cplx> kap(n);
  moments(z0, lam, kap);
  const double log_half = std::log(half);
  const cplx log_k = std::log(k);

  if (kernel == LayerKernel::Single) {
    for (std::size_t j = 0; j < n; ++j) {
      const double r = (target - nodes[j].point).norm();
      const special::LogSplit s = special::log_split_h0(k * r);
      const cplx log_part = 0.25i * s.log_coeff;            // multiplies ln r
      const cplx smooth = 0.25i * (s.log_coeff * log_k + s.regular);
      const cplx w = half * (log_part * (log_half * rule_.weights[j] + lam[j]) + smooth * rule_.weights[j]);
      out[j] += scale * w;
    }
    return;
  }

  const double sign = kernel == LayerKernel::DoubleSource ? 1.0 : -1.0;
  const cplx nu_over_e = as_complex(nu) / e;
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 diff = target - nodes[j].point;
    const double r = diff.norm();
    const double q = diff.dot(nu);
    const special::LogSplit s = special::log_split_h1(k * r);
    // (ik/4) H1(kr) q/r = q/(2 pi r^2) + B ln r + smooth
    const cplx j1_over_r = (s.log_coeff / (2.0i / pi)) / r;
    const cplx b = -(k / (2.0 * pi)) * j1_over_r * q;
    const cplx smooth = b * log_k + 0.25i * k * (s.regular / r) * q;
    const double cauchy = (-(nu_over_e * kap[j])).real() / (2.0 * pi);
    const cplx w = cauchy + half * (b * (log_half * rule_.weights[j] + lam[j]) + smooth * rule_.weights[j]);
    out[j] += scale * (sign * w);
  }
}

}  // namespace helmbie
