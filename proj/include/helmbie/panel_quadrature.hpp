#pragma once

// Nystrom weights for one straight source panel and one target point.
//
// Far targets use the panel's Gauss rule directly. Near targets use product
// integration: the kernel is split into a Cauchy part (the Laplace kernel), a
// part multiplying ln r and a smooth remainder; the first two are integrated
// exactly against the Lagrange basis on the panel nodes.

#include <complex>
#include <span>
#include <vector>

#include "helmbie/geometry.hpp"

namespace helmbie {

using cplx = std::complex<double>;

enum class LayerKernel {
  Single,        // Phi(k|X-P|)
  DoubleSource,  // d/dn(P) Phi, normal of the source panel
  DoubleTarget,  // d/dnu(X) Phi, nu supplied with the target
};

/// Free-space fundamental solution Phi(z) = (i/4) H0^(1)(k r) and its
/// normal derivatives, evaluated pointwise.
cplx free_kernel(LayerKernel kernel, cplx k, const Vec2& target, const Vec2& target_normal, const Vec2& source,
                 const Vec2& source_normal);

class PanelQuadrature {
 public:
  explicit PanelQuadrature(const GaussRule& rule, double near_factor = 2.5);

  /// Adds scale * w_j to out[j] so that
  ///   int_panel K(target, P) sigma(P) dl_P ~ sum_j w_j sigma(P_j).
  /// `nodes` are the panel's quadrature nodes (mesh order).
  void add_weights(LayerKernel kernel, cplx k, const Panel& panel, std::span<const MeshNode> nodes,
                   const Vec2& target, const Vec2& target_normal, cplx scale, std::span<cplx> out) const;

  bool is_near(const Panel& panel, const Vec2& target) const;

  /// int_{-1}^{1} l_j(t) ln|t - z0| dt and int_{-1}^{1} l_j(t) / (t - z0) dt
  /// for the Lagrange basis l_j on the rule nodes. Exposed for testing.
  void moments(cplx z0, std::span<double> log_moments, std::span<cplx> cauchy_moments) const;

  std::size_t order() const { return rule_.nodes.size(); }

 private:
  GaussRule rule_;
  double near_factor_;
  std::vector<double> monomial_to_lagrange_;  // C(n, j), row-major n * order + j
};

}  // namespace helmbie
