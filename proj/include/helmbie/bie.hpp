#pragma once

// Second-kind boundary integral equations on the perturbed part of the
// boundary.
//
// With Phi = (i/4) H0^(1) and normals pointing into D, the layer potentials
//   (W psi)(M) = int dG1/dn(P) psi dl,   (V phi)(M) = int G2 phi dl
// have the boundary limits from inside D
//   W psi  ->  +1/2 psi + W psi,      d/dn(M) V phi  ->  -1/2 phi + V' phi,
// so the Dirichlet problem u = u_ref + W psi becomes (1/2 I + W) psi = f - u_ref
// and the Neumann problem u = v_ref + V phi becomes (-1/2 I + V') phi = g - dv_ref/dn.

#include <Eigen/Core>
#include <complex>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "helmbie/geometry.hpp"
#include "helmbie/kernels.hpp"
#include "helmbie/panel_quadrature.hpp"

namespace helmbie {

enum class OperatorKind {
  V,       // single layer with G2
  W,       // double layer with dG1/dn(P)
  VPrime,  // normal derivative at the target of the G2 single layer
};

std::string_view to_string(OperatorKind kind);

/// Rows of a boundary operator at arbitrary targets. Holds a reference to the
/// mesh, which must outlive it.
class BoundaryOperator {
 public:
  BoundaryOperator(OperatorKind kind, const Wavenumber& k, const BoundaryMesh& mesh);

  /// Overwrites out (size = node count) with the quadrature weights of the
  /// operator row at `target`. For VPrime the derivative direction is
  /// `target_normal`; it is ignored otherwise.
  void weights(const Vec2& target, const Vec2& target_normal, std::span<cplx> out) const;

  cplx apply(const Vec2& target, const Vec2& target_normal, const Eigen::VectorXcd& density) const;

  OperatorKind kind() const { return kind_; }
  const BoundaryMesh& mesh() const { return *mesh_; }

 private:
  OperatorKind kind_;
  cplx k_;
  const BoundaryMesh* mesh_;
  PanelQuadrature quadrature_;
};

struct OperatorMatrix {
  OperatorKind kind;
  cplx k;
  Eigen::MatrixXcd entries;

  Eigen::Index size() const { return entries.rows(); }
};

OperatorMatrix assemble_operator(OperatorKind kind, const Wavenumber& k, const BoundaryMesh& mesh);

struct PlaneWave {
  double incidence = 0.0;  // from the downward vertical, radians
};

struct PointSource {
  Vec2 location;
};

/// Explicit boundary samples of f (Dirichlet) or g (Neumann) at mesh nodes.
struct BoundaryData {
  std::vector<cplx> values;
};

using Excitation = std::variant<PlaneWave, PointSource, BoundaryData>;

struct BieProblem {
  BoundaryProfile profile;
  BoundaryMesh mesh;
  Wavenumber k;
  BoundaryCondition bc;
  Excitation excitation;

  static BieProblem make(const BoundaryProfile& profile, const MeshOptions& mesh_options, const Wavenumber& k,
                         BoundaryCondition bc, Excitation excitation);

  /// Throws if the excitation or geometry is inconsistent.
  void validate() const;

  /// Known incident-plus-reflected field (zero unless the excitation is a plane wave).
  FieldValue reference(const Vec2& point) const;
};

Eigen::VectorXcd build_rhs(const BieProblem& problem);

/// sigma I + K for the problem's boundary condition.
Eigen::MatrixXcd system_matrix(const BieProblem& problem);

enum class LinearSolver { Dense, Gmres };

struct SolveOptions {
  LinearSolver solver = LinearSolver::Dense;
  double gmres_tolerance = 1e-10;
  int gmres_restart = 100;
  int gmres_max_iterations = 2000;
};

struct DensitySolution {
  Eigen::VectorXcd values;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  double residual_norm = 0.0;
  double condition_estimate = 1.0;  // 1-norm estimate; 0 when not computed (GMRES)
  int iterations = 0;
};

DensitySolution solve(const BieProblem& problem, const SolveOptions& options = {});

}  // namespace helmbie
