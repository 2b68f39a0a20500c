#pragma once
// Field reconstruction from boundary densities, far-field amplitudes, and
// numerical checks of the jump relations, the radiation condition, the
// Green-identity flux balance, mollified-domain convergence and
// resolution-independence of the solution.
#include <functional>
#include <span>
#include <vector>

#include "helmbie/bie.hpp"

namespace helmbie {

struct FieldSample {
  Vec2 point;
  cplx reference;   // incident plus reflected field, zero for manufactured problems
  cplx correction;  // layer potential of the density
  cplx total;
};

/// Field in D reconstructed from a solved density. Plain evaluation keeps a
/// guard band of one local panel length away from the perturbed boundary.
class FieldEvaluator {
 public:
  FieldEvaluator(const BieProblem& problem, const Eigen::VectorXcd& density);

  FieldSample sample(const Vec2& point) const;
  /// Correction without the guard-band check (near-boundary evaluation is
  /// still handled by product integration, at reduced accuracy).
  cplx correction(const Vec2& point) const;
  cplx total(const Vec2& point) const;

  const BieProblem& problem() const { return *problem_; }

 private:
  const BieProblem* problem_;
  Eigen::VectorXcd density_;
  BoundaryOperator layer_;
};

std::vector<FieldSample> eval_field(const BieProblem& problem, const Eigen::VectorXcd& density,
                                    std::span<const Vec2> points);

/// Points at least `clearance` from the perturbed boundary, spread over the
/// region above it; deterministic.
std::vector<Vec2> probe_points(const BoundaryProfile& profile, std::size_t count, double clearance);

enum class LayerType { Double, Single };
enum class Side { Plus, Minus };  // Plus: inside D, along the normal

struct JumpOptions {
  double alpha = 1.0;                                  // Luzin cone aperture parameter
  std::vector<double> epsilons = {1e-2, 5e-3, 2.5e-3};  // multiples of the node's panel length
};

struct JumpResult {
  cplx measured;    // extrapolated nontangential limit
  cplx predicted;   // jump term plus discrete direct value
  double deviation;
};

/// Double layer: limit of (W psi)(M) against (+-1/2) psi + W psi.
/// Single layer: limit of d/dn (V phi)(M) against (-+1/2) phi + V' phi.
JumpResult jump_check(const Wavenumber& k, const BoundaryMesh& mesh, const Eigen::VectorXcd& density,
                      std::size_t node, Side side, LayerType layer, const JumpOptions& options = {});

/// Angles in (0, pi) avoiding the grazing directions.
std::vector<double> default_angles(std::size_t count);

/// F(theta) with u*(R, theta) ~ F(theta) e^{ikR} / sqrt(R), polar coordinates
/// centered at the origin.
std::vector<cplx> far_field(const Wavenumber& k, const BoundaryMesh& mesh, const Eigen::VectorXcd& density,
                            BoundaryCondition bc, std::span<const double> angles);

using FieldFunction = std::function<cplx(const Vec2&)>;

/// max over angles of |d/dr u* - i k u*| at radius R about `center`.
double radiation_residual(const Wavenumber& k, const FieldFunction& scattered, double radius,
                          std::span<const double> angles, const Vec2& center = Vec2(0.0, 0.0));

struct FluxResult {
  double imag_flux;      // |Im of the circle integral of conj(u) du/dn|
  double absolute_flux;  // integral of |conj(u) du/dn|
  double relative() const { return absolute_flux > 0.0 ? imag_flux / absolute_flux : 0.0; }
};

/// Trapezoid rule with 512 points; the radial derivative is a fourth-order
/// central difference.
FluxResult flux_check(const Wavenumber& k, const BoundaryProfile& profile, const FieldFunction& field,
                      const Vec2& center, double radius);

/// L2 norm over [x0, x1] of the density as a function of the abscissa, by
/// piecewise-linear interpolation onto a uniform grid.
double l2_norm_x(const BoundaryMesh& mesh, const Eigen::VectorXcd& density, double x0, double x1,
                 std::size_t grid = 2048);
double l2_distance_x(const BoundaryMesh& mesh_a, const Eigen::VectorXcd& a, const BoundaryMesh& mesh_b,
                     const Eigen::VectorXcd& b, double x0, double x1, std::size_t grid = 2048);

struct MollificationOptions {
  int j_max = 7;
  double rho0 = 0.1;
  double incidence = 0.0;
  MeshOptions mesh;
};

struct MollificationResult {
  std::vector<double> radii;
  std::vector<double> distances;  // ||phi_{j+1} - phi_j|| for j = 0 .. j_max - 1
  double final_distance = 0.0;    // ||phi_{j_max} - phi|| / ||phi||
  double lipschitz_norm = 0.0;    // ||phi||
};

/// Plane-wave scattering solved on every mollified profile and on the
/// Lipschitz profile; norms over the Lipschitz support.
MollificationResult mollification_experiment(const BoundaryProfile& profile, const Wavenumber& k,
                                              BoundaryCondition bc, const MollificationOptions& options);

/// Largest field disagreement at the probes between solutions on two mesh
/// resolutions, relative to the largest fine-mesh field magnitude.
double uniqueness_probe(const BoundaryProfile& profile, const MeshOptions& mesh, const Wavenumber& k,
                        BoundaryCondition bc, const Excitation& excitation, int n_coarse, int n_fine,
                        std::span<const Vec2> probes);

}  // namespace helmbie
