#pragma once

// Special Lipschitz domain D = {y > h(x)} with a piecewise-linear height h
// supported on a finite interval, Gauss-panel meshes of the perturbed part
// of the boundary, and corner-rounded approximating profiles.

#include <Eigen/Core>
#include <cstddef>
#include <vector>

namespace helmbie {

using Vec2 = Eigen::Vector2d;

/// Reflection across y = 0.
inline Vec2 mirror(const Vec2& p) { return {p.x(), -p.y()}; }

/// Piecewise-linear height function. Breakpoints have strictly increasing x
/// and zero height at both ends; h is identically zero outside them.
class BoundaryProfile {
 public:
  /// Validating constructor; see build_profile.
  explicit BoundaryProfile(std::vector<Vec2> breakpoints);

  const std::vector<Vec2>& breakpoints() const { return breakpoints_; }
  std::size_t segment_count() const { return breakpoints_.size() - 1; }

  double support_begin() const { return breakpoints_.front().x(); }
  double support_end() const { return breakpoints_.back().x(); }
  double support_length() const { return support_end() - support_begin(); }
  double lipschitz_constant() const { return lipschitz_; }

  double height(double x) const;
  double slope(std::size_t segment) const;
  double segment_length(std::size_t segment) const;
  double arc_length() const;
  double min_height() const;
  bool is_flat() const { return lipschitz_ == 0.0; }

  /// Signed turning angle at breakpoint i, measured against the flat
  /// continuation outside the support for the two end breakpoints.
  /// Positive means the slope increases (convex kink).
  double turning_angle(std::size_t i) const;

  /// Whether (x, y) lies strictly inside D.
  bool contains(double x, double y) const { return y > height(x); }

 private:
  std::vector<Vec2> breakpoints_;
  double lipschitz_ = 0.0;
};

BoundaryProfile build_profile(std::vector<Vec2> breakpoints);
double eval_height(const BoundaryProfile& profile, double x);

/// Exact sup |h_a - h_b| over the real line (both piecewise linear).
double sup_deviation(const BoundaryProfile& a, const BoundaryProfile& b);

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

GaussRule gauss_legendre(std::size_t n);

struct Panel {
  Vec2 start, end;
  Vec2 tangent;   // unit, start -> end (x increasing)
  Vec2 normal;    // unit, positive y component
  double length = 0.0;
  std::size_t segment = 0;
  std::size_t first_node = 0;
  bool corner_adjacent = false;

  Vec2 center() const { return 0.5 * (start + end); }
  Vec2 at(double t) const { return center() + 0.5 * length * t * tangent; }
};

struct MeshNode {
  double t = 0.0;          // arc-length parameter from the support start
  Vec2 point;
  Vec2 normal;
  double jacobian = 1.0;   // sqrt(1 + h'^2)
  double weight = 0.0;     // quadrature weight in the abscissa x
  std::size_t panel = 0;
  bool corner_adjacent = false;

  /// Arc-length quadrature weight.
  double arc_weight() const { return weight * jacobian; }
};

struct MeshOptions {
  std::size_t n_panels = 64;
  double grading = 3.0;            // exponent q of the (i/m)^q map
  std::size_t gauss_per_panel = 4;
  double corner_angle = 0.1;       // turning angle (rad) above which a breakpoint is a corner
};

class BoundaryMesh {
 public:
  BoundaryMesh(std::vector<Panel> panels, std::vector<MeshNode> nodes, GaussRule rule, double grading);

  const std::vector<Panel>& panels() const { return panels_; }
  const std::vector<MeshNode>& nodes() const { return nodes_; }
  const GaussRule& rule() const { return rule_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t nodes_per_panel() const { return rule_.nodes.size(); }
  double grading_exponent() const { return grading_; }

  double arc_length() const;
  /// Distance from p to the meshed polyline, and the index of the closest panel.
  double distance_to(const Vec2& p, std::size_t* closest_panel = nullptr) const;

 private:
  std::vector<Panel> panels_;
  std::vector<MeshNode> nodes_;
  GaussRule rule_;
  double grading_ = 1.0;
};

BoundaryMesh build_mesh(const BoundaryProfile& profile, const MeshOptions& options);
BoundaryMesh build_mesh(const BoundaryProfile& profile, std::size_t n_panels, double q);

/// Corner-rounded approximations h_j >= h with rounding radii rho0 * 2^-j.
struct MollifiedFamily {
  BoundaryProfile base;
  std::vector<BoundaryProfile> members;
  std::vector<double> radii;
};

/// Polyline segments per rounded corner.
inline constexpr std::size_t kFilletSegments = 32;

BoundaryProfile round_corners(const BoundaryProfile& profile, double radius, double corner_angle = 1e-12);
MollifiedFamily mollify(const BoundaryProfile& profile, std::size_t j_max, double rho0);

}  // namespace helmbie
