#include "helmbie/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "helmbie/error.hpp"

namespace helmbie {

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

// ---------------------------------------------------------------- profile

BoundaryProfile::BoundaryProfile(std::vector<Vec2> breakpoints) : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.size() < 2) {
    throw Error(ErrorCode::TooFewPoints, "a profile needs at least two breakpoints");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i].x() > breakpoints_[i - 1].x())) {
      std::ostringstream msg;
      msg << "breakpoint x values must be strictly increasing (index " << i << ")";
      throw Error(ErrorCode::NonMonotoneX, msg.str());
    }
  }
  for (const Vec2& p : breakpoints_) {
    if (!std::isfinite(p.x()) || !std::isfinite(p.y())) {
      throw Error(ErrorCode::NonMonotoneX, "breakpoints must be finite");
    }
  }
  const double scale = 1.0 + std::abs(breakpoints_.front().x()) + std::abs(breakpoints_.back().x());
  for (Vec2* end : {&breakpoints_.front(), &breakpoints_.back()}) {
    if (std::abs(end->y()) > 1e-12 * scale) {
      throw Error(ErrorCode::NonZeroEndpoints, "the height must vanish at both support endpoints");
    }
    end->y() = 0.0;
  }
  for (std::size_t s = 0; s < segment_count(); ++s) lipschitz_ = std::max(lipschitz_, std::abs(slope(s)));
}

double BoundaryProfile::height(double x) const {
  if (!(x > support_begin() && x < support_end())) return 0.0;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x,
                                   [](double v, const Vec2& p) { return v < p.x(); });
  const Vec2& b = *it;
  const Vec2& a = *(it - 1);
  const double t = (x - a.x()) / (b.x() - a.x());
  return a.y() + t * (b.y() - a.y());
}

double BoundaryProfile::slope(std::size_t s) const {
  const Vec2 d = breakpoints_[s + 1] - breakpoints_[s];
  return d.y() / d.x();
}

double BoundaryProfile::segment_length(std::size_t s) const {
  return (breakpoints_[s + 1] - breakpoints_[s]).norm();
}

double BoundaryProfile::arc_length() const {
  double total = 0.0;
  for (std::size_t s = 0; s < segment_count(); ++s) total += segment_length(s);
  return total;
}

double BoundaryProfile::min_height() const {
  double m = 0.0;
  for (const Vec2& p : breakpoints_) m = std::min(m, p.y());
  return m;
}

double BoundaryProfile::turning_angle(std::size_t i) const {
  const double s_in = i == 0 ? 0.0 : slope(i - 1);
  const double s_out = i + 1 == breakpoints_.size() ? 0.0 : slope(i);
  return std::atan(s_out) - std::atan(s_in);
}

BoundaryProfile build_profile(std::vector<Vec2> breakpoints) { return BoundaryProfile(std::move(breakpoints)); }

double eval_height(const BoundaryProfile& profile, double x) { return profile.height(x); }

double sup_deviation(const BoundaryProfile& a, const BoundaryProfile& b) {
  std::vector<double> xs;
  xs.reserve(a.breakpoints().size() + b.breakpoints().size());
  for (const Vec2& p : a.breakpoints()) xs.push_back(p.x());
  for (const Vec2& p : b.breakpoints()) xs.push_back(p.x());
  double sup = 0.0;
  for (double x : xs) sup = std::max(sup, std::abs(a.height(x) - b.height(x)));
  // height() is zero at the support ends; breakpoint heights are exact there too.
  for (const Vec2& p : a.breakpoints()) sup = std::max(sup, std::abs(p.y() - b.height(p.x())));
  for (const Vec2& p : b.breakpoints()) sup = std::max(sup, std::abs(p.y() - a.height(p.x())));
  return sup;
}

// ---------------------------------------------------------------- quadrature

GaussRule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = nd * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kd = static_cast<double>(k);
      const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : nd * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// ---------------------------------------------------------------- mesh

BoundaryMesh::BoundaryMesh(std::vector<Panel> panels, std::vector<MeshNode> nodes, GaussRule rule, double grading)
    : panels_(std::move(panels)), nodes_(std::move(nodes)), rule_(std::move(rule)), grading_(grading) {}

double BoundaryMesh::arc_length() const {
  double total = 0.0;
  for (const MeshNode& n : nodes_) total += n.arc_weight();
  return total;
}

double BoundaryMesh::distance_to(const Vec2& p, std::size_t* closest_panel) const {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_panel = 0;
  for (std::size_t i = 0; i < panels_.size(); ++i) {
    const double d = point_segment_distance(p, panels_[i].start, panels_[i].end);
    if (d < best) {
      best = d;
      best_panel = i;
    }
  }
  if (closest_panel) *closest_panel = best_panel;
  return best;
}

namespace {

// Panel breakpoints in [0, 1] for one profile segment.
std::vector<double> segment_partition(std::size_t count, bool grade_start, bool grade_end, double q) {
  std::vector<double> u;
  if (count == 1 || (!grade_start && !grade_end)) {
    for (std::size_t i = 0; i <= count; ++i) u.push_back(static_cast<double>(i) / static_cast<double>(count));
    return u;
  }
  const std::size_t left = count / 2;
  const std::size_t right = count - left;
  for (std::size_t i = 0; i <= left; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(left);
    u.push_back(0.5 * (grade_start ? std::pow(s, q) : s));
  }
  for (std::size_t i = 1; i <= right; ++i) {
    const double s = static_cast<double>(right - i) / static_cast<double>(right);
    u.push_back(1.0 - 0.5 * (grade_end ? std::pow(s, q) : s));
  }
  return u;
}

}  // namespace

BoundaryMesh build_mesh(const BoundaryProfile& profile, const MeshOptions& options) {
  if (options.n_panels < 4) throw Error(ErrorCode::TooFewPanels, "at least 4 panels are required");
  if (!(options.grading >= 1.0)) throw Error(ErrorCode::InvalidMesh, "grading exponent must be >= 1");
  if (options.gauss_per_panel < 1 || options.gauss_per_panel > 16) {
    throw Error(ErrorCode::InvalidMesh, "gauss_per_panel must be in [1, 16]");
  }

  const std::size_t n_seg = profile.segment_count();
  const std::size_t n_bp = profile.breakpoints().size();
  std::vector<bool> corner(n_bp);
  for (std::size_t i = 0; i < n_bp; ++i) corner[i] = std::abs(profile.turning_angle(i)) > options.corner_angle;

  const double total = profile.arc_length();
  GaussRule rule = gauss_legendre(options.gauss_per_panel);
  std::vector<Panel> panels;
  std::vector<MeshNode> nodes;
  double arc_start = 0.0;

  for (std::size_t s = 0; s < n_seg; ++s) {
    const Vec2 a = profile.breakpoints()[s];
    const Vec2 b = profile.breakpoints()[s + 1];
    const double len = profile.segment_length(s);
    const auto count = static_cast<std::size_t>(
        std::max<long>(1, std::lround(static_cast<double>(options.n_panels) * len / total)));
    // Grade toward corners and toward much shorter neighbours.
    const bool grade_start = corner[s] || (s > 0 && profile.segment_length(s - 1) < 0.5 * len);
    const bool grade_end = corner[s + 1] || (s + 1 < n_seg && profile.segment_length(s + 1) < 0.5 * len);
    const std::vector<double> u = segment_partition(count, grade_start, grade_end, options.grading);

    const Vec2 tangent = (b - a) / len;
    const Vec2 normal(-tangent.y(), tangent.x());
    const double jac = len / (b.x() - a.x());
    for (std::size_t p = 0; p + 1 < u.size(); ++p) {
      Panel panel;
      panel.start = a + u[p] * (b - a);
      panel.end = a + u[p + 1] * (b - a);
      panel.tangent = tangent;
      panel.normal = normal;
      panel.length = (u[p + 1] - u[p]) * len;
      panel.segment = s;
      panel.first_node = nodes.size();
      panel.corner_adjacent = (p == 0 && corner[s]) || (p + 2 == u.size() && corner[s + 1]);
      const double dx = panel.end.x() - panel.start.x();
      for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
        MeshNode node;
        node.point = panel.at(rule.nodes[g]);
        node.normal = normal;
        node.jacobian = jac;
        node.weight = 0.5 * dx * rule.weights[g];
        node.t = arc_start + u[p] * len + 0.5 * (1.0 + rule.nodes[g]) * panel.length;
        node.panel = panels.size();
        node.corner_adjacent = panel.corner_adjacent;
        nodes.push_back(node);
      }
      panels.push_back(panel);
    }
    arc_start += len;
  }
  return BoundaryMesh(std::move(panels), std::move(nodes), std::move(rule), options.grading);
}

BoundaryMesh build_mesh(const BoundaryProfile& profile, std::size_t n_panels, double q) {
  MeshOptions options;
  options.n_panels = n_panels;
  options.grading = q;
  return build_mesh(profile, options);
}

// ---------------------------------------------------------------- mollification

namespace {

struct RoundedZone {
  double left = 0.0;   // horizontal reach to the left of the corner
  double right = 0.0;
  std::vector<Vec2> samples;
};

// Convex kinks get a circular fillet tangent to both lines (it lies above
// them). Concave kinks cannot be filleted from above by a single arc, so the
// kink is lifted by |ds| * g(u), g(u) = |u|/2 (1 - |u|/w)^2, which cancels the
// slope jump and leaves a C^1 graph with h_j >= h.
RoundedZone round_corner(const Vec2& c, double s_in, double s_out, double radius) {
  RoundedZone zone;
  const double th_in = std::atan(s_in);
  const double th_out = std::atan(s_out);
  const double turn = th_out - th_in;
  const std::size_t n = kFilletSegments;
  if (turn > 0.0) {
    const Vec2 e_in(std::cos(th_in), std::sin(th_in));
    const Vec2 e_out(std::cos(th_out), std::sin(th_out));
    const double reach = radius * std::tan(0.5 * turn);
    const Vec2 a = c - reach * e_in;
    const Vec2 b = c + reach * e_out;
    const Vec2 center = a + radius * Vec2(-e_in.y(), e_in.x());
    const double phi_a = th_in - 0.5 * std::numbers::pi;
    const double phi_b = th_out - 0.5 * std::numbers::pi;
    zone.samples.push_back(a);
    for (std::size_t i = 1; i < n; ++i) {
      const double phi = phi_a + (phi_b - phi_a) * static_cast<double>(i) / static_cast<double>(n);
      zone.samples.push_back(center + radius * Vec2(std::cos(phi), std::sin(phi)));
    }
    zone.samples.push_back(b);
    zone.left = c.x() - a.x();
    zone.right = b.x() - c.x();
  } else {
    const double w = radius;
    const double lift = s_in - s_out;
    for (std::size_t i = 0; i <= n; ++i) {
      const double u = -w + 2.0 * w * static_cast<double>(i) / static_cast<double>(n);
      const double line = c.y() + (u < 0.0 ? s_in : s_out) * u;
      const double au = std::abs(u);
      const double g = 0.5 * au * (1.0 - au / w) * (1.0 - au / w);
      zone.samples.emplace_back(c.x() + u, line + lift * g);
    }
    zone.samples.front() = Vec2(c.x() - w, c.y() - s_in * w);
    zone.samples.back() = Vec2(c.x() + w, c.y() + s_out * w);
    zone.left = w;
    zone.right = w;
  }
  return zone;
}

}  // namespace

BoundaryProfile round_corners(const BoundaryProfile& profile, double radius, double corner_angle) {
  const auto& bp = profile.breakpoints();
  const std::size_t n = bp.size();
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(profile.turning_angle(i)) <= corner_angle) {
      out.push_back(bp[i]);
      continue;
    }
    const double s_in = i == 0 ? 0.0 : profile.slope(i - 1);
    const double s_out = i + 1 == n ? 0.0 : profile.slope(i);
    RoundedZone zone = round_corner(bp[i], s_in, s_out, radius);
    const double room_left = i == 0 ? std::numeric_limits<double>::infinity() : 0.5 * (bp[i].x() - bp[i - 1].x());
    const double room_right =
        i + 1 == n ? std::numeric_limits<double>::infinity() : 0.5 * (bp[i + 1].x() - bp[i].x());
    if (zone.left > room_left || zone.right > room_right) {
      throw Error(ErrorCode::RadiusTooLarge, "rounding radius exceeds half of an adjacent segment");
    }
    out.insert(out.end(), zone.samples.begin(), zone.samples.end());
  }
  out.front().y() = 0.0;
  out.back().y() = 0.0;
  return BoundaryProfile(std::move(out));
}

MollifiedFamily mollify(const BoundaryProfile& profile, std::size_t j_max, double rho0) {
  double shortest = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < profile.segment_count(); ++s) shortest = std::min(shortest, profile.segment_length(s));
  if (!(rho0 > 0.0) || !(rho0 < 0.5 * shortest)) {
    throw Error(ErrorCode::RadiusTooLarge, "rho0 must be positive and below half the shortest segment");
  }
  MollifiedFamily family{profile, {}, {}};
  for (std::size_t j = 0; j <= j_max; ++j) {
    const double rho = std::ldexp(rho0, -static_cast<int>(j));
    family.radii.push_back(rho);
    family.members.push_back(round_corners(profile, rho));
  }
  return family;
}

}  // namespace helmbie
