#include "helmbie/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "helmbie/error.hpp"
#include "helmbie/parallel.hpp"

namespace helmbie {

namespace {

using namespace std::complex_literals;
using std::numbers::pi;

OperatorKind layer_for(BoundaryCondition bc) {
  return bc == BoundaryCondition::Dirichlet ? OperatorKind::W : OperatorKind::V;
}

const Vec2 kUp(0.0, 1.0);

Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

// Value at 0 of the polynomial through (x_i, f_i) (Neville).
cplx extrapolate_to_zero(std::vector<double> x, std::vector<cplx> f) {
  const std::size_t n = x.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      f[i] = (x[i + level] * f[i] - x[i] * f[i + 1]) / (x[i + level] - x[i]);
    }
  }
  return f[0];
}

// Density as a function of the abscissa: linear between nodes, constant
// beyond the end nodes.
class AbscissaInterpolant {
 public:
  AbscissaInterpolant(const BoundaryMesh& mesh, const Eigen::VectorXcd& density) : density_(&density) {
    xs_.reserve(mesh.size());
    for (const MeshNode& node : mesh.nodes()) xs_.push_back(node.point.x());
  }
  cplx operator()(double x) const {
    const auto& d = *density_;
    if (x <= xs_.front()) return d[0];
    if (x >= xs_.back()) return d[static_cast<Eigen::Index>(xs_.size() - 1)];
    const auto hi = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
    return (1.0 - t) * d[static_cast<Eigen::Index>(lo)] + t * d[static_cast<Eigen::Index>(hi)];
  }

 private:
  std::vector<double> xs_;
  const Eigen::VectorXcd* density_;
};

template <typename F>
double l2_over_grid(F&& f, double x0, double x1, std::size_t grid) {
  if (grid < 2 || !(x1 > x0)) throw Error(ErrorCode::PreconditionViolated, "L2 grid needs two points and x1 > x0");
  const double h = (x1 - x0) / static_cast<double>(grid - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double w = (i == 0 || i + 1 == grid) ? 0.5 * h : h;
    sum += w * std::norm(f(x0 + h * static_cast<double>(i)));
  }
  return std::sqrt(sum);
}

void require_real(const Wavenumber& k, const char* what) {
  if (!k.is_real()) throw Error(ErrorCode::ComplexWavenumber, std::string(what) + " requires a real wavenumber");
}

}  // namespace

// ---------------------------------------------------------------- fields

FieldEvaluator::FieldEvaluator(const BieProblem& problem, const Eigen::VectorXcd& density)
    : problem_(&problem), density_(density), layer_(layer_for(problem.bc), problem.k, problem.mesh) {
  if (static_cast<std::size_t>(density.size()) != problem.mesh.size()) {
    throw Error(ErrorCode::ExcitationMismatch, "density length does not match the mesh");
  }
}

cplx FieldEvaluator::correction(const Vec2& point) const { return layer_.apply(point, kUp, density_); }

cplx FieldEvaluator::total(const Vec2& point) const { return problem_->reference(point).value + correction(point); }

FieldSample FieldEvaluator::sample(const Vec2& point) const {
  const BoundaryProfile& profile = problem_->profile;
  if (point.y() < profile.height(point.x())) {
    std::ostringstream msg;
    msg << "point (" << point.x() << ", " << point.y() << ") lies below the boundary";
    throw Error(ErrorCode::PointOutsideDomain, msg.str());
  }
  std::size_t panel = 0;
  const double dist = problem_->mesh.distance_to(point, &panel);
  if (dist < problem_->mesh.panels()[panel].length) {
    std::ostringstream msg;
    msg << "point (" << point.x() << ", " << point.y() << ") is within one panel length of the boundary";
    throw Error(ErrorCode::PointTooCloseToBoundary, msg.str());
  }
  FieldSample s{point, problem_->reference(point).value, correction(point), 0.0};
  s.total = s.reference + s.correction;
  return s;
}

std::vector<FieldSample> eval_field(const BieProblem& problem, const Eigen::VectorXcd& density,
                                    std::span<const Vec2> points) {
  const FieldEvaluator eval(problem, density);
  std::vector<FieldSample> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = eval.sample(points[i]); });
  return out;
}

std::vector<Vec2> probe_points(const BoundaryProfile& profile, std::size_t count, double clearance) {
  double top = 0.0;
  for (const Vec2& b : profile.breakpoints()) top = std::max(top, b.y());
  const double mid = 0.5 * (profile.support_begin() + profile.support_end());
  const double width = std::max(profile.support_length(), 2.0 * clearance);
  const double y0 = top + clearance;
  // Low-discrepancy fill of a box above the support.
  std::vector<Vec2> out;
  out.reserve(count);
  constexpr double kGolden = 0.6180339887498949;
  for (std::size_t i = 0; i < count; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const double v = std::fmod(0.5 + kGolden * static_cast<double>(i), 1.0);
    out.emplace_back(mid + width * (u - 0.5), y0 + width * v);
  }
  return out;
}

// ---------------------------------------------------------------- jumps

JumpResult jump_check(const Wavenumber& k, const BoundaryMesh& mesh, const Eigen::VectorXcd& density,
                      std::size_t node_index, Side side, LayerType layer, const JumpOptions& options) {
  if (node_index >= mesh.size()) throw Error(ErrorCode::PreconditionViolated, "node index out of range");
  if (static_cast<std::size_t>(density.size()) != mesh.size()) {
    throw Error(ErrorCode::ExcitationMismatch, "density length does not match the mesh");
  }
  const MeshNode& node = mesh.nodes()[node_index];
  if (node.corner_adjacent) throw Error(ErrorCode::CornerNode, "jump check at a corner-adjacent node");
  if (options.epsilons.size() < 2 || !(options.alpha > 0.0)) {
    throw Error(ErrorCode::PreconditionViolated, "jump check needs alpha > 0 and at least two distances");
  }
  for (std::size_t i = 0; i < options.epsilons.size(); ++i) {
    if (!(options.epsilons[i] > 0.0) || (i > 0 && !(options.epsilons[i] < options.epsilons[i - 1]))) {
      throw Error(ErrorCode::PreconditionViolated, "approach distances must be positive and decreasing");
    }
  }

  const OperatorKind kind = layer == LayerType::Double ? OperatorKind::W : OperatorKind::VPrime;
  const BoundaryOperator op(kind, k, mesh);
  const double sign = side == Side::Plus ? 1.0 : -1.0;
  const double beta = 0.5 * std::atan(1.0 / (1.0 + options.alpha));
  const Vec2 direction = sign * rotate(node.normal, beta);
  const double panel_length = mesh.panels()[node.panel].length;

  std::vector<double> xs;
  std::vector<cplx> fs;
  for (double eps : options.epsilons) {
    const double dist = eps * panel_length;
    const Vec2 m = node.point + dist * direction;
    const double to_boundary = std::min(mesh.distance_to(m), std::abs(m.y()));
    if (!(dist < (1.0 + options.alpha) * to_boundary)) {
      throw Error(ErrorCode::ConeViolation, "approach point leaves the nontangential cone");
    }
    xs.push_back(dist);
    fs.push_back(op.apply(m, node.normal, density));
  }

  const cplx direct = op.apply(node.point, node.normal, density);
  const cplx value = density[static_cast<Eigen::Index>(node_index)];
  // Double layer jumps by +1/2 into D, the normal derivative of the single
  // layer by -1/2 (normals point into D).
  const double jump = layer == LayerType::Double ? 0.5 * sign : -0.5 * sign;
  JumpResult r;
  r.measured = extrapolate_to_zero(xs, fs);
  r.predicted = jump * value + direct;
  r.deviation = std::abs(r.measured - r.predicted);
  return r;
}

// ---------------------------------------------------------------- far field

std::vector<double> default_angles(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = pi * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
  return out;
}

std::vector<cplx> far_field(const Wavenumber& k, const BoundaryMesh& mesh, const Eigen::VectorXcd& density,
                            BoundaryCondition bc, std::span<const double> angles) {
  require_real(k, "far field");
  if (static_cast<std::size_t>(density.size()) != mesh.size()) {
    throw Error(ErrorCode::ExcitationMismatch, "density length does not match the mesh");
  }
  const double kr = k.value().real();
  const cplx prefactor = 0.25i * std::sqrt(2.0 / (pi * kr)) * std::exp(-0.25i * pi);
  const bool dirichlet = bc == BoundaryCondition::Dirichlet;
  std::vector<cplx> out(angles.size());
  parallel_for(angles.size(), [&](std::size_t a) {
    const Vec2 dir(std::cos(angles[a]), std::sin(angles[a]));
    const Vec2 image = mirror(dir);
    cplx sum = 0.0;
    for (std::size_t j = 0; j < mesh.size(); ++j) {
      const MeshNode& node = mesh.nodes()[j];
      const cplx e_direct = std::exp(-1.0i * kr * dir.dot(node.point));
      const cplx e_image = std::exp(-1.0i * kr * image.dot(node.point));
      cplx kernel;
      if (dirichlet) {
        kernel = -1.0i * kr * (dir.dot(node.normal) * e_direct - image.dot(node.normal) * e_image);
      } else {
        kernel = e_direct + e_image;
      }
      sum += node.arc_weight() * kernel * density[static_cast<Eigen::Index>(j)];
    }
    out[a] = prefactor * sum;
  });
  return out;
}

double radiation_residual(const Wavenumber& k, const FieldFunction& scattered, double radius,
                          std::span<const double> angles, const Vec2& center) {
  require_real(k, "radiation residual");
  const double step = k.wavelength() / 100.0;
  std::vector<double> values(angles.size());
  parallel_for(angles.size(), [&](std::size_t a) {
    const Vec2 dir(std::cos(angles[a]), std::sin(angles[a]));
    const cplx plus = scattered(center + (radius + step) * dir);
    const cplx minus = scattered(center + (radius - step) * dir);
    const cplx here = scattered(center + radius * dir);
    values[a] = std::abs((plus - minus) / (2.0 * step) - 1.0i * k.value() * here);
  });
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

FluxResult flux_check(const Wavenumber& k, const BoundaryProfile& profile, const FieldFunction& field,
                      const Vec2& center, double radius) {
  require_real(k, "flux check");
  constexpr std::size_t kPoints = 512;
  const double step = std::min(k.wavelength(), radius) / 200.0;
  if (!(radius > 0.0)) throw Error(ErrorCode::CircleOutsideDomain, "circle radius must be positive");
  // Dense scan of the outer stencil circle against the boundary graph.
  for (std::size_t i = 0; i < 4 * kPoints; ++i) {
    const double t = 2.0 * pi * static_cast<double>(i) / (4.0 * kPoints);
    const Vec2 p = center + (radius + 2.0 * step) * Vec2(std::cos(t), std::sin(t));
    if (!profile.contains(p.x(), p.y()) || p.y() <= 0.0) {
      throw Error(ErrorCode::CircleOutsideDomain, "flux circle is not strictly inside the domain");
    }
  }
  std::vector<cplx> terms(kPoints);
  parallel_for(kPoints, [&](std::size_t i) {
    const double t = 2.0 * pi * static_cast<double>(i) / kPoints;
    const Vec2 dir(std::cos(t), std::sin(t));
    auto at = [&](double r) { return field(center + r * dir); };
    const cplx u = at(radius);
    const cplx du = (-at(radius + 2.0 * step) + 8.0 * at(radius + step) - 8.0 * at(radius - step) +
                     at(radius - 2.0 * step)) /
                    (12.0 * step);
    terms[i] = std::conj(u) * du;
  });
  const double w = 2.0 * pi * radius / kPoints;
  cplx sum = 0.0;
  double abs_sum = 0.0;
  for (const cplx& t : terms) {
    sum += w * t;
    abs_sum += w * std::abs(t);
  }
  return {std::abs(sum.imag()), abs_sum};
}

// ---------------------------------------------------------------- L2

double l2_norm_x(const BoundaryMesh& mesh, const Eigen::VectorXcd& density, double x0, double x1,
                 std::size_t grid) {
  const AbscissaInterpolant f(mesh, density);
  return l2_over_grid(f, x0, x1, grid);
}

double l2_distance_x(const BoundaryMesh& mesh_a, const Eigen::VectorXcd& a, const BoundaryMesh& mesh_b,
                     const Eigen::VectorXcd& b, double x0, double x1, std::size_t grid) {
  const AbscissaInterpolant fa(mesh_a, a), fb(mesh_b, b);
  return l2_over_grid([&](double x) { return fa(x) - fb(x); }, x0, x1, grid);
}

// ---------------------------------------------------------------- experiments

MollificationResult mollification_experiment(const BoundaryProfile& profile, const Wavenumber& k,
                                              BoundaryCondition bc, const MollificationOptions& options) {
  bool has_corner = false;
  for (std::size_t i = 0; i < profile.breakpoints().size(); ++i) {
    if (std::abs(profile.turning_angle(i)) > 1e-12) has_corner = true;
  }
  if (!has_corner) throw Error(ErrorCode::PreconditionViolated, "mollification needs a profile with a corner");
  if (options.j_max < 1) throw Error(ErrorCode::PreconditionViolated, "mollification needs j_max >= 1");

  const MollifiedFamily family = mollify(profile, static_cast<std::size_t>(options.j_max), options.rho0);
  const double x0 = profile.support_begin(), x1 = profile.support_end();
  const Excitation excitation = PlaneWave{options.incidence};

  struct Solved {
    BieProblem problem;
    Eigen::VectorXcd density;
  };
  auto run = [&](const BoundaryProfile& p) {
    BieProblem problem = BieProblem::make(p, options.mesh, k, bc, excitation);
    Eigen::VectorXcd density = solve(problem).values;
    return Solved{std::move(problem), std::move(density)};
  };

  MollificationResult result;
  result.radii = family.radii;
  const Solved lipschitz = run(profile);
  result.lipschitz_norm = l2_norm_x(lipschitz.problem.mesh, lipschitz.density, x0, x1);
  Solved previous = run(family.members.front());
  for (std::size_t j = 1; j < family.members.size(); ++j) {
    Solved current = run(family.members[j]);
    result.distances.push_back(
        l2_distance_x(previous.problem.mesh, previous.density, current.problem.mesh, current.density, x0, x1));
    previous = std::move(current);
  }
  const double final_distance =
      l2_distance_x(previous.problem.mesh, previous.density, lipschitz.problem.mesh, lipschitz.density, x0, x1);
  result.final_distance = result.lipschitz_norm > 0.0 ? final_distance / result.lipschitz_norm : final_distance;
  return result;
}

double uniqueness_probe(const BoundaryProfile& profile, const MeshOptions& mesh, const Wavenumber& k,
                        BoundaryCondition bc, const Excitation& excitation, int n_coarse, int n_fine,
                        std::span<const Vec2> probes) {
  if (n_fine < 2 * n_coarse) throw Error(ErrorCode::PreconditionViolated, "resolutions must differ by at least 2x");
  auto fields = [&](int n) {
    MeshOptions opts = mesh;
    opts.n_panels = n;
    const BieProblem problem = BieProblem::make(profile, opts, k, bc, excitation);
    const DensitySolution sol = solve(problem);
    const FieldEvaluator eval(problem, sol.values);
    std::vector<cplx> out;
    for (const Vec2& p : probes) out.push_back(eval.sample(p).total);
    return out;
  };
  const std::vector<cplx> coarse = fields(n_coarse);
  const std::vector<cplx> fine = fields(n_fine);
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    diff = std::max(diff, std::abs(fine[i] - coarse[i]));
    scale = std::max(scale, std::abs(fine[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace helmbie
