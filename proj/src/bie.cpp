#include "helmbie/bie.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>
#include <unsupported/Eigen/IterativeSolvers>

#include "helmbie/error.hpp"
#include "helmbie/parallel.hpp"

namespace helmbie {

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::V: return "V";
    case OperatorKind::W: return "W";
    case OperatorKind::VPrime: return "Vprime";
  }
  return "?";
}

BoundaryOperator::BoundaryOperator(OperatorKind kind, const Wavenumber& k, const BoundaryMesh& mesh)
    : kind_(kind), k_(k.value()), mesh_(&mesh), quadrature_(mesh.rule()) {
  if (mesh.size() == 0 || mesh.size() != mesh.panels().size() * mesh.nodes_per_panel()) {
    throw Error(ErrorCode::InvalidMesh, "mesh node count does not match its panels");
  }
}

void BoundaryOperator::weights(const Vec2& target, const Vec2& target_normal, std::span<cplx> out) const {
  std::fill(out.begin(), out.end(), cplx(0.0));
  const std::size_t npp = mesh_->nodes_per_panel();
  const Vec2 image = mirror(target);
  const Vec2 image_normal = mirror(target_normal);
  const std::span<const MeshNode> all_nodes(mesh_->nodes());
  for (const Panel& panel : mesh_->panels()) {
    const auto nodes = all_nodes.subspan(panel.first_node, npp);
    const auto row = out.subspan(panel.first_node, npp);
    switch (kind_) {
      case OperatorKind::V:
        quadrature_.add_weights(LayerKernel::Single, k_, panel, nodes, target, target_normal, 1.0, row);
        quadrature_.add_weights(LayerKernel::Single, k_, panel, nodes, image, image_normal, 1.0, row);
        break;
      case OperatorKind::W:
        quadrature_.add_weights(LayerKernel::DoubleSource, k_, panel, nodes, target, target_normal, 1.0, row);
        quadrature_.add_weights(LayerKernel::DoubleSource, k_, panel, nodes, image, image_normal, -1.0, row);
        break;
      case OperatorKind::VPrime:
        quadrature_.add_weights(LayerKernel::DoubleTarget, k_, panel, nodes, target, target_normal, 1.0, row);
        quadrature_.add_weights(LayerKernel::DoubleTarget, k_, panel, nodes, image, image_normal, 1.0, row);
        break;
    }
  }
}

cplx BoundaryOperator::apply(const Vec2& target, const Vec2& target_normal, const Eigen::VectorXcd& density) const {
  std::vector<cplx> w(mesh_->size());
  weights(target, target_normal, w);
  cplx sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) sum += w[j] * density[static_cast<Eigen::Index>(j)];
  return sum;
}

OperatorMatrix assemble_operator(OperatorKind kind, const Wavenumber& k, const BoundaryMesh& mesh) {
  const BoundaryOperator op(kind, k, mesh);
  const auto n = static_cast<Eigen::Index>(mesh.size());
  OperatorMatrix result{kind, k.value(), Eigen::MatrixXcd(n, n)};
  parallel_for(mesh.size(), [&](std::size_t i) {
    std::vector<cplx> row(mesh.size());
    const MeshNode& node = mesh.nodes()[i];
    op.weights(node.point, node.normal, row);
    for (Eigen::Index j = 0; j < n; ++j) result.entries(static_cast<Eigen::Index>(i), j) = row[static_cast<std::size_t>(j)];
  });
  if (!result.entries.allFinite()) throw Error(ErrorCode::InvalidMesh, "operator assembly produced non-finite entries");
  return result;
}

// ---------------------------------------------------------------- problem

BieProblem BieProblem::make(const BoundaryProfile& profile, const MeshOptions& mesh_options, const Wavenumber& k,
                            BoundaryCondition bc, Excitation excitation) {
  BieProblem problem{profile, build_mesh(profile, mesh_options), k, bc, std::move(excitation)};
  problem.validate();
  return problem;
}

void BieProblem::validate() const {
  if (profile.min_height() < 0.0) {
    throw Error(ErrorCode::ProfileBelowAxis,
                "profile dips below y = 0; mirror images of boundary points would fall inside the domain");
  }
  if (const auto* data = std::get_if<BoundaryData>(&excitation)) {
    if (data->values.size() != mesh.size()) {
      std::ostringstream msg;
      msg << "boundary data has " << data->values.size() << " samples, mesh has " << mesh.size() << " nodes";
      throw Error(ErrorCode::ExcitationMismatch, msg.str());
    }
  }
  if (const auto* ps = std::get_if<PointSource>(&excitation)) {
    ManufacturedSource(profile, ps->location);
  }
}

FieldValue BieProblem::reference(const Vec2& point) const {
  if (const auto* pw = std::get_if<PlaneWave>(&excitation)) return reference_halfplane(bc, k, pw->incidence, point);
  return {0.0, 0.0, 0.0};
}

Eigen::VectorXcd build_rhs(const BieProblem& problem) {
  problem.validate();
  const auto& nodes = problem.mesh.nodes();
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(nodes.size()));
  const bool dirichlet = problem.bc == BoundaryCondition::Dirichlet;
  std::visit(
      [&](const auto& ex) {
        using T = std::decay_t<decltype(ex)>;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          const auto idx = static_cast<Eigen::Index>(i);
          if constexpr (std::is_same_v<T, PlaneWave>) {
            // Sound-soft (f = 0) or sound-hard (g = 0) scattering.
            const FieldValue ref = reference_halfplane(problem.bc, problem.k, ex.incidence, nodes[i].point);
            rhs[idx] = dirichlet ? -ref.value : -ref.normal_derivative(nodes[i].normal);
          } else if constexpr (std::is_same_v<T, PointSource>) {
            const FieldValue f = ManufacturedSource(problem.profile, ex.location).field(problem.bc, problem.k, nodes[i].point);
            rhs[idx] = dirichlet ? f.value : f.normal_derivative(nodes[i].normal);
          } else {
            rhs[idx] = ex.values[i];
          }
        }
      },
      problem.excitation);
  return rhs;
}

Eigen::MatrixXcd system_matrix(const BieProblem& problem) {
  const bool dirichlet = problem.bc == BoundaryCondition::Dirichlet;
  const double sigma = dirichlet ? 0.5 : -0.5;
  // On a flat boundary (X - P).n vanishes for both the source and its image.
  if (problem.profile.is_flat()) {
    const auto n = static_cast<Eigen::Index>(problem.mesh.size());
    return sigma * Eigen::MatrixXcd::Identity(n, n);
  }
  OperatorMatrix op = assemble_operator(dirichlet ? OperatorKind::W : OperatorKind::VPrime, problem.k, problem.mesh);
  op.entries.diagonal().array() += sigma;
  return std::move(op.entries);
}

DensitySolution solve(const BieProblem& problem, const SolveOptions& options) {
  const Eigen::VectorXcd rhs = build_rhs(problem);
  const Eigen::MatrixXcd a = system_matrix(problem);
  DensitySolution sol;
  sol.bc = problem.bc;
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    sol.values = Eigen::VectorXcd::Zero(rhs.size());
  }
  if (options.solver == LinearSolver::Dense) {
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
      std::ostringstream msg;
      msg << "system matrix is numerically singular (condition estimate " << (rcond > 0 ? 1.0 / rcond : INFINITY)
          << ")";
      throw Error(ErrorCode::SingularSystem, msg.str());
    }
    sol.condition_estimate = 1.0 / rcond;
    if (rhs_norm > 0.0) {
      sol.values = lu.solve(rhs);
      // One step of iterative refinement.
      const Eigen::VectorXcd r = rhs - a * sol.values;
      sol.values += lu.solve(r);
    }
  } else if (rhs_norm > 0.0) {
    Eigen::GMRES<Eigen::MatrixXcd, Eigen::IdentityPreconditioner> gmres(a);
    gmres.setTolerance(options.gmres_tolerance);
    gmres.set_restart(options.gmres_restart);
    gmres.setMaxIterations(options.gmres_max_iterations);
    sol.values = gmres.solve(rhs);
    sol.iterations = static_cast<int>(gmres.iterations());
    sol.condition_estimate = 0.0;
  }
  if (!sol.values.allFinite()) throw Error(ErrorCode::SingularSystem, "solution contains non-finite values");
  sol.residual_norm = rhs_norm > 0.0 ? (a * sol.values - rhs).norm() / rhs_norm : 0.0;
  const double limit = options.solver == LinearSolver::Dense ? 1e-10 : std::max(1e-10, 10.0 * options.gmres_tolerance);
  if (sol.residual_norm > limit) {
    std::ostringstream msg;
    msg << "relative residual " << sol.residual_norm << " exceeds " << limit;
    throw Error(ErrorCode::SingularSystem, msg.str());
  }
  return sol;
}

}  // namespace helmbie
