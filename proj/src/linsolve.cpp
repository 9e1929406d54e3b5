#include "plap/linsolve.hpp"

#include <stdexcept>
#include <vector>

namespace plap {

StiffnessOperator::StiffnessOperator(const Mesh& mesh) : mesh_(&mesh) {
  const int n = mesh.n_free();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(9 * mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const auto& g = mesh.tri_geom[t];
    if (g.area < 1e-14 * mesh.area)
      throw std::invalid_argument("assemble_stiffness: degenerate triangle");
    for (int a = 0; a < 3; ++a) {
      const int i = mesh.free_index[tri[a]];
      if (i < 0) continue;
      for (int b = 0; b < 3; ++b) {
        const int j = mesh.free_index[tri[b]];
        if (j < 0) continue;
        trip.emplace_back(i, j, g.area * dot(g.grad[a], g.grad[b]));
      }
    }
  }
  A_.resize(n, n);
  A_.setFromTriplets(trip.begin(), trip.end());
  A_.makeCompressed();
  fact_.compute(A_);
  if (fact_.info() != Eigen::Success)
    throw std::runtime_error("stiffness factorization failed");
}

Eigen::VectorXd StiffnessOperator::solve(const Eigen::VectorXd& b, double rel_tol) const {
  if (!(rel_tol > 0.0) || rel_tol > 1e-2)
    throw std::invalid_argument("solve_spd: rel_tol must lie in (0, 1e-2]");
  const double bnorm = b.norm();
  Eigen::VectorXd x = fact_.solve(b);
  if (bnorm == 0.0) return Eigen::VectorXd::Zero(b.size());
  for (int pass = 0; pass < 4; ++pass) {
    const Eigen::VectorXd r = b - A_ * x;
    if (r.norm() <= rel_tol * bnorm) return x;
    x += fact_.solve(r);
  }
  const double res = (b - A_ * x).norm();
  if (res <= rel_tol * bnorm) return x;
  throw std::runtime_error("solve_spd: refinement stalled, residual " + std::to_string(res / bnorm));
}

StiffnessOperator assemble_stiffness(const Mesh& mesh) { return StiffnessOperator(mesh); }

FeFunction solve_spd(const StiffnessOperator& A, const DualVector& b, double rel_tol) {
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.action.data(), b.action.size());
  Eigen::VectorXd x = A.solve(rhs, rel_tol);
  FeFunction out(A.mesh());
  Eigen::Map<Eigen::VectorXd>(out.coeffs.data(), out.coeffs.size()) = x;
  return out;
}

}  // namespace plap
