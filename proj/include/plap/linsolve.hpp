// P1 stiffness operator of the linear Laplacian on the free vertices and SPD
// solves against it. The same operator is reused across thousands of inner
// solves of the Augmented Lagrangian iteration, so the factorization is
// computed once per mesh and cached.
#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <memory>

#include "plap/fe.hpp"

namespace plap {

class StiffnessOperator {
 public:
  explicit StiffnessOperator(const Mesh& mesh);

  const Mesh& mesh() const { return *mesh_; }
  const Eigen::SparseMatrix<double>& matrix() const { return A_; }

  // Solves A x = b to ||A x - b|| <= rel_tol ||b|| (Euclidean norm), using the
  // cached Cholesky factorization plus iterative refinement. Throws on
  // failure to reach the tolerance.
  Eigen::VectorXd solve(const Eigen::VectorXd& b, double rel_tol) const;

 private:
  const Mesh* mesh_;
  Eigen::SparseMatrix<double> A_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> fact_;
};

StiffnessOperator assemble_stiffness(const Mesh& mesh);
FeFunction solve_spd(const StiffnessOperator& A, const DualVector& b, double rel_tol);

}  // namespace plap
