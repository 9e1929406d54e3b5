// Abstraction over the discretized variational problem that the eigenvalue
// algorithms (CDM, CMPA) run on. The planar P1 space and the weighted radial
// space both implement it; the algorithms themselves only ever touch
// coefficient vectors.
#pragma once

#include <memory>
#include <vector>

#include "plap/functionals.hpp"
#include "plap/plap_inverse.hpp"

namespace plap {

using Coeffs = std::vector<double>;

class ProblemSpace {
 public:
  virtual ~ProblemSpace() = default;
  virtual double p() const = 0;
  virtual std::size_t size() const = 0;
  virtual double I(const Coeffs& u) const = 0;
  virtual double J(const Coeffs& u) const = 0;
  // Action of phi -> int |u|^{p-2} u phi on the nodal basis.
  virtual Coeffs source_density_vec(const Coeffs& u) const = 0;
  // v = (-Delta_p)^{-1} f for a dual action f; implementations keep warm
  // solver state between calls.
  virtual Coeffs invert(const Coeffs& f_action, std::vector<double>* history) = 0;
  virtual void reset_solver() = 0;
  // Adjusts the residual tolerance of the inner solver (used to polish the
  // eigenvalue estimate at the final iterate).
  virtual void set_al_tol(double tol) = 0;
};

// Planar P1 backend over a mesh at fixed p; owns the stiffness factorization
// and the augmented Lagrangian session.
class FemSpace : public ProblemSpace {
 public:
  FemSpace(const Mesh& mesh, double p, const AlConfig& al);

  double p() const override { return p_; }
  std::size_t size() const override;
  double I(const Coeffs& u) const override;
  double J(const Coeffs& u) const override;
  Coeffs source_density_vec(const Coeffs& u) const override;
  Coeffs invert(const Coeffs& f_action, std::vector<double>* history) override;
  void reset_solver() override;
  void set_al_tol(double tol) override;

  const Mesh& mesh() const { return *mesh_; }
  const StiffnessOperator& stiffness() const { return K_; }
  AlSolver& al() { return al_; }

 private:
  const Mesh* mesh_;
  double p_;
  StiffnessOperator K_;
  AlSolver al_;
};

}  // namespace plap
