// Inverse of the p-Laplacian by the Augmented Lagrangian splitting: a flux
// surrogate s and multiplier eta live on the triangles, and each sweep costs
// one linear Laplace solve plus a scalar root-find per triangle:
//   step 1:  r (grad u, grad phi) = <f, phi> + ((r s - eta), grad phi)
//   step 2:  |s|^{p-2} s + r s = r grad u + eta   (radial scalar equation)
//   step 3:  eta <- eta + r (grad u - s)
// Convergence is measured by the area-weighted L2 norm of grad u - s,
// relative to the norm of grad u.
#pragma once

#include <stdexcept>
#include <vector>

#include "plap/linsolve.hpp"

namespace plap {

struct AlConfig {
  double r = 0.0;             // penalty parameter; <= 0 picks default_r(p)
  double tol = 1e-8;          // residual tolerance, relative to ||grad u||
  int max_iter = 30000;
  double newton_tol = 1e-12;  // on the scalar flux equation
  double linear_rel_tol = 1e-10;
};

// Penalty defaults anchored to the (p, r) pairs that work in practice:
// large r near p = 1, r ~ 1 near p = 2, small r for large p. Geometric
// interpolation between anchors, clamped outside p in [1.1, 10].
double default_r(double p);

// Unique nonnegative root m of m^{p-1} + r m = rhs_norm, found by a
// bisection-safeguarded Newton iteration on the bracket [0, min(rhs_norm/r,
// rhs_norm^{1/(p-1)})]. |m^{p-1} + r m - rhs_norm| <= newton_tol (1 + rhs_norm).
double solve_flux_magnitude(double p, double r, double rhs_norm, double newton_tol);

struct AlError : std::runtime_error {
  AlError(const std::string& msg, std::vector<double> hist)
      : std::runtime_error(msg), residual_history(std::move(hist)) {}
  std::vector<double> residual_history;
};

class AlSolver {
 public:
  AlSolver(const StiffnessOperator& K, double p, const AlConfig& cfg);

  // Runs the iteration until the residual tolerance is met, warm-starting
  // from the current (u, s, eta). Throws AlError on hitting max_iter.
  FeFunction solve(const DualVector& f, std::vector<double>* history = nullptr);

  // One sweep of steps 1-3 for a fixed right-hand side; returns the absolute
  // residual ||grad u - s||. Exposed for tests that inspect the iteration.
  double iterate(const DualVector& f);

  void reset();
  void set_tol(double tol) { cfg_.tol = tol; }

  double p() const { return p_; }
  double r() const { return cfg_.r; }
  const AlConfig& config() const { return cfg_; }
  const std::vector<Vec2>& flux() const { return s_; }
  const std::vector<Vec2>& multiplier() const { return eta_; }
  const FeFunction& current() const { return u_; }

 private:
  const StiffnessOperator* K_;
  double p_;
  AlConfig cfg_;
  std::vector<Vec2> s_, eta_;
  std::vector<double> m_warm_;
  FeFunction u_;
  double grad_scale_ = 0.0;
  double dual_scale_ = 0.0;
};

struct AlResult {
  FeFunction u;
  std::vector<double> residual_history;
};

// One-shot convenience wrapper; assembles the stiffness operator internally.
AlResult invert_p_laplacian(const Mesh& mesh, const DualVector& f, double p,
                            const AlConfig& cfg);

}  // namespace plap
