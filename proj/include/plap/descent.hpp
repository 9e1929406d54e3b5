// Descent direction on the constraint set S: the tangent vector closest to
// -u, obtained from one inverse p-Laplacian solve,
//   w_u = -u + v_u / nu,   v_u = (-Delta_p)^{-1}(|u|^{p-2} u),
//   nu  = int |u|^{p-2} u v_u dx.
// For an eigenfunction w_u = 0 and (1/nu)^{p-1} is the eigenvalue.
#pragma once

#include "plap/space.hpp"

namespace plap {

struct DescentVec {
  Coeffs w;
  Coeffs v;
  double nu = 0.0;
  double w_norm = 0.0;  // W^{1,p} norm, I(w)^{1/p}
};

// u must satisfy J(u) = 1 up to 1e-8.
DescentVec descent_step(ProblemSpace& space, const Coeffs& u);

double eigenvalue_estimate(double nu, double p);

// FE-typed wrapper. Assembles its own solver state; loops should prefer a
// persistent FemSpace plus descent_step.
struct DescentResult {
  FeFunction w;
  FeFunction v;
  double nu = 0.0;
  double w_norm = 0.0;
};
DescentResult descent_direction(const FeFunction& u, double p, const AlConfig& al);
DescentResult descent_direction(FemSpace& space, const FeFunction& u);

}  // namespace plap
