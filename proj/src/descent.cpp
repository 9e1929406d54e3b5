#include "plap/descent.hpp"

#include <cmath>
#include <stdexcept>

namespace plap {

DescentVec descent_step(ProblemSpace& space, const Coeffs& u) {
  const double j = space.J(u);
  if (std::abs(j - 1.0) > 1e-8)
    throw std::invalid_argument("descent_step: u must lie on S (J(u) = 1)");

  DescentVec d;
  const Coeffs f = space.source_density_vec(u);
  d.v = space.invert(f, nullptr);
  d.nu = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) d.nu += f[i] * d.v[i];
  if (!(d.nu > 0.0))
    throw std::runtime_error("descent: nu <= 0 (inner solve failed or u not on S)");

  d.w = d.v;
  const double inv_nu = 1.0 / d.nu;
  for (std::size_t i = 0; i < d.w.size(); ++i) d.w[i] = d.w[i] * inv_nu - u[i];
  d.w_norm = std::pow(space.I(d.w), 1.0 / space.p());
  return d;
}

double eigenvalue_estimate(double nu, double p) {
  require_p(p);
  if (!(nu > 0.0))
    throw std::invalid_argument("eigenvalue_estimate: nu must be positive");
  return std::pow(1.0 / nu, p - 1.0);
}

DescentResult descent_direction(FemSpace& space, const FeFunction& u) {
  DescentVec d = descent_step(space, u.coeffs);
  DescentResult out;
  out.w = FeFunction(space.mesh(), std::move(d.w));
  out.v = FeFunction(space.mesh(), std::move(d.v));
  out.nu = d.nu;
  out.w_norm = d.w_norm;
  return out;
}

DescentResult descent_direction(const FeFunction& u, double p, const AlConfig& al) {
  FemSpace space(*u.mesh, p, al);
  return descent_direction(space, u);
}

}  // namespace plap
