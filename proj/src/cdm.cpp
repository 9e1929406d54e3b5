#include "plap/cdm.hpp"

#include <cmath>
#include <stdexcept>

namespace plap {

namespace {

// Scales a coefficient vector onto S; mirrors scale_to_S for plain vectors.
Coeffs scale_vec(const ProblemSpace& space, Coeffs u) {
  const double j = space.J(u);
  if (!(j > 1e-280)) throw std::runtime_error("cannot scale zero function to S");
  double c = std::pow(j, -1.0 / space.p());
  for (double& x : u) x *= c;
  const double j1 = space.J(u);
  if (std::abs(j1 - 1.0) > 1e-14) {
    c = std::pow(j1, -1.0 / space.p());
    for (double& x : u) x *= c;
  }
  return u;
}

}  // namespace

EigenpairVec run_cdm_vec(ProblemSpace& space, const Coeffs& e0, const CdmConfig& cfg) {
  if (!(cfg.dt0 > 0.0) || !(cfg.dt_min > 0.0) || cfg.dt_min >= cfg.dt0 ||
      !(cfg.w_tol > 0.0) || cfg.max_iter <= 0)
    throw std::invalid_argument("CdmConfig: need 0 < dt_min < dt0 and positive tolerances");

  EigenpairVec out;
  Coeffs u = scale_vec(space, e0);
  double I_u = space.I(u);
  out.status = SolveStatus::MaxIter;

  Coeffs cand(u.size());
  for (int n = 0; n < cfg.max_iter; ++n) {
    const DescentVec d = descent_step(space, u);
    if (d.w_norm <= cfg.w_tol) {
      out.status = SolveStatus::Converged;
      break;
    }
    double dt = cfg.dt0;
    bool accepted = false;
    double I_new = 0.0;
    while (dt >= cfg.dt_min) {
      for (std::size_t i = 0; i < u.size(); ++i) cand[i] = u[i] + dt * d.w[i];
      const double j = space.J(cand);
      if (j > 1e-280) {
        Coeffs next = scale_vec(space, cand);
        I_new = space.I(next);
        // Accept up to roundoff: for p near 1 the functional is so flat
        // around the minimizer that exact comparisons stop the flow early.
        if (I_new <= I_u * (1.0 + 5e-14)) {
          u = std::move(next);
          I_new = std::min(I_new, I_u);
          accepted = true;
          break;
        }
      }
      dt *= 0.5;
    }
    if (!accepted) {
      out.status = SolveStatus::Stalled;
      break;
    }
    I_u = I_new;
    ++out.iterations;
    out.history.push_back({I_u, d.w_norm, dt});
  }

  // One tighter descent solve at the final iterate pins down nu, the norm of
  // w, and hence the reported eigenvalue.
  if (cfg.polish_tol > 0.0) space.set_al_tol(std::min(cfg.al.tol, cfg.polish_tol));
  const DescentVec fin = descent_step(space, u);
  space.set_al_tol(cfg.al.tol);

  out.u = std::move(u);
  out.w_norm_final = fin.w_norm;
  if (out.status != SolveStatus::Converged && fin.w_norm <= cfg.w_tol)
    out.status = SolveStatus::Converged;
  out.lambda = eigenvalue_estimate(fin.nu, space.p());
  out.lambda_rayleigh = space.I(out.u) / space.J(out.u);
  out.lambda_consistent =
      std::abs(out.lambda - out.lambda_rayleigh) <= 1e-3 * std::abs(out.lambda_rayleigh);
  return out;
}

namespace {

EigenpairResult to_fe_result(const Mesh& mesh, EigenpairVec&& r) {
  EigenpairResult out;
  out.lambda = r.lambda;
  out.lambda_rayleigh = r.lambda_rayleigh;
  out.u = FeFunction(mesh, std::move(r.u));
  out.w_norm_final = r.w_norm_final;
  out.iterations = r.iterations;
  out.history = std::move(r.history);
  out.status = r.status;
  out.lambda_consistent = r.lambda_consistent;
  return out;
}

}  // namespace

EigenpairResult run_cdm(FemSpace& space, const FeFunction& e0, const CdmConfig& cfg) {
  EigenpairVec r = run_cdm_vec(space, e0.coeffs, cfg);
  return to_fe_result(space.mesh(), std::move(r));
}

EigenpairResult run_cdm(const Mesh& mesh, const FeFunction& e0, double p,
                        const CdmConfig& cfg) {
  FemSpace space(mesh, p, cfg.al);
  return run_cdm(space, e0, cfg);
}

}  // namespace plap
