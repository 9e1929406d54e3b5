// Radially symmetric problem on the unit disk reduced to (0, 1):
//   -(r |u'|^{p-2} u')' = lambda r |u|^{p-2} u,  u'(0) = 0,  u(1) = 0.
// Piecewise-linear elements on a uniform grid with the weight r in every
// integral; the natural condition at r = 0 keeps node 0 free. CDM and CMPA
// run unchanged through the ProblemSpace interface.
#pragma once

#include "plap/cmpa.hpp"

namespace plap {

struct RadialMesh {
  int n = 1000;  // subintervals of (0, 1); free nodes 0 .. n-1
  double h() const { return 1.0 / n; }
  double node(int i) const { return static_cast<double>(i) / n; }
};

double radial_eval_I(const RadialMesh& mesh, const Coeffs& u, double p);
double radial_eval_J(const RadialMesh& mesh, const Coeffs& u, double p);
Coeffs radial_eval_I_prime(const RadialMesh& mesh, const Coeffs& u, double p);
Coeffs radial_eval_J_prime(const RadialMesh& mesh, const Coeffs& u, double p);

class RadialSpace : public ProblemSpace {
 public:
  RadialSpace(const RadialMesh& mesh, double p, const AlConfig& al);

  double p() const override { return p_; }
  std::size_t size() const override { return static_cast<std::size_t>(mesh_.n); }
  double I(const Coeffs& u) const override { return radial_eval_I(mesh_, u, p_); }
  double J(const Coeffs& u) const override { return radial_eval_J(mesh_, u, p_); }
  Coeffs source_density_vec(const Coeffs& u) const override;
  Coeffs invert(const Coeffs& f_action, std::vector<double>* history) override;
  void reset_solver() override;
  void set_al_tol(double tol) override { cfg_.tol = tol; }

  const RadialMesh& mesh() const { return mesh_; }

 private:
  double al_iterate(const Coeffs& f);

  RadialMesh mesh_;
  double p_;
  AlConfig cfg_;
  std::vector<double> weight_;          // int_{r_k}^{r_{k+1}} r dr
  std::vector<double> s_, eta_;         // per-interval flux state
  Coeffs u_;
  double grad_scale_ = 0.0;
  double dual_scale_ = 0.0;
};

// Positive starting profile 1 - r and a sign-changing intermediate profile
// used to seed CDM and the CMPA path.
Coeffs radial_e0(const RadialMesh& mesh);
Coeffs radial_em(const RadialMesh& mesh);

EigenpairVec run_radial_cdm(const RadialMesh& mesh, double p, const CdmConfig& cfg);

struct RadialCmpaResult {
  EigenpairVec first;
  EigenpairVec second;
  std::vector<CmpaTracePoint> trace;
};
RadialCmpaResult run_radial_cmpa(const RadialMesh& mesh, double p, const CdmConfig& cdm_cfg,
                                 const CmpaConfig& cmpa_cfg);

}  // namespace plap
