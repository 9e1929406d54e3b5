// Constrained Descent Method: forward Euler on du/dt = w_u projected back to
// S by scaling, with step halving whenever I increases. Converges to the
// first eigenpair from a one-signed start.
#pragma once

#include "plap/descent.hpp"

namespace plap {

struct CdmConfig {
  double dt0 = 0.5;
  double dt_min = 1e-6;
  double w_tol = 1e-6;
  int max_iter = 200;
  AlConfig al;
  // Tolerance used for the one extra descent solve that pins down nu (and so
  // lambda) at the final iterate; <= 0 keeps al.tol.
  double polish_tol = 1e-9;
};

enum class SolveStatus { Converged, Stalled, MaxIter };

struct IterRecord {
  double I;
  double w_norm;
  double dt;
};

// Result over plain coefficient vectors (shared by the planar and radial
// backends).
struct EigenpairVec {
  double lambda = 0.0;
  double lambda_rayleigh = 0.0;
  Coeffs u;
  double w_norm_final = 0.0;
  int iterations = 0;
  std::vector<IterRecord> history;
  SolveStatus status = SolveStatus::MaxIter;
  bool lambda_consistent = false;  // estimate vs Rayleigh quotient within 0.1%
};

EigenpairVec run_cdm_vec(ProblemSpace& space, const Coeffs& e0, const CdmConfig& cfg);

struct EigenpairResult {
  double lambda = 0.0;
  double lambda_rayleigh = 0.0;
  FeFunction u;
  double w_norm_final = 0.0;
  int iterations = 0;
  std::vector<IterRecord> history;
  SolveStatus status = SolveStatus::MaxIter;
  bool lambda_consistent = false;
};

EigenpairResult run_cdm(FemSpace& space, const FeFunction& e0, const CdmConfig& cfg);
EigenpairResult run_cdm(const Mesh& mesh, const FeFunction& e0, double p, const CdmConfig& cfg);

}  // namespace plap
