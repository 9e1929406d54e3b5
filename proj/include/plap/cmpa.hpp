// Constrained Mountain Pass Algorithm: deform a discretized path on S joining
// u1 and -u1 by repeatedly moving its highest point a short distance along
// the descent direction and rescaling to S. The deformation stalls exactly at
// a mountain pass point, which carries the second eigenpair.
#pragma once

#include "plap/cdm.hpp"

namespace plap {

struct CmpaConfig {
  int P = 21;                // path segments (P + 1 points)
  double step = 0.1;         // deformation distance in the W^{1,p} norm
  double step_min = 1e-9;    // halving floor per deformation
  double w_tol = 1e-3;
  int max_iter = 5000;
  int reparam_every = 10;    // arc-length redistribution period; 0 disables
  int max_stalls = 50;       // consecutive no-move iterations tolerated
  AlConfig al;
  double polish_tol = 1e-9;
};

struct CmpaTracePoint {
  int iter;
  double max_I;
};

struct Path {
  std::vector<FeFunction> points;  // points[0] = u1, points[P] = -u1
};

struct CmpaError : std::runtime_error {
  CmpaError(const std::string& msg, std::vector<CmpaTracePoint> tr, Coeffs best = {},
            double best_w = 0.0)
      : std::runtime_error(msg),
        trace(std::move(tr)),
        best_u(std::move(best)),
        best_w_norm(best_w) {}
  std::vector<CmpaTracePoint> trace;
  Coeffs best_u;  // highest path point at failure
  double best_w_norm;
};

// Generic core over coefficient vectors.
std::vector<Coeffs> build_initial_path_vec(ProblemSpace& space, const Coeffs& u1,
                                           const Coeffs& eM, int P);
int path_maximizer_vec(const ProblemSpace& space, const std::vector<Coeffs>& path);
EigenpairVec run_cmpa_vec(ProblemSpace& space, const Coeffs& u1, const Coeffs& eM,
                          const CmpaConfig& cfg, std::vector<CmpaTracePoint>& trace);

// FE-typed wrappers.
Path build_initial_path(const FeFunction& u1, const FeFunction& eM, int P, double p);
int path_maximizer(const Path& path, double p);

struct CmpaResult {
  EigenpairResult eigenpair;
  std::vector<CmpaTracePoint> trace;
};
CmpaResult run_cmpa(FemSpace& space, const FeFunction& u1, const FeFunction& eM,
                    const CmpaConfig& cfg);
CmpaResult run_cmpa(const Mesh& mesh, const FeFunction& u1, const FeFunction& eM,
                    double p, const CmpaConfig& cfg);

}  // namespace plap
