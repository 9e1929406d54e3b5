#include "plap/cmpa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace plap {

namespace {

Coeffs scale_vec(const ProblemSpace& space, Coeffs u, const char* context) {
  const double j = space.J(u);
  if (!(j > 1e-280)) throw std::runtime_error(context);
  double c = std::pow(j, -1.0 / space.p());
  for (double& x : u) x *= c;
  const double j1 = space.J(u);
  if (std::abs(j1 - 1.0) > 1e-14) {
    c = std::pow(j1, -1.0 / space.p());
    for (double& x : u) x *= c;
  }
  return u;
}

double dist_w1p(const ProblemSpace& space, const Coeffs& a, const Coeffs& b) {
  Coeffs d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return std::pow(space.I(d), 1.0 / space.p());
}

constexpr const char* kZeroPathMsg = "path passes through zero; choose different e_M";

}  // namespace

std::vector<Coeffs> build_initial_path_vec(ProblemSpace& space, const Coeffs& u1,
                                           const Coeffs& eM, int P) {
  if (P < 2) throw std::invalid_argument("initial path needs P >= 2");
  double diff_m = 0.0, diff_p = 0.0;
  for (std::size_t i = 0; i < u1.size(); ++i) {
    diff_m = std::max(diff_m, std::abs(eM[i] - u1[i]));
    diff_p = std::max(diff_p, std::abs(eM[i] + u1[i]));
  }
  if (diff_m == 0.0 || diff_p == 0.0)
    throw std::invalid_argument("e_M must differ from both u1 and -u1");

  const int k = P / 2;
  std::vector<Coeffs> path(P + 1);
  Coeffs tmp(u1.size());
  for (int j = 0; j <= P; ++j) {
    if (j == 0) {
      path[j] = u1;  // endpoints stay exactly at u1 and -u1
    } else if (j == P) {
      path[j].resize(u1.size());
      for (std::size_t i = 0; i < u1.size(); ++i) path[j][i] = -u1[i];
    } else if (j == k) {
      path[j] = scale_vec(space, eM, kZeroPathMsg);
    } else if (j < k) {
      const double t = static_cast<double>(j) / k;
      for (std::size_t i = 0; i < u1.size(); ++i)
        tmp[i] = u1[i] + t * (eM[i] - u1[i]);
      path[j] = scale_vec(space, tmp, kZeroPathMsg);
    } else {
      const double t = static_cast<double>(j - k) / (P - k);
      for (std::size_t i = 0; i < u1.size(); ++i)
        tmp[i] = eM[i] + t * (-u1[i] - eM[i]);
      path[j] = scale_vec(space, tmp, kZeroPathMsg);
    }
  }
  return path;
}

int path_maximizer_vec(const ProblemSpace& space, const std::vector<Coeffs>& path) {
  int best = 0;
  double best_val = space.I(path[0]);
  for (std::size_t j = 1; j < path.size(); ++j) {
    const double v = space.I(path[j]);
    if (v > best_val) {
      best_val = v;
      best = static_cast<int>(j);
    }
  }
  return best;
}

namespace {

// Re-spaces the points of path[lo..hi] uniformly in W^{1,p} arc length along
// the current polyline, keeping both ends fixed and rescaling every
// interpolated point to S. This may raise the recorded path maximum: when
// the moving point has slid off the discrete ridge, the ridge hides inside
// one long segment and resampling makes it visible again. Returns false
// (range untouched) for degenerate ranges.
bool redistribute_range(ProblemSpace& space, std::vector<Coeffs>& path,
                        std::vector<double>& I_vals, int lo, int hi) {
  const int n = hi - lo;
  if (n < 2) return false;
  std::vector<double> cum(n + 1, 0.0);
  for (int j = 1; j <= n; ++j)
    cum[j] = cum[j - 1] + dist_w1p(space, path[lo + j], path[lo + j - 1]);
  if (!(cum[n] > 0.0)) return false;

  std::vector<Coeffs> fresh(n - 1);
  std::vector<double> fresh_I(n - 1);
  Coeffs tmp(path[0].size());
  int seg = 0;
  for (int j = 1; j < n; ++j) {
    const double target = cum[n] * j / n;
    while (seg < n - 1 && cum[seg + 1] < target) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double th = len > 0.0 ? (target - cum[seg]) / len : 0.0;
    for (std::size_t i = 0; i < tmp.size(); ++i)
      tmp[i] = (1.0 - th) * path[lo + seg][i] + th * path[lo + seg + 1][i];
    if (!(space.J(tmp) > 1e-280)) return false;
    fresh[j - 1] = scale_vec(space, tmp, kZeroPathMsg);
    fresh_I[j - 1] = space.I(fresh[j - 1]);
  }
  for (int j = 1; j < n; ++j) {
    path[lo + j] = std::move(fresh[j - 1]);
    I_vals[lo + j] = fresh_I[j - 1];
  }
  return true;
}

bool redistribute(ProblemSpace& space, std::vector<Coeffs>& path,
                  std::vector<double>& I_vals) {
  return redistribute_range(space, path, I_vals, 0,
                            static_cast<int>(path.size()) - 1);
}

}  // namespace

EigenpairVec run_cmpa_vec(ProblemSpace& space, const Coeffs& u1, const Coeffs& eM,
                          const CmpaConfig& cfg, std::vector<CmpaTracePoint>& trace) {
  if (cfg.P < 4) throw std::invalid_argument("CmpaConfig: P must be >= 4");
  if (!(cfg.step > 0.0) || !(cfg.w_tol > 0.0) || cfg.max_iter <= 0)
    throw std::invalid_argument("CmpaConfig: step, w_tol, max_iter must be positive");

  std::vector<Coeffs> path = build_initial_path_vec(space, u1, eM, cfg.P);
  const int P = cfg.P;
  std::vector<double> I_vals(P + 1);
  for (int j = 0; j <= P; ++j) I_vals[j] = space.I(path[j]);

  auto maximizer = [&]() {
    int best = 0;
    for (int j = 1; j <= P; ++j)
      if (I_vals[j] > I_vals[best]) best = j;
    return best;
  };

  EigenpairVec out;
  out.status = SolveStatus::MaxIter;
  int m = maximizer();
  int stalls = 0;
  double last_w_norm = std::numeric_limits<double>::infinity();
  Coeffs cand(u1.size());

  // A pass point must sit strictly above the endpoint minima. If the moving
  // point slides down next to an endpoint, its descent norm vanishes there
  // too, so the floor keeps that state from being declared converged.
  const double lambda_floor = 1.01 * std::max(I_vals[0], I_vals[P]);

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    m = maximizer();
    if (m == 0 || m == P)
      throw CmpaError("path maximum sits at an endpoint; deformation failed",
                      std::move(trace));

    const DescentVec d = descent_step(space, path[m]);
    last_w_norm = d.w_norm;
    if (d.w_norm <= cfg.w_tol) {
      if (I_vals[m] > lambda_floor) {
        out.status = SolveStatus::Converged;
        break;
      }
      // Collapsed onto the valley floor: resample and keep deforming.
      if (!redistribute(space, path, I_vals))
        throw CmpaError("path collapsed onto the first eigenfunction", std::move(trace),
                        path[m], d.w_norm);
      ++out.iterations;
      trace.push_back({iter, I_vals[maximizer()]});
      continue;
    }

    // Move the highest point a short distance along w and rescale, but first
    // drop the component of w along the local path chord. At the pass the
    // downhill direction of I runs along the path, so the raw w would slide
    // the maximizer off the ridge and away from the saddle; the transverse
    // part is still a descent direction and pins the point onto the ridge.
    Coeffs wm = d.w;
    {
      // Chord from the second neighbours: the immediate ones collapse onto
      // the maximizer under bisection and stop defining a direction.
      const Coeffs& zl = path[std::max(m - 2, 0)];
      const Coeffs& zr = path[std::min(m + 2, P)];
      double tw = 0.0, tt = 0.0;
      for (std::size_t i = 0; i < wm.size(); ++i) {
        const double t = zr[i] - zl[i];
        tw += t * wm[i];
        tt += t * t;
      }
      if (tt > 0.0) {
        const double a = tw / tt;
        for (std::size_t i = 0; i < wm.size(); ++i) wm[i] -= a * (zr[i] - zl[i]);
      }
    }
    double wm_norm = std::pow(space.I(wm), 1.0 / space.p());

    bool accepted = false;
    if (wm_norm > 1e-3 * d.w_norm) {
      double st = std::min(cfg.step, wm_norm);
      while (st >= cfg.step_min) {
        const double c = st / wm_norm;
        for (std::size_t i = 0; i < cand.size(); ++i)
          cand[i] = path[m][i] + c * wm[i];
        if (space.J(cand) > 1e-280) {
          Coeffs next = scale_vec(space, cand, kZeroPathMsg);
          const double I_new = space.I(next);
          // Roundoff-level slack: for p near 1 the landscape flattens so much
          // that exact comparisons freeze the deformation entirely.
          if (I_new <= I_vals[m] * (1.0 + 5e-14)) {
            path[m] = std::move(next);
            I_vals[m] = std::min(I_new, I_vals[m]);
            accepted = true;
            break;
          }
        }
        st *= 0.5;
      }
    } else {
      accepted = true;  // already on the ridge transversally; refinement works
    }
    bool stalled_out = false;
    if (accepted) {
      stalls = 0;
    } else if (++stalls > cfg.max_stalls) {
      // Deformation can no longer lower the maximum and the refinement has
      // gone quiet: the flat-landscape floor (p near 1). Report the best
      // point instead of failing; the caller sees status Stalled.
      stalled_out = true;
    }

    // Ternary refinement around the maximizer: I restricted to the path is
    // unimodal near the pass and the neighbours bracket it, so evaluating
    // the two segment midpoints either moves the maximum onto a midpoint or
    // shrinks the bracket onto the current point. Halving the bracket is
    // what lets ||w|| at the top point reach w_tol instead of stalling at
    // the path-resolution floor.
    bool refined = false;
    {
      Coeffs ml, mr;
      double I_ml = 0.0, I_mr = 0.0;
      auto scaled_mid = [&](int a, int b, Coeffs& out, double& I_out) {
        for (std::size_t i = 0; i < cand.size(); ++i)
          cand[i] = 0.5 * (path[a][i] + path[b][i]);
        if (!(space.J(cand) > 1e-280)) return false;
        out = scale_vec(space, cand, kZeroPathMsg);
        I_out = space.I(out);
        return true;
      };
      const bool have_l = scaled_mid(m - 1, m, ml, I_ml);
      const bool have_r = scaled_mid(m, m + 1, mr, I_mr);
      // Climbs must clear roundoff, or flat landscapes glue the bracket
      // together on noise.
      const double noise = 1e-12 * std::abs(I_vals[m]);
      if (have_l && I_ml > I_vals[m] + noise && (!have_r || I_ml >= I_mr)) {
        // The pass hides in the left segment: shift the triple left.
        if (m + 1 < P) {
          path[m + 1] = std::move(path[m]);
          I_vals[m + 1] = I_vals[m];
        }
        path[m] = std::move(ml);
        I_vals[m] = I_ml;
        refined = true;
      } else if (have_r && I_mr > I_vals[m] + noise) {
        if (m - 1 > 0) {
          path[m - 1] = std::move(path[m]);
          I_vals[m - 1] = I_vals[m];
        }
        path[m] = std::move(mr);
        I_vals[m] = I_mr;
        refined = true;
      } else {
        // Maximum stays at m: both midpoints move inward as the new bracket.
        if (have_l && m - 1 > 0 && I_ml > I_vals[m - 1] + noise) {
          path[m - 1] = std::move(ml);
          I_vals[m - 1] = I_ml;
          refined = true;
        }
        if (have_r && m + 1 < P && I_mr > I_vals[m + 1] + noise) {
          path[m + 1] = std::move(mr);
          I_vals[m + 1] = I_mr;
          refined = true;
        }
      }
    }
    if (refined) {
      stalls = 0;
      stalled_out = false;
    }

    ++out.iterations;
    trace.push_back({iter, I_vals[maximizer()]});
    if (stalled_out) {
      out.status = SolveStatus::Stalled;
      m = maximizer();
      break;
    }

    // Periodic arc-length redistribution of the two flanks keeps the rest of
    // the path usable; the maximizer and its bracket stay put so the pass
    // resolution built up above survives.
    if (cfg.reparam_every > 0 && (iter + 1) % cfg.reparam_every == 0) {
      redistribute_range(space, path, I_vals, 0, m - 1);
      redistribute_range(space, path, I_vals, m + 1, P);
    }
  }

  if (out.status == SolveStatus::MaxIter)
    throw CmpaError("mountain pass did not converge within max_iter", std::move(trace),
                    path[m], last_w_norm);

  if (cfg.polish_tol > 0.0) space.set_al_tol(std::min(cfg.al.tol, cfg.polish_tol));
  const DescentVec fin = descent_step(space, path[m]);
  space.set_al_tol(cfg.al.tol);

  out.u = path[m];
  out.w_norm_final = fin.w_norm;
  out.lambda = eigenvalue_estimate(fin.nu, space.p());
  out.lambda_rayleigh = space.I(out.u) / space.J(out.u);
  out.lambda_consistent =
      std::abs(out.lambda - out.lambda_rayleigh) <= 1e-3 * std::abs(out.lambda_rayleigh);
  return out;
}

Path build_initial_path(const FeFunction& u1, const FeFunction& eM, int P, double p) {
  AlConfig al;
  FemSpace space(*u1.mesh, p, al);
  auto vecs = build_initial_path_vec(space, u1.coeffs, eM.coeffs, P);
  Path out;
  out.points.reserve(vecs.size());
  for (auto& v : vecs) out.points.emplace_back(*u1.mesh, std::move(v));
  return out;
}

int path_maximizer(const Path& path, double p) {
  int best = 0;
  double best_val = eval_I(path.points[0], p);
  for (std::size_t j = 1; j < path.points.size(); ++j) {
    const double v = eval_I(path.points[j], p);
    if (v > best_val) {
      best_val = v;
      best = static_cast<int>(j);
    }
  }
  return best;
}

CmpaResult run_cmpa(FemSpace& space, const FeFunction& u1, const FeFunction& eM,
                    const CmpaConfig& cfg) {
  CmpaResult res;
  EigenpairVec r = run_cmpa_vec(space, u1.coeffs, eM.coeffs, cfg, res.trace);
  res.eigenpair.lambda = r.lambda;
  res.eigenpair.lambda_rayleigh = r.lambda_rayleigh;
  res.eigenpair.u = FeFunction(space.mesh(), std::move(r.u));
  res.eigenpair.w_norm_final = r.w_norm_final;
  res.eigenpair.iterations = r.iterations;
  res.eigenpair.status = r.status;
  res.eigenpair.lambda_consistent = r.lambda_consistent;
  return res;
}

CmpaResult run_cmpa(const Mesh& mesh, const FeFunction& u1, const FeFunction& eM,
                    double p, const CmpaConfig& cfg) {
  FemSpace space(mesh, p, cfg.al);
  return run_cmpa(space, u1, eM, cfg);
}

}  // namespace plap
