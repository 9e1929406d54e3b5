#include "plap/radial.hpp"

#include <cmath>
#include <stdexcept>

#include "plap/powint.hpp"

namespace plap {

namespace {

inline double node_value(const Coeffs& u, int i, int n) {
  return i < n ? u[i] : 0.0;  // node n sits on the Dirichlet boundary r = 1
}

// int_{r_k}^{r_k + h} r phi dr for the decreasing / increasing hat on the
// interval.
inline double int_r_phi_left(double rk, double h) { return rk * h / 2.0 + h * h / 6.0; }
inline double int_r_phi_right(double rk, double h) { return rk * h / 2.0 + h * h / 3.0; }

}  // namespace

double radial_eval_I(const RadialMesh& mesh, const Coeffs& u, double p) {
  require_p(p);
  const int n = mesh.n;
  const double h = mesh.h();
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double du = (node_value(u, k + 1, n) - u[k]) / h;
    if (du == 0.0) continue;
    const double w = (mesh.node(k + 1) * mesh.node(k + 1) - mesh.node(k) * mesh.node(k)) / 2.0;
    acc += w * std::pow(std::abs(du), p);
  }
  return acc;
}

// J and J' integrate r g(u(r)) phi(r) exactly by substituting z = u(r), which
// turns each interval into an |z|^q kernel against a low-degree polynomial.
double radial_eval_J(const RadialMesh& mesh, const Coeffs& u, double p) {
  require_p(p);
  const int n = mesh.n;
  const double h = mesh.h();
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a = u[k], b = node_value(u, k + 1, n);
    const double rk = mesh.node(k);
    if (a == b) {
      if (a != 0.0)
        acc += std::pow(std::abs(a), p) * (rk * h + h * h / 2.0);
      continue;
    }
    const double slope = h / (b - a);               // dr/dz
    const double r_mid = rk + h / 2.0;              // r at z = (a+b)/2
    acc += slope * integrate_abs_pow(p, 0, a, b, r_mid, slope, 0.0);
  }
  return acc;
}

Coeffs radial_eval_I_prime(const RadialMesh& mesh, const Coeffs& u, double p) {
  require_p(p);
  const int n = mesh.n;
  const double h = mesh.h();
  Coeffs d(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double du = (node_value(u, k + 1, n) - u[k]) / h;
    if (du == 0.0) continue;
    const double w = (mesh.node(k + 1) * mesh.node(k + 1) - mesh.node(k) * mesh.node(k)) / 2.0;
    const double c = p * w * std::pow(std::abs(du), p - 2.0) * du / h;
    d[k] -= c;
    if (k + 1 < n) d[k + 1] += c;
  }
  return d;
}

namespace {

// Contribution of interval k to the action of phi -> int r |u|^{p-2} u phi on
// the two hats; out[0] for node k, out[1] for node k+1.
void interval_density(double a, double b, double rk, double h, double p, double out[2]) {
  out[0] = out[1] = 0.0;
  if (a == b) {
    if (a == 0.0) return;
    const double g = std::pow(std::abs(a), p - 1.0) * (a > 0 ? 1.0 : -1.0);
    out[0] = g * int_r_phi_left(rk, h);
    out[1] = g * int_r_phi_right(rk, h);
    return;
  }
  const double slope = h / (b - a);
  const double r_mid = rk + h / 2.0;
  // phi hats as polynomials in z around z_mid: value 1/2, slope -+ 1/(b-a).
  const double phi_slope[2] = {-1.0 / (b - a), 1.0 / (b - a)};
  for (int s = 0; s < 2; ++s) {
    const double w0 = r_mid * 0.5;
    const double w1 = r_mid * phi_slope[s] + slope * 0.5;
    const double w2 = slope * phi_slope[s];
    out[s] = slope * integrate_abs_pow(p - 1.0, 1, a, b, w0, w1, w2);
  }
}

}  // namespace

Coeffs radial_eval_J_prime(const RadialMesh& mesh, const Coeffs& u, double p) {
  require_p(p);
  const int n = mesh.n;
  const double h = mesh.h();
  Coeffs d(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double contrib[2];
    interval_density(u[k], node_value(u, k + 1, n), mesh.node(k), h, p, contrib);
    d[k] += p * contrib[0];
    if (k + 1 < n) d[k + 1] += p * contrib[1];
  }
  return d;
}

RadialSpace::RadialSpace(const RadialMesh& mesh, double p, const AlConfig& al)
    : mesh_(mesh), p_(p), cfg_(al) {
  require_p(p);
  if (mesh.n < 2) throw std::invalid_argument("radial mesh needs at least 2 intervals");
  if (cfg_.r <= 0.0) cfg_.r = default_r(p);
  weight_.resize(mesh.n);
  for (int k = 0; k < mesh.n; ++k)
    weight_[k] =
        (mesh.node(k + 1) * mesh.node(k + 1) - mesh.node(k) * mesh.node(k)) / 2.0;
  reset_solver();
}

void RadialSpace::reset_solver() {
  s_.assign(mesh_.n, 0.0);
  eta_.assign(mesh_.n, 0.0);
  u_.assign(mesh_.n, 0.0);
  grad_scale_ = 0.0;
}

Coeffs RadialSpace::source_density_vec(const Coeffs& u) const {
  Coeffs d = radial_eval_J_prime(mesh_, u, p_);
  for (double& x : d) x /= p_;
  return d;
}

double RadialSpace::al_iterate(const Coeffs& f) {
  const int n = mesh_.n;
  const double h = mesh_.h();
  const double r = cfg_.r;

  // Step 1: weighted tridiagonal solve r A u = f + ((r s - eta), phi').
  std::vector<double> diag(n, 0.0), lower(n, 0.0), rhs(f);
  for (int k = 0; k < n; ++k) {
    const double a = weight_[k] / (h * h);
    diag[k] += a;
    if (k + 1 < n) {
      diag[k + 1] += a;
      lower[k + 1] = -a;  // coupling between nodes k and k+1
    }
    const double q = weight_[k] * (r * s_[k] - eta_[k]) / h;
    rhs[k] -= q;
    if (k + 1 < n) rhs[k + 1] += q;
  }
  for (double& x : rhs) x /= r;
  // Thomas elimination.
  for (int k = 1; k < n; ++k) {
    const double m = lower[k] / diag[k - 1];
    diag[k] -= m * lower[k];
    rhs[k] -= m * rhs[k - 1];
  }
  u_[n - 1] = rhs[n - 1] / diag[n - 1];
  for (int k = n - 2; k >= 0; --k)
    u_[k] = (rhs[k] - lower[k + 1] * u_[k + 1]) / diag[k];

  // Steps 2 and 3 per interval.
  double res2 = 0.0, scale2 = 0.0, dual2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double du = (node_value(u_, k + 1, n) - u_[k]) / h;
    const double xi = r * du + eta_[k];
    const double R = std::abs(xi);
    const double m = R > 0.0 ? solve_flux_magnitude(p_, r, R, cfg_.newton_tol) : 0.0;
    const double s = xi >= 0.0 ? m : -m;
    s_[k] = s;
    eta_[k] += r * (du - s);
    res2 += weight_[k] * (du - s) * (du - s);
    scale2 += weight_[k] * du * du;
    dual2 += weight_[k] * eta_[k] * eta_[k];
  }
  grad_scale_ = std::sqrt(scale2);
  dual_scale_ = std::sqrt(dual2);
  return std::sqrt(res2);
}

Coeffs RadialSpace::invert(const Coeffs& f_action, std::vector<double>* history) {
  std::vector<double> local;
  std::vector<double>& hist = history ? *history : local;
  // Same contraction-aware stopping rule as the planar solver: the distance
  // to the limit is about res / (1 - rho), which matters for the near-unit
  // ratios that come with large penalties.
  double prev = -1.0, ratio = 0.5;
  for (int it = 0; it < cfg_.max_iter; ++it) {
    const double res = al_iterate(f_action);
    hist.push_back(res);
    if (prev > 0.0 && res > 0.0)
      ratio = 0.7 * ratio + 0.3 * std::min(res / prev, 0.99999);
    prev = res;
    const double margin = std::max(1.0 - ratio, 1e-4);
    // Residuals at the floating-point floor mean the iteration is stationary
    // to roundoff; nothing more can be extracted at any tolerance.
    if (res <= 1e-12 * std::max(grad_scale_, 1e-300)) return u_;
    if (res <= cfg_.tol * margin * std::max(grad_scale_, 1e-300) &&
        cfg_.r * res <= cfg_.tol * margin * std::max(dual_scale_, 1e-300))
      return u_;
  }
  throw AlError("radial augmented Lagrangian did not converge", std::move(hist));
}

Coeffs radial_e0(const RadialMesh& mesh) {
  Coeffs u(mesh.n);
  for (int i = 0; i < mesh.n; ++i) u[i] = 1.0 - mesh.node(i);
  return u;
}

Coeffs radial_em(const RadialMesh& mesh) {
  Coeffs u(mesh.n);
  for (int i = 0; i < mesh.n; ++i) {
    const double r = mesh.node(i);
    u[i] = (1.0 - 2.0 * r) * (1.0 - r);
  }
  return u;
}

EigenpairVec run_radial_cdm(const RadialMesh& mesh, double p, const CdmConfig& cfg) {
  RadialSpace space(mesh, p, cfg.al);
  return run_cdm_vec(space, radial_e0(mesh), cfg);
}

RadialCmpaResult run_radial_cmpa(const RadialMesh& mesh, double p,
                                 const CdmConfig& cdm_cfg, const CmpaConfig& cmpa_cfg) {
  RadialCmpaResult out;
  {
    RadialSpace space(mesh, p, cdm_cfg.al);
    out.first = run_cdm_vec(space, radial_e0(mesh), cdm_cfg);
  }
  RadialSpace space(mesh, p, cmpa_cfg.al);
  out.second = run_cmpa_vec(space, out.first.u, radial_em(mesh), cmpa_cfg, out.trace);
  return out;
}

}  // namespace plap
