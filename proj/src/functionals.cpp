#include "plap/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plap/powint.hpp"

namespace plap {

void require_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("p must lie in (1, infinity)");
}

namespace {

// Gradient of u on triangle t.
inline Vec2 tri_grad(const FeFunction& u, const Mesh& m, std::size_t t) {
  const auto& tri = m.triangles[t];
  const auto& g = m.tri_geom[t];
  Vec2 grad{0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    const double c = u.value_at_vertex(tri[k]);
    if (c != 0.0) grad = grad + c * g.grad[k];
  }
  return grad;
}

}  // namespace

double eval_I(const FeFunction& u, double p) {
  require_p(p);
  const Mesh& m = *u.mesh;
  double acc = 0.0;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const Vec2 g = tri_grad(u, m, t);
    const double gg = dot(g, g);
    if (gg > 0.0) acc += m.tri_geom[t].area * std::pow(gg, 0.5 * p);
  }
  return acc;
}

// int_T |u|^p dx for linear u via the level-set density of u: the pushforward
// of the area measure under u has a piecewise-linear "tent" density on
// [v1, v3] with peak 2|T|/(v3 - v1) at v2. Each slab is integrated by the
// stable |t|^q kernel. Algebraically this equals the divided-difference
// closed form of |t|^{p+2} but stays accurate for clustered vertex values.
double triangle_int_abs_pow(const double v[3], double area, double p) {
  double s[3] = {v[0], v[1], v[2]};
  std::sort(s, s + 3);
  const double v1 = s[0], v2 = s[1], v3 = s[2];
  if (v3 == v1) return area * std::pow(std::abs(v1), p);
  double acc = 0.0;
  if (v2 > v1) {
    const double d1 = (v2 - v1) * (v3 - v1);
    const double hw = 0.5 * (v2 - v1);
    acc += integrate_abs_pow(p, 0, v1, v2, 2.0 * area * hw / d1, 2.0 * area / d1, 0.0);
  }
  if (v3 > v2) {
    const double d2 = (v3 - v2) * (v3 - v1);
    const double hw = 0.5 * (v3 - v2);
    acc += integrate_abs_pow(p, 0, v2, v3, 2.0 * area * hw / d2, -2.0 * area / d2, 0.0);
  }
  return acc;
}

// int_T |u|^{p-2} u lambda_k dx. On each slab the mean of lambda_k over the
// level segment {u = t} is linear in t, so the integrand against the tent
// density is |t|^{p-2} t times a quadratic.
void triangle_int_density(const double v[3], double area, double p, double out[3]) {
  int perm[3] = {0, 1, 2};
  std::sort(perm, perm + 3, [&](int a, int b) { return v[a] < v[b]; });
  const double u1 = v[perm[0]], u2 = v[perm[1]], u3 = v[perm[2]];
  out[0] = out[1] = out[2] = 0.0;

  if (u3 == u1) {
    const double g = u1 == 0.0 ? 0.0 : std::pow(std::abs(u1), p - 1.0) * (u1 > 0 ? 1.0 : -1.0);
    out[0] = out[1] = out[2] = g * area / 3.0;
    return;
  }

  const double q = p - 1.0;
  const double inv31 = 1.0 / (u3 - u1);

  if (u2 > u1) {
    // Level segment cuts edges (1,2) and (1,3); mean barycentric coordinates:
    // lam1 = 1 - (th + th')/2, lam2 = th/2, lam3 = th'/2 with
    // th = (t-u1)/(u2-u1), th' = (t-u1)/(u3-u1).
    const double inv21 = 1.0 / (u2 - u1);
    const double hw = 0.5 * (u2 - u1);
    const double rho0 = 2.0 * area * hw * inv21 * inv31;
    const double rho1 = 2.0 * area * inv21 * inv31;
    const double thp_m = hw * inv31;
    const double lam_val[3] = {1.0 - 0.5 * (0.5 + thp_m), 0.25, 0.5 * thp_m};
    const double lam_slope[3] = {-0.5 * (inv21 + inv31), 0.5 * inv21, 0.5 * inv31};
    for (int k = 0; k < 3; ++k) {
      const double w0 = rho0 * lam_val[k];
      const double w1 = rho0 * lam_slope[k] + rho1 * lam_val[k];
      const double w2 = rho1 * lam_slope[k];
      out[perm[k]] += integrate_abs_pow(q, 1, u1, u2, w0, w1, w2);
    }
  }
  if (u3 > u2) {
    // Cuts edges (1,3) and (2,3): lam1 = (1-th')/2, lam2 = (1-sg)/2,
    // lam3 = (th'+sg)/2 with sg = (t-u2)/(u3-u2).
    const double inv32 = 1.0 / (u3 - u2);
    const double hw = 0.5 * (u3 - u2);
    const double rho0 = 2.0 * area * hw * inv32 * inv31;
    const double rho1 = -2.0 * area * inv32 * inv31;
    const double thp_m = ((u2 - u1) + hw) * inv31;
    const double lam_val[3] = {0.5 * (1.0 - thp_m), 0.25, 0.5 * (thp_m + 0.5)};
    const double lam_slope[3] = {-0.5 * inv31, -0.5 * inv32, 0.5 * (inv31 + inv32)};
    for (int k = 0; k < 3; ++k) {
      const double w0 = rho0 * lam_val[k];
      const double w1 = rho0 * lam_slope[k] + rho1 * lam_val[k];
      const double w2 = rho1 * lam_slope[k];
      out[perm[k]] += integrate_abs_pow(q, 1, u2, u3, w0, w1, w2);
    }
  }
}

double eval_J(const FeFunction& u, double p) {
  require_p(p);
  const Mesh& m = *u.mesh;
  double acc = 0.0;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    const double v[3] = {u.value_at_vertex(tri[0]), u.value_at_vertex(tri[1]),
                         u.value_at_vertex(tri[2])};
    if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0) continue;
    acc += triangle_int_abs_pow(v, m.tri_geom[t].area, p);
  }
  return acc;
}

DualVector eval_I_prime(const FeFunction& u, double p) {
  require_p(p);
  const Mesh& m = *u.mesh;
  DualVector d(m);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const Vec2 g = tri_grad(u, m, t);
    const double gg = dot(g, g);
    if (gg == 0.0) continue;  // limit value 0, also avoids |g|^{p-2} blowup for p < 2
    const double c = p * m.tri_geom[t].area * std::pow(gg, 0.5 * (p - 2.0));
    const auto& tri = m.triangles[t];
    const auto& geom = m.tri_geom[t];
    for (int k = 0; k < 3; ++k) {
      const int dof = m.free_index[tri[k]];
      if (dof >= 0) d.action[dof] += c * dot(g, geom.grad[k]);
    }
  }
  return d;
}

DualVector source_density(const FeFunction& u, double p) {
  require_p(p);
  const Mesh& m = *u.mesh;
  DualVector d(m);
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    const double v[3] = {u.value_at_vertex(tri[0]), u.value_at_vertex(tri[1]),
                         u.value_at_vertex(tri[2])};
    if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0) continue;
    double contrib[3];
    triangle_int_density(v, m.tri_geom[t].area, p, contrib);
    for (int k = 0; k < 3; ++k) {
      const int dof = m.free_index[tri[k]];
      if (dof >= 0) d.action[dof] += contrib[k];
    }
  }
  return d;
}

DualVector eval_J_prime(const FeFunction& u, double p) {
  DualVector d = source_density(u, p);
  for (double& a : d.action) a *= p;
  return d;
}

FeFunction scale_to_S(const FeFunction& u, double p) {
  require_p(p);
  const double j = eval_J(u, p);
  if (!(j > 1e-280))
    throw std::runtime_error("cannot scale zero function to S");
  FeFunction out = u;
  double c = std::pow(j, -1.0 / p);
  for (double& x : out.coeffs) x *= c;
  // One correction pass; J(cu) = c^p J(u) holds only up to pow() rounding.
  const double j1 = eval_J(out, p);
  if (std::abs(j1 - 1.0) > 1e-14) {
    c = std::pow(j1, -1.0 / p);
    for (double& x : out.coeffs) x *= c;
  }
  return out;
}

double norm_w1p(const FeFunction& v, double p) {
  return std::pow(eval_I(v, p), 1.0 / p);
}

double rayleigh(const FeFunction& u, double p) {
  const double j = eval_J(u, p);
  if (!(j > 0.0)) throw std::runtime_error("rayleigh quotient of the zero function");
  return eval_I(u, p) / j;
}

}  // namespace plap
