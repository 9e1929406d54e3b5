// Shared test utilities: quadrature oracles over triangles (independent of
// the library's closed-form integration path) and small helpers for random
// fields.
//
// The main oracle integrates |u|^q sgn(u)^s w(x) for a linear u. It first
// splits the triangle exactly along the zero line of u, then treats each
// single-signed piece with geometric layers toward the zero set (where the
// integrand loses smoothness) and an adaptive degree-5 rule inside each
// layer.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "plap/geometry.hpp"

namespace plap_test {

using plap::Vec2;

// Linear interpolant with nodal values v[] on triangle (a, b, c).
struct LinearField {
  Vec2 a, b, c;
  double v[3];
  double operator()(Vec2 p) const {
    const double det = plap::cross(b - a, c - a);
    const double lb = plap::cross(p - a, c - a) / det;
    const double lc = plap::cross(b - a, p - a) / det;
    return v[0] * (1.0 - lb - lc) + v[1] * lb + v[2] * lc;
  }
};

// High-order rule on a triangle: 8x8 Gauss-Legendre through the Duffy map
// x = a + xi (b-a) + eta (1-xi) (c-a); smooth integrands converge almost
// immediately under bisection.
template <class F>
double duffy_rule(const F& f, Vec2 a, Vec2 b, Vec2 c) {
  static const double gx[8] = {
      0.01985507175123188, 0.10166676129318664, 0.2372337950418355,
      0.40828267875217505, 0.5917173212478249,  0.7627662049581645,
      0.8983332387068134,  0.9801449282487681};
  static const double gw[8] = {
      0.05061426814518813, 0.11119051722668724, 0.15685332293894364,
      0.18134189168918099, 0.18134189168918099, 0.15685332293894364,
      0.11119051722668724, 0.05061426814518813};
  const double jac = 2.0 * std::abs(plap::signed_area(a, b, c));
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double xi = gx[i];
    for (int j = 0; j < 8; ++j) {
      const double eta = gx[j] * (1.0 - xi);
      const Vec2 p{a.x + xi * (b.x - a.x) + eta * (c.x - a.x),
                   a.y + xi * (b.y - a.y) + eta * (c.y - a.y)};
      acc += gw[i] * gw[j] * (1.0 - xi) * f(p);
    }
  }
  return acc * jac;
}

template <class F>
double adaptive_rec(const F& f, Vec2 a, Vec2 b, Vec2 c, double tol, int depth) {
  const Vec2 ab = 0.5 * (a + b), bc = 0.5 * (b + c), ac = 0.5 * (a + c);
  const double coarse = duffy_rule(f, a, b, c);
  const double q0 = duffy_rule(f, a, ab, ac), q1 = duffy_rule(f, ab, b, bc),
               q2 = duffy_rule(f, ac, bc, c), q3 = duffy_rule(f, ab, bc, ac);
  const double fine = q0 + q1 + q2 + q3;
  if (depth >= 18 || std::abs(fine - coarse) <= tol) return fine;
  return adaptive_rec(f, a, ab, ac, tol / 4, depth + 1) +
         adaptive_rec(f, ab, b, bc, tol / 4, depth + 1) +
         adaptive_rec(f, ac, bc, c, tol / 4, depth + 1) +
         adaptive_rec(f, ab, bc, ac, tol / 4, depth + 1);
}

template <class F>
double integrate_triangle(const F& f, Vec2 a, Vec2 b, Vec2 c, double abs_tol) {
  return adaptive_rec(f, a, b, c, abs_tol, 0);
}

namespace detail {

// Integrates a smooth-away-from-the-zero-set piece. zeros lists the piece
// vertices at which u vanishes (0, 1 or 2 of them); the integrand is smooth
// elsewhere, so geometric layers retreating from the zero set make every
// sub-cell regular.
template <class F>
double piece_with_layers(const F& f, const Vec2 pts[3], const bool is_zero[3], double tol) {
  int zero_count = 0;
  for (int k = 0; k < 3; ++k) zero_count += is_zero[k] ? 1 : 0;
  if (zero_count == 0) return adaptive_rec(f, pts[0], pts[1], pts[2], tol, 0);
  if (zero_count == 3) return 0.0;

  // Arrange as: zero set Z0 (and Z1), far set F0 (and F1).
  Vec2 z0, z1, f0, f1;
  if (zero_count == 2) {
    Vec2 zz[2], ff[1];
    int nz = 0, nf = 0;
    for (int k = 0; k < 3; ++k) (is_zero[k] ? zz[nz++] : ff[nf++]) = pts[k];
    z0 = zz[0];
    z1 = zz[1];
    f0 = f1 = ff[0];
  } else {
    Vec2 zz[1], ff[2];
    int nz = 0, nf = 0;
    for (int k = 0; k < 3; ++k) (is_zero[k] ? zz[nz++] : ff[nf++]) = pts[k];
    z0 = z1 = zz[0];
    f0 = ff[0];
    f1 = ff[1];
  }
  // Points at parameter s in (0, 1]: s = 0 on the zero set, s = 1 far.
  auto p0 = [&](double s) { return z0 + s * (f0 - z0); };
  auto p1 = [&](double s) { return z1 + s * (f1 - z1); };

  double acc = 0.0;
  double hi = 1.0;
  for (int layer = 0; layer < 60; ++layer) {
    const double lo = hi / 2.0;
    const Vec2 a0 = p0(lo), a1 = p1(lo), b0 = p0(hi), b1 = p1(hi);
    const double layer_tol = tol * 0.5 / ((layer + 1) * (layer + 1));
    // The layer is a quad (degenerating to a triangle at the apex).
    acc += adaptive_rec(f, a0, a1, b1, layer_tol, 0);
    if (plap::norm(b1 - b0) > 0.0)
      acc += adaptive_rec(f, a0, b1, b0, layer_tol, 0);
    hi = lo;
  }
  return acc;
}

}  // namespace detail

// Oracle for int_T |u|^q sgn(u)^s w(x) dx with u linear (nodal values v[]).
template <class W>
double oracle_abs_pow_triangle(Vec2 A, Vec2 B, Vec2 C, const double v[3], double q,
                               int s, const W& weight, double abs_tol) {
  const Vec2 P[3] = {A, B, C};
  struct Piece {
    Vec2 pts[3];
    bool zero[3];
    double sign;
  };
  std::vector<Piece> pieces;

  bool has_pos = false, has_neg = false;
  for (int k = 0; k < 3; ++k) {
    if (v[k] > 0.0) has_pos = true;
    if (v[k] < 0.0) has_neg = true;
  }

  if (!has_pos && !has_neg) return 0.0;
  if (!has_pos || !has_neg) {
    Piece pc;
    for (int k = 0; k < 3; ++k) {
      pc.pts[k] = P[k];
      pc.zero[k] = v[k] == 0.0;
    }
    pc.sign = has_pos ? 1.0 : -1.0;
    pieces.push_back(pc);
  } else {
    int zero_idx = -1;
    for (int k = 0; k < 3; ++k)
      if (v[k] == 0.0) zero_idx = k;
    if (zero_idx >= 0) {
      const int i = (zero_idx + 1) % 3, j = (zero_idx + 2) % 3;
      const double t = v[i] / (v[i] - v[j]);
      const Vec2 czero = P[i] + t * (P[j] - P[i]);
      pieces.push_back({{P[zero_idx], P[i], czero},
                        {true, false, true},
                        v[i] > 0 ? 1.0 : -1.0});
      pieces.push_back({{P[zero_idx], czero, P[j]},
                        {true, true, false},
                        v[j] > 0 ? 1.0 : -1.0});
    } else {
      // One vertex against the other two.
      int lone = -1;
      for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        if ((v[k] > 0) != (v[i] > 0) && (v[k] > 0) != (v[j] > 0)) lone = k;
      }
      const int i = (lone + 1) % 3, j = (lone + 2) % 3;
      const double ti = v[lone] / (v[lone] - v[i]);
      const double tj = v[lone] / (v[lone] - v[j]);
      const Vec2 ci = P[lone] + ti * (P[i] - P[lone]);
      const Vec2 cj = P[lone] + tj * (P[j] - P[lone]);
      const double slone = v[lone] > 0 ? 1.0 : -1.0;
      pieces.push_back({{P[lone], ci, cj}, {false, true, true}, slone});
      pieces.push_back({{ci, P[i], P[j]}, {true, false, false}, -slone});
      pieces.push_back({{ci, P[j], cj}, {true, false, true}, -slone});
    }
  }

  LinearField u_eval{A, B, C, {v[0], v[1], v[2]}};
  double acc = 0.0;
  for (const auto& pc : pieces) {
    auto f = [&](Vec2 x) {
      const double t = u_eval(x);
      return std::pow(std::abs(t), q) * weight(x);
    };
    const double sgn_factor = (s % 2 != 0) ? pc.sign : 1.0;
    acc += sgn_factor * detail::piece_with_layers(f, pc.pts, pc.zero,
                                                  abs_tol / pieces.size());
  }
  return acc;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240615u);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace plap_test
