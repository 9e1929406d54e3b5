// The Dirichlet functional I(u) = int |grad u|^p, the constraint functional
// J(u) = int |u|^p, their Frechet derivatives, and helpers around the
// constraint set S = { J(u) = 1 }. Everything is evaluated triangle by
// triangle in closed form; J and J' route through cancellation-safe kernels.
#pragma once

#include "plap/fe.hpp"

namespace plap {

void require_p(double p);  // throws unless p in (1, inf)

double eval_I(const FeFunction& u, double p);
double eval_J(const FeFunction& u, double p);

// <I'(u), phi_i> = p int |grad u|^{p-2} grad u . grad phi_i
DualVector eval_I_prime(const FeFunction& u, double p);

// <J'(u), phi_i> = p int |u|^{p-2} u phi_i
DualVector eval_J_prime(const FeFunction& u, double p);

// Action of phi -> int |u|^{p-2} u phi, i.e. J'(u)/p; right-hand side of the
// inverse p-Laplacian in the descent direction and the eigenvalue residual.
DualVector source_density(const FeFunction& u, double p);

// Returns c u with c = J(u)^{-1/p}, so that J(result) = 1. One multiplicative
// correction pass keeps the constraint at machine precision.
FeFunction scale_to_S(const FeFunction& u, double p);

double norm_w1p(const FeFunction& v, double p);  // I(v)^{1/p}
double rayleigh(const FeFunction& u, double p);  // I(u)/J(u)

// Per-triangle integrals used by eval_J / eval_J_prime, exposed for tests:
// vertex values v[3] of a linear function on a triangle of given area.
double triangle_int_abs_pow(const double v[3], double area, double p);
// out[k] = int_T |u|^{p-2} u lambda_k dx for the barycentric coordinate of
// vertex k.
void triangle_int_density(const double v[3], double area, double p, double out[3]);

}  // namespace plap
