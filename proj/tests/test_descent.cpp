#include <doctest.h>

#include <cmath>

#include "plap/descent.hpp"
#include "plap/linsolve.hpp"
#include "support.hpp"

using namespace plap;

namespace {

FeFunction random_on_S(const Mesh& m, double p) {
  FeFunction u(m);
  for (double& c : u.coeffs) c = plap_test::uniform(-1.0, 1.0);
  return scale_to_S(u, p);
}

double dual_norm2(const DualVector& d) {
  double s = 0.0;
  for (double a : d.action) s += a * a;
  return std::sqrt(s);
}

double coeff_norm2(const FeFunction& f) {
  double s = 0.0;
  for (double c : f.coeffs) s += c * c;
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE("descent") {
  TEST_CASE("eigenvalue estimate arithmetic") {
    CHECK(eigenvalue_estimate(0.25, 3.0) == doctest::Approx(16.0).epsilon(1e-14));
    CHECK_THROWS(eigenvalue_estimate(0.0, 2.0));
    CHECK_THROWS(eigenvalue_estimate(-1.0, 2.0));
  }

  TEST_CASE("tangency and descent for random points on S") {
    Mesh m = build_domain(DomainSpec::rectangle(2.0, 2.0), 512);
    AlConfig al;
    al.tol = 1e-9;
    for (double p : {1.3, 2.0, 4.0}) {
      FemSpace space(m, p, al);
      for (int trial = 0; trial < 5; ++trial) {
        FeFunction u = random_on_S(m, p);
        DescentResult d = descent_direction(space, u);
        CHECK(d.nu > 0.0);
        // nu = ||v||^p up to the inner-solve tolerance.
        CHECK(d.nu == doctest::Approx(eval_I(d.v, p)).epsilon(1e-5));
        // Tangency: <J'(u), w> vanishes against the product of norms.
        const DualVector jp = eval_J_prime(u, p);
        const double tangency = std::abs(pair(jp, d.w)) / (dual_norm2(jp) * coeff_norm2(d.w));
        CHECK(tangency < 1e-8);
        // Descent: <I'(u), w> <= 0.
        CHECK(pair(eval_I_prime(u, p), d.w) <= 0.0);
      }
    }
  }

  TEST_CASE("p = 2 direction matches the Hilbert-space projection") {
    Mesh m = build_domain(DomainSpec::rectangle(2.0, 2.0), 512);
    StiffnessOperator K(m);
    FeFunction u = random_on_S(m, 2.0);
    AlConfig al;
    al.tol = 1e-11;
    DescentResult d = descent_direction(u, 2.0, al);

    // Orthogonal projection route: gradient of I at u is 2u (Riesz in the
    // grad-grad inner product); remove its component along the Riesz lift of
    // J'(u) and flip the sign.
    DualVector jp = eval_J_prime(u, 2.0);
    FeFunction jlift = solve_spd(K, jp, 1e-12);
    double num = pair(jp, u), den = pair(jp, jlift);
    FeFunction w_ref(m);
    for (int i = 0; i < m.n_free(); ++i)
      w_ref.coeffs[i] = -2.0 * u.coeffs[i] + 2.0 * (num / den) * jlift.coeffs[i];

    // Directions agree after normalization.
    const double nw = norm_w1p(d.w, 2.0), nref = norm_w1p(w_ref, 2.0);
    FeFunction diff(m);
    for (int i = 0; i < m.n_free(); ++i)
      diff.coeffs[i] = d.w.coeffs[i] / nw - w_ref.coeffs[i] / nref;
    CHECK(norm_w1p(diff, 2.0) < 1e-6);
  }

  TEST_CASE("descent step requires a point on S") {
    Mesh m = build_domain(DomainSpec::rectangle(1.0, 1.0), 64);
    AlConfig al;
    FemSpace space(m, 2.0, al);
    FeFunction u(m);
    for (double& c : u.coeffs) c = 1.0;  // J(u) far from 1
    CHECK_THROWS(descent_direction(space, u));
  }
}
