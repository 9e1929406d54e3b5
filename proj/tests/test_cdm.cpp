#include <doctest.h>

#include <cmath>

#include "plap/cdm.hpp"
#include "plap/fields.hpp"

using namespace plap;

TEST_SUITE("cdm") {
  TEST_CASE("square at p = 2 reaches the Laplace ground state") {
    Mesh m = build_domain(DomainSpec::rectangle(2.0, 2.0), 2'048);
    CdmConfig cfg;
    cfg.dt0 = 1.0;
    cfg.al.tol = 1e-9;
    EigenpairResult r = run_cdm(m, bump_e0(m), 2.0, cfg);
    CHECK(r.status == SolveStatus::Converged);
    const double pi = 3.14159265358979323846;
    CHECK(r.lambda == doctest::Approx(pi * pi / 2.0).epsilon(0.01));
    CHECK(r.lambda_consistent);
    CHECK(eval_J(r.u, 2.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(r.lambda - r.lambda_rayleigh) <= 1e-3 * r.lambda_rayleigh);

    // I decreases across accepted steps (up to roundoff slack).
    for (std::size_t k = 1; k < r.history.size(); ++k)
      CHECK(r.history[k].I <= r.history[k - 1].I * (1.0 + 1e-13));

    // Positivity: started from a positive bump, the ground state keeps one
    // sign.
    double max_abs = 0.0;
    for (double c : r.u.coeffs) max_abs = std::max(max_abs, std::abs(c));
    double lo = 1e300, hi = -1e300;
    for (double c : r.u.coeffs) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    CHECK((lo >= -1e-8 * max_abs || hi <= 1e-8 * max_abs));
  }

  TEST_CASE("coarse disk at p = 2") {
    Mesh m = build_domain(DomainSpec::disk(1.0), 2'400);
    CdmConfig cfg;
    cfg.dt0 = 1.0;
    EigenpairResult r = run_cdm(m, bump_e0(m), 2.0, cfg);
    CHECK(r.status == SolveStatus::Converged);
    CHECK(r.lambda == doctest::Approx(5.78319).epsilon(0.01));
    CHECK(r.iterations < 80);
  }

  TEST_CASE("smoke run away from p = 2") {
    Mesh m = build_domain(DomainSpec::rectangle(2.0, 2.0), 800);
    CdmConfig cfg;
    cfg.dt0 = 1.0;
    cfg.w_tol = 1e-5;
    EigenpairResult r = run_cdm(m, bump_e0(m), 3.0, cfg);
    CHECK(r.status == SolveStatus::Converged);
    // Coarse-mesh value sits above the converged 7.8452 from the tables.
    CHECK(r.lambda == doctest::Approx(7.85).epsilon(0.05));
    CHECK(r.lambda_consistent);
  }

  TEST_CASE("stall reporting keeps the best iterate") {
    Mesh m = build_domain(DomainSpec::rectangle(1.0, 1.0), 128);
    CdmConfig cfg;
    cfg.dt0 = 1e-5;
    cfg.dt_min = 9e-6;  // nearly no room to halve
    cfg.w_tol = 1e-14;  // unreachable
    cfg.max_iter = 500;
    EigenpairResult r = run_cdm(m, bump_e0(m), 2.0, cfg);
    CHECK((r.status == SolveStatus::Stalled || r.status == SolveStatus::MaxIter));
    CHECK(eval_J(r.u, 2.0) == doctest::Approx(1.0).epsilon(1e-8));
  }

  TEST_CASE("config validation") {
    Mesh m = build_domain(DomainSpec::rectangle(1.0, 1.0), 64);
    CdmConfig cfg;
    cfg.dt_min = 1.0;  // >= dt0
    CHECK_THROWS(run_cdm(m, bump_e0(m), 2.0, cfg));
  }
}
