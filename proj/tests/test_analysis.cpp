#include <doctest.h>

#include <cmath>

#include "plap/analysis.hpp"
#include "plap/fields.hpp"

using namespace plap;

TEST_SUITE("analysis") {
  TEST_CASE("defect vanishes for exactly symmetric fields") {
    DomainSpec spec = DomainSpec::rectangle(2.0, 2.0);
    Mesh m = build_domain(spec, 512);
    FeFunction u(m);
    for (int d = 0; d < m.n_free(); ++d) {
      const Vec2 x = m.vertices[m.free_vertices[d]];
      // Odd about x1 = 1, even about x2 = 1.
      u.coeffs[d] = (x.x - 1.0) * (1.0 + std::cos(x.y - 1.0));
    }
    SymmetryClass s1 = make_symmetry_class(spec, SymmetryKind::S1);
    CHECK(symmetry_defect(u, s1) < 1e-13);
    // The same field badly violates the diagonal symmetry.
    SymmetryClass s2 = make_symmetry_class(spec, SymmetryKind::S2);
    CHECK(symmetry_defect(u, s2) > 0.5);
    // CenterOdd contains S1.
    SymmetryClass co = make_symmetry_class(spec, SymmetryKind::CenterOdd);
    CHECK(symmetry_defect(u, co) < 1e-13);
  }

  TEST_CASE("triangle parity classes") {
    DomainSpec spec = DomainSpec::iso_triangle(1.0, 1.0);
    Mesh m = build_domain(spec, 800);
    FeFunction odd(m), even(m);
    for (int d = 0; d < m.n_free(); ++d) {
      const Vec2 x = m.vertices[m.free_vertices[d]];
      odd.coeffs[d] = x.y * (1.0 + x.x);
      even.coeffs[d] = 1.0 + x.y * x.y;
    }
    SymmetryClass so = make_symmetry_class(spec, SymmetryKind::SO);
    SymmetryClass se = make_symmetry_class(spec, SymmetryKind::SE);
    CHECK(symmetry_defect(odd, so) < 1e-13);
    CHECK(symmetry_defect(even, se) < 1e-13);
    CHECK(symmetry_defect(odd, se) > 1.0);
  }

  TEST_CASE("mesh without the symmetry is rejected") {
    DomainSpec rect = DomainSpec::rectangle(2.0, 1.75);
    Mesh m = build_domain(rect, 256);
    FeFunction u(m);
    for (double& c : u.coeffs) c = 1.0;
    // The diagonal swap is not an isometry of this rectangle's vertex set.
    SymmetryClass s2 = make_symmetry_class(DomainSpec::rectangle(2.0, 2.0), SymmetryKind::S2);
    CHECK_THROWS(symmetry_defect(u, s2));
    CHECK_THROWS(make_symmetry_class(rect, SymmetryKind::S2));
    CHECK_THROWS(make_symmetry_class(DomainSpec::disk(1.0), SymmetryKind::S1));
  }

  TEST_CASE("constrained first eigenvalue on the square half-domain at p = 2") {
    // lambda_{S1}(2) = lambda_2(2) = 5 pi^2 / 4 on the square of side 2.
    CdmConfig cdm_cfg;
    cdm_cfg.dt0 = 1.0;
    CmpaConfig cmpa_cfg;
    ConstrainedEigenResult r = constrained_eigen_with_symmetry(
        DomainSpec::rectangle(2.0, 2.0), SymmetryKind::S1, 2.0, 2'048, cdm_cfg, cmpa_cfg);
    const double pi = 3.14159265358979323846;
    CHECK(r.eigenpair.status == SolveStatus::Converged);
    CHECK(r.eigenpair.lambda == doctest::Approx(5.0 * pi * pi / 4.0).epsilon(0.01));
    CHECK(r.trace.empty());  // odd class goes through CDM only
  }

  TEST_CASE("mixed-condition half triangle reproduces the full first eigenvalue") {
    // The first eigenfunction of the full triangle is even in x2, so its
    // restriction solves the natural-cut half problem with the same lambda.
    CdmConfig cfg;
    cfg.dt0 = 1.0;
    CmpaConfig cmpa_cfg;
    DomainSpec tri = DomainSpec::iso_triangle(1.0, 1.0);
    Mesh full = build_domain(tri, 3'000);
    EigenpairResult whole = run_cdm(full, bump_e0(full), 2.0, cfg);

    DomainSpec half = DomainSpec::half(tri, CutAxis::Horizontal, CutCondition::Natural);
    Mesh half_mesh = build_domain(half, 1'500);
    EigenpairResult mixed = run_cdm(half_mesh, bump_e0(half_mesh), 2.0, cfg);

    CHECK(whole.status == SolveStatus::Converged);
    CHECK(mixed.status == SolveStatus::Converged);
    CHECK(mixed.lambda == doctest::Approx(whole.lambda).epsilon(0.01));
  }

  TEST_CASE("center-odd class has no half-domain problem") {
    CdmConfig cdm_cfg;
    CmpaConfig cmpa_cfg;
    CHECK_THROWS(constrained_eigen_with_symmetry(DomainSpec::rectangle(2.0, 1.75),
                                                 SymmetryKind::CenterOdd, 2.0, 512,
                                                 cdm_cfg, cmpa_cfg));
  }
}
