#include <doctest.h>

#include <sstream>

#include "plap/fields.hpp"
#include "plap/io.hpp"

using namespace plap;

TEST_SUITE("io") {
  TEST_CASE("field text round trip") {
    Mesh m = build_domain(DomainSpec::rectangle(2.0, 1.75), 256);
    FeFunction u = bump_e0(m);
    std::stringstream ss;
    write_field(ss, u);
    FeFunction back = read_field(ss, m);
    for (int i = 0; i < m.n_free(); ++i) CHECK(back.coeffs[i] == u.coeffs[i]);
  }

  TEST_CASE("field header mismatch is rejected") {
    Mesh m = build_domain(DomainSpec::rectangle(2.0, 1.75), 256);
    Mesh other = build_domain(DomainSpec::rectangle(2.0, 1.75), 1'024);
    FeFunction u = bump_e0(m);
    std::stringstream ss;
    write_field(ss, u);
    CHECK_THROWS(read_field(ss, other));
  }

  TEST_CASE("unstructured-grid export structure") {
    Mesh m = build_domain(DomainSpec::rectangle(1.0, 1.0), 8);
    FeFunction u = bump_e0(m);
    std::stringstream ss;
    write_vtk(ss, m, u, "u1");
    const std::string text = ss.str();
    CHECK(text.find("# vtk DataFile Version 3.0") == 0);
    CHECK(text.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
    CHECK(text.find("POINTS 9 double") != std::string::npos);
    CHECK(text.find("CELLS 8 32") != std::string::npos);
    CHECK(text.find("CELL_TYPES 8") != std::string::npos);
    CHECK(text.find("POINT_DATA 9") != std::string::npos);
    CHECK(text.find("SCALARS u1 double 1") != std::string::npos);
  }

  TEST_CASE("writes are deterministic") {
    Mesh m = build_domain(DomainSpec::disk(1.0), 384);
    FeFunction u = em_preset(m, "ring");
    std::stringstream s1, s2;
    write_field(s1, u);
    write_field(s2, u);
    CHECK(s1.str() == s2.str());
  }
}
