// Closed-form asymptotic constants: Cheeger constants (the p -> 1 limits of
// the eigenvalues) and infinity-eigenvalues Lambda_1 = 1/r_1, Lambda_2 = 1/r_2
// from inscribed-ball radii (the p -> infinity limits of lambda^{1/p}).
#pragma once

#include <optional>
#include <utility>

#include "plap/domain.hpp"
#include "plap/geometry.hpp"

namespace plap {

// h1((0,a) x (0,b)) = (4 - pi) / (a + b - sqrt((a - b)^2 + pi a b)).
double cheeger_rectangle(double a, double b);

// h1 of a triangle: (per + sqrt(4 pi |T|)) / (2 |T|).
double cheeger_triangle(Vec2 A, Vec2 B, Vec2 C);

// (Lambda_1, Lambda_2) for disk, rectangle, isosceles or equilateral
// triangle. Throws for half-domains (no closed form is shipped for their
// second ball radius).
std::pair<double, double> infty_eigenvalues(const DomainSpec& spec);

struct AsymptoticConstants {
  double h1 = 0.0;
  std::optional<double> h2;  // only known for the disk
  double Lambda1 = 0.0;
  std::optional<double> Lambda2;
};

AsymptoticConstants reference_constants(const DomainSpec& spec);

// Unit-disk constants: h1 = 2, h2 ~= 3.1543 (first Cheeger constant of the
// half-disk), plus the radially-constrained analogues h2_rad = 4 (disk and
// annulus of radius 1/2 share it) and Lambda2_rad = 3 (two concentric nodal
// regions of inradius 1/3).
struct DiskConstants {
  double h1 = 2.0;
  double h2 = 3.1543;
  double h2_rad = 4.0;
  double Lambda2_rad = 3.0;
};
DiskConstants disk_constants();

}  // namespace plap
