#include "plap/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plap {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double cheeger_rectangle(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("cheeger_rectangle: sides must be positive");
  return (4.0 - kPi) / (a + b - std::sqrt((a - b) * (a - b) + kPi * a * b));
}

double cheeger_triangle(Vec2 A, Vec2 B, Vec2 C) {
  const double area = std::abs(signed_area(A, B, C));
  if (!(area > 0.0)) throw std::invalid_argument("cheeger_triangle: degenerate triangle");
  const double per = norm(B - A) + norm(C - B) + norm(A - C);
  return (per + std::sqrt(4.0 * kPi * area)) / (2.0 * area);
}

namespace {

// Largest radius of two equal disjoint balls in the isosceles triangle with
// base w (along x2 at x1 = 0) and height l. Two candidate configurations:
//  - side by side: both touch the base and one leg each, tangent to each
//    other across the axis:              r = w l / (2 l + w + 2 L),
//  - stacked: one ball in the apex wedge touching both legs, the other in a
//    base corner touching the base and one leg, mutually tangent:
//                                        r = w l L / (L (2L + w) + 2 l w),
// where L is the leg length. The larger of the two wins; they coincide for
// the equilateral triangle.
double iso_triangle_r2(double w, double l) {
  const double L = std::hypot(w / 2.0, l);
  const double side_by_side = w * l / (2.0 * l + w + 2.0 * L);
  const double stacked = w * l * L / (L * (2.0 * L + w) + 2.0 * l * w);
  return std::max(side_by_side, stacked);
}

}  // namespace

std::pair<double, double> infty_eigenvalues(const DomainSpec& spec) {
  validate(spec);
  switch (spec.shape) {
    case Shape::Disk: {
      const double R = spec.len1;
      return {1.0 / R, 2.0 / R};
    }
    case Shape::Rectangle: {
      const double a = spec.len1, b = spec.len2;
      const double r1 = std::min(a, b) / 2.0;
      const double r2 = std::min(std::min(a, b) / 2.0, std::max(a, b) / 4.0);
      return {1.0 / r1, 1.0 / r2};
    }
    case Shape::IsoTriangle:
    case Shape::EquiTriangle: {
      const double w = spec.len1;
      const double l = spec.shape == Shape::EquiTriangle
                           ? spec.len1 * std::sqrt(3.0) / 2.0
                           : spec.len2;
      const double L = std::hypot(w / 2.0, l);
      const double r1 = w * l / (w + 2.0 * L);  // inradius, 2|T|/per
      return {1.0 / r1, 1.0 / iso_triangle_r2(w, l)};
    }
    case Shape::HalfDomain:
      throw std::invalid_argument("infty_eigenvalues: no closed form for half-domains");
  }
  throw std::logic_error("unreachable");
}

AsymptoticConstants reference_constants(const DomainSpec& spec) {
  validate(spec);
  AsymptoticConstants out;
  switch (spec.shape) {
    case Shape::Disk: {
      out.h1 = 2.0 / spec.len1;
      out.h2 = 3.1543 / spec.len1;  // half-disk Cheeger constant, radius-scaled
      auto [l1, l2] = infty_eigenvalues(spec);
      out.Lambda1 = l1;
      out.Lambda2 = l2;
      break;
    }
    case Shape::Rectangle: {
      out.h1 = cheeger_rectangle(spec.len1, spec.len2);
      auto [l1, l2] = infty_eigenvalues(spec);
      out.Lambda1 = l1;
      out.Lambda2 = l2;
      break;
    }
    case Shape::IsoTriangle:
    case Shape::EquiTriangle: {
      const double w = spec.len1;
      const double l = spec.shape == Shape::EquiTriangle
                           ? spec.len1 * std::sqrt(3.0) / 2.0
                           : spec.len2;
      out.h1 = cheeger_triangle({0.0, -w / 2.0}, {0.0, w / 2.0}, {l, 0.0});
      auto [l1, l2] = infty_eigenvalues(spec);
      out.Lambda1 = l1;
      out.Lambda2 = l2;
      break;
    }
    case Shape::HalfDomain: {
      const double w = spec.len1;
      switch (spec.cut_axis) {
        case CutAxis::MidVertical: {
          const double a = spec.len1 / 2.0, b = spec.len2;
          out.h1 = cheeger_rectangle(a, b);
          out.Lambda1 = 2.0 / std::min(a, b);
          break;
        }
        case CutAxis::Diagonal: {
          out.h1 = cheeger_triangle({0.0, 0.0}, {w, 0.0}, {w, w});
          const double per = 2.0 * w + std::sqrt(2.0) * w;
          out.Lambda1 = per / (w * w);  // 1/r_in, r_in = 2|T|/per
          break;
        }
        case CutAxis::Horizontal: {
          const double l = spec.parent_shape == Shape::EquiTriangle
                               ? spec.len1 * std::sqrt(3.0) / 2.0
                               : spec.len2;
          out.h1 = cheeger_triangle({0.0, 0.0}, {l, 0.0}, {0.0, w / 2.0});
          const double per = l + w / 2.0 + std::hypot(l, w / 2.0);
          out.Lambda1 = per / (l * w / 2.0);
          break;
        }
      }
      break;
    }
  }
  if (out.Lambda2 && !(out.Lambda1 <= *out.Lambda2 + 1e-12))
    throw std::logic_error("reference constants violate Lambda1 <= Lambda2");
  return out;
}

DiskConstants disk_constants() { return {}; }

}  // namespace plap
