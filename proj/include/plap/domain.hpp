// Planar domain descriptions: disk, rectangles, isosceles/equilateral
// triangles, and half-domains obtained by cutting a symmetric parent along a
// symmetry line. The cut segment Gamma_1 carries either a Dirichlet or a
// natural (no-flux) condition.
#pragma once

#include <stdexcept>
#include <string>

namespace plap {

enum class Shape { Disk, Rectangle, IsoTriangle, EquiTriangle, HalfDomain };

// Which symmetry line of the parent the half-domain keeps as its cut.
enum class CutAxis {
  MidVertical,  // rectangle: x1 = a/2, keeps (0,a/2) x (0,b)
  Horizontal,   // isosceles triangle: x2 = 0, keeps the x2 > 0 half
  Diagonal      // square: x2 = x1, keeps the x2 < x1 half
};

enum class CutCondition { Dirichlet, Natural };

struct DomainSpec {
  Shape shape = Shape::Rectangle;
  // Disk: len1 = radius. Rectangle: len1 x len2. IsoTriangle: base len1,
  // height len2. EquiTriangle: side len1.
  double len1 = 1.0;
  double len2 = 1.0;
  // HalfDomain parameters; parent_shape must not itself be HalfDomain.
  Shape parent_shape = Shape::Rectangle;
  CutAxis cut_axis = CutAxis::MidVertical;
  CutCondition cut_condition = CutCondition::Dirichlet;

  static DomainSpec disk(double radius) {
    DomainSpec s;
    s.shape = Shape::Disk;
    s.len1 = radius;
    return s;
  }
  static DomainSpec rectangle(double a, double b) {
    DomainSpec s;
    s.shape = Shape::Rectangle;
    s.len1 = a;
    s.len2 = b;
    return s;
  }
  static DomainSpec iso_triangle(double base, double height) {
    DomainSpec s;
    s.shape = Shape::IsoTriangle;
    s.len1 = base;
    s.len2 = height;
    return s;
  }
  static DomainSpec equi_triangle(double side) {
    DomainSpec s;
    s.shape = Shape::EquiTriangle;
    s.len1 = side;
    return s;
  }
  static DomainSpec half(const DomainSpec& parent, CutAxis axis,
                         CutCondition cond) {
    if (parent.shape == Shape::HalfDomain)
      throw std::invalid_argument("half-domain of a half-domain not supported");
    DomainSpec s = parent;
    s.shape = Shape::HalfDomain;
    s.parent_shape = parent.shape;
    s.cut_axis = axis;
    s.cut_condition = cond;
    return s;
  }
};

void validate(const DomainSpec& spec);  // throws std::invalid_argument

}  // namespace plap
