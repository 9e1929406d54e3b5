// Small 2D vector and triangle helpers used throughout the mesh and FEM code.
#pragma once

#include <array>
#include <cmath>

namespace plap {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }
inline Vec2 operator*(Vec2 a, double c) { return {c * a.x, c * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 rot90(Vec2 a) { return {-a.y, a.x}; }

inline double signed_area(Vec2 a, Vec2 b, Vec2 c) {
  return 0.5 * cross(b - a, c - a);
}

// Diameter of the circumscribed circle, d = abc / (2 |T|).
inline double circumdiameter(Vec2 a, Vec2 b, Vec2 c) {
  const double la = norm(b - c), lb = norm(c - a), lc = norm(a - b);
  const double area = std::abs(signed_area(a, b, c));
  return la * lb * lc / (2.0 * area);
}

}  // namespace plap
