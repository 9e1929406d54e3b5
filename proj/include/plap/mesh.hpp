// Conforming triangulations of the supported planar domains. Meshes are
// immutable after construction; refinement produces a new mesh. Boundary
// conditions are tracked per vertex: Dirichlet vertices are eliminated from
// the FE space, Natural vertices stay free.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "plap/domain.hpp"
#include "plap/geometry.hpp"

namespace plap {

enum class BoundaryTag : std::uint8_t { Interior = 0, Dirichlet = 1, Natural = 2 };

// Per-triangle geometry cache: area and the constant gradients of the three
// nodal basis functions.
struct TriGeom {
  double area;
  std::array<Vec2, 3> grad;
};

class Mesh {
 public:
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;  // CCW vertex indices
  std::vector<BoundaryTag> tags;

  // Derived data, filled by finalize().
  std::vector<TriGeom> tri_geom;
  std::vector<int> free_index;     // vertex -> dof index, -1 if Dirichlet
  std::vector<int> free_vertices;  // dof index -> vertex
  double h = 0.0;                  // max circumscribed-circle diameter
  double area = 0.0;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  int n_free() const { return static_cast<int>(free_vertices.size()); }

  // Computes orientation, geometry cache, dof numbering, h and area.
  // Throws if a triangle is degenerate or tags are inconsistent.
  void finalize();
};

struct MeshMetrics {
  double h;
  int n_triangles;
  int n_free_vertices;
  double area;
};

Mesh build_domain(const DomainSpec& spec, int target_triangle_count);
Mesh refine(const Mesh& mesh);
MeshMetrics mesh_metrics(const Mesh& mesh);

// Structural checks used by tests: conforming edges (interior edges shared by
// exactly 2 triangles, hull edges by 1), hull vertices carry non-Interior
// tags, interior vertices are Interior. Throws on violation.
void check_mesh(const Mesh& mesh);

void write_mesh(std::ostream& os, const Mesh& mesh);
Mesh read_mesh(std::istream& is);

}  // namespace plap
