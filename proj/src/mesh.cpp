#include "plap/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace plap {

void validate(const DomainSpec& spec) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string("domain size must be positive: ") + what);
  };
  switch (spec.shape) {
    case Shape::Disk:
      positive(spec.len1, "radius");
      break;
    case Shape::Rectangle:
      positive(spec.len1, "a");
      positive(spec.len2, "b");
      break;
    case Shape::IsoTriangle:
      positive(spec.len1, "base");
      positive(spec.len2, "height");
      break;
    case Shape::EquiTriangle:
      positive(spec.len1, "side");
      break;
    case Shape::HalfDomain: {
      DomainSpec parent = spec;
      parent.shape = spec.parent_shape;
      validate(parent);
      if (spec.parent_shape == Shape::Disk)
        throw std::invalid_argument("half-disk domains are not supported");
      if (spec.cut_axis == CutAxis::Diagonal &&
          (spec.parent_shape != Shape::Rectangle || spec.len1 != spec.len2))
        throw std::invalid_argument("diagonal cut requires a square parent");
      if (spec.cut_axis == CutAxis::Horizontal &&
          spec.parent_shape == Shape::Rectangle)
        throw std::invalid_argument("horizontal cut of a rectangle not supported; use MidVertical");
      if (spec.cut_axis == CutAxis::MidVertical &&
          spec.parent_shape != Shape::Rectangle)
        throw std::invalid_argument("mid-vertical cut requires a rectangle parent");
      break;
    }
  }
}

void Mesh::finalize() {
  const int nv = n_vertices();
  if (static_cast<int>(tags.size()) != nv)
    throw std::invalid_argument("mesh: tag count != vertex count");

  area = 0.0;
  h = 0.0;
  tri_geom.resize(triangles.size());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const auto& tri = triangles[t];
    const Vec2 a = vertices[tri[0]], b = vertices[tri[1]], c = vertices[tri[2]];
    const double s = signed_area(a, b, c);
    if (!(s > 0.0))
      throw std::invalid_argument("mesh: non-positive triangle area");
    area += s;
    h = std::max(h, circumdiameter(a, b, c));
    TriGeom& g = tri_geom[t];
    g.area = s;
    // grad phi_i = rot90(opposite edge) / (2 |T|)
    g.grad[0] = (1.0 / (2.0 * s)) * rot90(c - b);
    g.grad[1] = (1.0 / (2.0 * s)) * rot90(a - c);
    g.grad[2] = (1.0 / (2.0 * s)) * rot90(b - a);
  }

  free_index.assign(nv, -1);
  free_vertices.clear();
  for (int v = 0; v < nv; ++v) {
    if (tags[v] != BoundaryTag::Dirichlet) {
      free_index[v] = static_cast<int>(free_vertices.size());
      free_vertices.push_back(v);
    }
  }
  if (free_vertices.empty())
    throw std::invalid_argument("mesh: no free vertices");
}

namespace {

using Edge = std::pair<int, int>;

std::map<Edge, int> edge_counts(const Mesh& m) {
  std::map<Edge, int> counts;
  for (const auto& t : m.triangles) {
    for (int e = 0; e < 3; ++e) {
      int i = t[e], j = t[(e + 1) % 3];
      if (i > j) std::swap(i, j);
      ++counts[{i, j}];
    }
  }
  return counts;
}

void orient_ccw(Mesh& m) {
  for (auto& t : m.triangles) {
    if (signed_area(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]) < 0.0)
      std::swap(t[1], t[2]);
  }
}

// Tags every vertex on a once-counted (hull) edge Dirichlet, the rest
// Interior. Natural overrides are applied afterwards by the half-domain
// builders.
void tag_hull_dirichlet(Mesh& m) {
  m.tags.assign(m.vertices.size(), BoundaryTag::Interior);
  for (const auto& [e, c] : edge_counts(m)) {
    if (c == 1) {
      m.tags[e.first] = BoundaryTag::Dirichlet;
      m.tags[e.second] = BoundaryTag::Dirichlet;
    }
  }
}

double diameter_bound(const Mesh& m) {
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto& v : m.vertices) {
    lo_x = std::min(lo_x, v.x);
    hi_x = std::max(hi_x, v.x);
    lo_y = std::min(lo_y, v.y);
    hi_y = std::max(hi_y, v.y);
  }
  return std::hypot(hi_x - lo_x, hi_y - lo_y);
}

// Re-tags hull vertices strictly inside the segment [p0, p1] as Natural.
void tag_cut_natural(Mesh& m, Vec2 p0, Vec2 p1) {
  const double tol = 1e-12 * diameter_bound(m);
  const Vec2 d = p1 - p0;
  const double len2 = dot(d, d);
  for (int v = 0; v < m.n_vertices(); ++v) {
    if (m.tags[v] != BoundaryTag::Dirichlet) continue;
    const Vec2 r = m.vertices[v] - p0;
    const double s = dot(r, d) / len2;
    const double off = std::abs(cross(d, r)) / std::sqrt(len2);
    if (off <= tol && s * std::sqrt(len2) > tol &&
        (1.0 - s) * std::sqrt(len2) > tol)
      m.tags[v] = BoundaryTag::Natural;
  }
}

int round_even(double v) {
  int n = static_cast<int>(std::lround(v / 2.0)) * 2;
  return std::max(n, 2);
}

// Structured rectangle grid split into right triangles with alternating
// diagonals, so that reflections about both midlines map the triangulation
// onto itself (nx, ny even).
Mesh rect_mesh(double a, double b, int nx, int ny) {
  Mesh m;
  m.vertices.reserve((nx + 1) * (ny + 1));
  for (int iy = 0; iy <= ny; ++iy)
    for (int ix = 0; ix <= nx; ++ix)
      m.vertices.push_back({a * ix / nx, b * iy / ny});
  auto id = [nx](int ix, int iy) { return iy * (nx + 1) + ix; };
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const int v00 = id(ix, iy), v10 = id(ix + 1, iy);
      const int v01 = id(ix, iy + 1), v11 = id(ix + 1, iy + 1);
      if ((ix + iy) % 2 == 0) {
        m.triangles.push_back({v00, v10, v11});
        m.triangles.push_back({v00, v11, v01});
      } else {
        m.triangles.push_back({v00, v10, v01});
        m.triangles.push_back({v10, v11, v01});
      }
    }
  }
  return m;
}

// Uniform barycentric subdivision of the triangle (A, B, C) into n^2 cells.
Mesh tri_mesh(Vec2 A, Vec2 B, Vec2 C, int n) {
  Mesh m;
  if (signed_area(A, B, C) < 0.0) std::swap(B, C);
  std::vector<int> row_offset(n + 2, 0);
  for (int j = 0; j <= n; ++j) row_offset[j + 1] = row_offset[j] + (n - j + 1);
  auto id = [&row_offset](int i, int j) { return row_offset[j] + i; };
  const Vec2 e1 = (1.0 / n) * (B - A), e2 = (1.0 / n) * (C - A);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n - j; ++i)
      m.vertices.push_back(A + static_cast<double>(i) * e1 +
                           static_cast<double>(j) * e2);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n - j; ++i) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
      if (i < n - j - 1)
        m.triangles.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return m;
}

// Disk meshed as m concentric rings of a hexagonal pattern: ring j carries 6j
// vertices, 6m^2 triangles total. The boundary is the inscribed regular
// 6m-gon, so the polygon vertex count grows like sqrt(#triangles).
Mesh disk_mesh(double radius, int m_rings) {
  Mesh m;
  const double pi = 3.14159265358979323846;
  m.vertices.push_back({0.0, 0.0});
  std::vector<int> ring_start(m_rings + 1, 0);
  for (int j = 1; j <= m_rings; ++j) {
    ring_start[j] = m.n_vertices();
    const double r = radius * j / m_rings;
    for (int k = 0; k < 6 * j; ++k) {
      const double th = 2.0 * pi * k / (6.0 * j);
      m.vertices.push_back({r * std::cos(th), r * std::sin(th)});
    }
  }
  for (int j = 0; j < m_rings; ++j) {
    for (int s = 0; s < 6; ++s) {
      auto inner = [&](int i) { return j == 0 ? 0 : ring_start[j] + (s * j + i) % (6 * j); };
      auto outer = [&](int i) {
        return ring_start[j + 1] + (s * (j + 1) + i) % (6 * (j + 1));
      };
      for (int i = 0; i <= j; ++i)
        m.triangles.push_back({outer(i), outer(i + 1), inner(std::min(i, j))});
      for (int i = 0; i < j; ++i)
        m.triangles.push_back({inner(i), outer(i + 1), inner(i + 1)});
    }
  }
  return m;
}

struct HalfGeometry {
  Mesh mesh;
  Vec2 cut_p0, cut_p1;
};

HalfGeometry build_half(const DomainSpec& spec, int target) {
  HalfGeometry hg;
  switch (spec.cut_axis) {
    case CutAxis::MidVertical: {
      const double a = spec.len1 / 2.0, b = spec.len2;
      const double ideal_ny = std::sqrt(target / 2.0 * b / a);
      const int ny = round_even(ideal_ny);
      const int nx = round_even(ny * a / b);
      hg.mesh = rect_mesh(a, b, nx, ny);
      hg.cut_p0 = {a, 0.0};
      hg.cut_p1 = {a, b};
      break;
    }
    case CutAxis::Diagonal: {
      const double a = spec.len1;
      const int n = std::max(2, static_cast<int>(std::lround(std::sqrt(double(target)))));
      hg.mesh = tri_mesh({0.0, 0.0}, {a, 0.0}, {a, a}, n);
      hg.cut_p0 = {0.0, 0.0};
      hg.cut_p1 = {a, a};
      break;
    }
    case CutAxis::Horizontal: {
      const double w = spec.len1;
      const double l = spec.parent_shape == Shape::EquiTriangle
                           ? spec.len1 * std::sqrt(3.0) / 2.0
                           : spec.len2;
      const int n = std::max(2, static_cast<int>(std::lround(std::sqrt(double(target)))));
      hg.mesh = tri_mesh({0.0, 0.0}, {l, 0.0}, {0.0, w / 2.0}, n);
      hg.cut_p0 = {0.0, 0.0};
      hg.cut_p1 = {l, 0.0};
      break;
    }
  }
  return hg;
}

}  // namespace

Mesh build_domain(const DomainSpec& spec, int target) {
  validate(spec);
  if (target < 8)
    throw std::invalid_argument("build_domain: target triangle count must be >= 8");

  Mesh m;
  switch (spec.shape) {
    case Shape::Rectangle: {
      const double a = spec.len1, b = spec.len2;
      const double ideal_ny = std::sqrt(target / 2.0 * b / a);
      const int ny = round_even(ideal_ny);
      const int nx = round_even(ny * a / b);
      m = rect_mesh(a, b, nx, ny);
      tag_hull_dirichlet(m);
      break;
    }
    case Shape::Disk: {
      const int rings =
          std::max(1, static_cast<int>(std::lround(std::sqrt(target / 6.0))));
      m = disk_mesh(spec.len1, rings);
      tag_hull_dirichlet(m);
      break;
    }
    case Shape::IsoTriangle:
    case Shape::EquiTriangle: {
      const double w = spec.len1;
      const double l = spec.shape == Shape::EquiTriangle
                           ? spec.len1 * std::sqrt(3.0) / 2.0
                           : spec.len2;
      const int n = std::max(3, static_cast<int>(std::lround(std::sqrt(double(target)))));
      m = tri_mesh({0.0, -w / 2.0}, {0.0, w / 2.0}, {l, 0.0}, n);
      tag_hull_dirichlet(m);
      break;
    }
    case Shape::HalfDomain: {
      HalfGeometry hg = build_half(spec, target);
      m = std::move(hg.mesh);
      tag_hull_dirichlet(m);
      if (spec.cut_condition == CutCondition::Natural)
        tag_cut_natural(m, hg.cut_p0, hg.cut_p1);
      break;
    }
  }

  orient_ccw(m);
  m.finalize();
  const double ratio = double(m.n_triangles()) / target;
  if (ratio < 0.5 || ratio > 2.0)
    throw std::runtime_error("build_domain: could not meet triangle count within factor 2");
  return m;
}

Mesh refine(const Mesh& mesh) {
  Mesh out;
  out.vertices = mesh.vertices;
  out.tags = mesh.tags;

  const auto counts = edge_counts(mesh);
  std::map<Edge, int> midpoint;
  for (const auto& [e, c] : counts) {
    const int idx = out.n_vertices();
    out.vertices.push_back(0.5 * (mesh.vertices[e.first] + mesh.vertices[e.second]));
    midpoint[e] = idx;
    BoundaryTag tag = BoundaryTag::Interior;
    if (c == 1) {
      const BoundaryTag ta = mesh.tags[e.first], tb = mesh.tags[e.second];
      // A hull edge touching a Natural vertex lies inside the natural part of
      // the boundary; otherwise it is Dirichlet.
      tag = (ta == BoundaryTag::Natural || tb == BoundaryTag::Natural)
                ? BoundaryTag::Natural
                : BoundaryTag::Dirichlet;
    }
    out.tags.push_back(tag);
  }

  auto mid = [&midpoint](int i, int j) {
    if (i > j) std::swap(i, j);
    return midpoint.at({i, j});
  };
  out.triangles.reserve(4 * mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    const int m01 = mid(t[0], t[1]), m12 = mid(t[1], t[2]), m02 = mid(t[0], t[2]);
    out.triangles.push_back({t[0], m01, m02});
    out.triangles.push_back({m01, t[1], m12});
    out.triangles.push_back({m02, m12, t[2]});
    out.triangles.push_back({m01, m12, m02});
  }
  out.finalize();
  return out;
}

MeshMetrics mesh_metrics(const Mesh& mesh) {
  return {mesh.h, mesh.n_triangles(), mesh.n_free(), mesh.area};
}

void check_mesh(const Mesh& mesh) {
  const auto counts = edge_counts(mesh);
  std::vector<bool> on_hull(mesh.n_vertices(), false);
  for (const auto& [e, c] : counts) {
    if (c > 2) throw std::runtime_error("mesh check: edge shared by more than 2 triangles");
    if (c == 1) on_hull[e.first] = on_hull[e.second] = true;
  }
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    if (on_hull[v] && mesh.tags[v] == BoundaryTag::Interior)
      throw std::runtime_error("mesh check: hull vertex tagged Interior");
    if (!on_hull[v] && mesh.tags[v] != BoundaryTag::Interior)
      throw std::runtime_error("mesh check: interior vertex carries boundary tag");
  }
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  os << "vertices " << mesh.n_vertices() << " triangles " << mesh.n_triangles() << "\n";
  os.precision(17);
  for (int v = 0; v < mesh.n_vertices(); ++v)
    os << mesh.vertices[v].x << " " << mesh.vertices[v].y << " "
       << static_cast<int>(mesh.tags[v]) << "\n";
  for (const auto& t : mesh.triangles)
    os << t[0] << " " << t[1] << " " << t[2] << "\n";
}

Mesh read_mesh(std::istream& is) {
  std::string kw1, kw2;
  int nv = 0, nt = 0;
  is >> kw1 >> nv >> kw2 >> nt;
  if (kw1 != "vertices" || kw2 != "triangles" || nv <= 0 || nt <= 0)
    throw std::runtime_error("mesh read: bad header");
  Mesh m;
  m.vertices.resize(nv);
  m.tags.resize(nv);
  for (int v = 0; v < nv; ++v) {
    int tag;
    is >> m.vertices[v].x >> m.vertices[v].y >> tag;
    if (tag < 0 || tag > 2) throw std::runtime_error("mesh read: bad tag");
    m.tags[v] = static_cast<BoundaryTag>(tag);
  }
  m.triangles.resize(nt);
  for (int t = 0; t < nt; ++t)
    is >> m.triangles[t][0] >> m.triangles[t][1] >> m.triangles[t][2];
  if (!is) throw std::runtime_error("mesh read: truncated file");
  m.finalize();
  return m;
}

}  // namespace plap
