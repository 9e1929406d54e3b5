#include "plap/fields.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace plap {

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  double t = len2 > 0.0 ? dot(p - a, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * d));
}

}  // namespace

std::vector<double> distance_to_dirichlet(const Mesh& mesh) {
  // Dirichlet part of the hull: hull edges with both endpoints Dirichlet,
  // plus isolated Dirichlet vertices (the endpoints of a natural segment).
  std::map<std::pair<int, int>, int> counts;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      int i = t[e], j = t[(e + 1) % 3];
      if (i > j) std::swap(i, j);
      ++counts[{i, j}];
    }
  }
  std::vector<std::pair<int, int>> dirichlet_edges;
  std::vector<int> corner_vertices;  // Dirichlet endpoints of natural segments
  for (const auto& [e, c] : counts) {
    if (c != 1) continue;
    const bool da = mesh.tags[e.first] == BoundaryTag::Dirichlet;
    const bool db = mesh.tags[e.second] == BoundaryTag::Dirichlet;
    if (da && db) {
      dirichlet_edges.push_back(e);
    } else if (da) {
      corner_vertices.push_back(e.first);
    } else if (db) {
      corner_vertices.push_back(e.second);
    }
  }

  std::vector<double> dist(mesh.n_free(), 0.0);
  for (int d = 0; d < mesh.n_free(); ++d) {
    const Vec2 p = mesh.vertices[mesh.free_vertices[d]];
    double best = 1e300;
    for (const auto& e : dirichlet_edges)
      best = std::min(best,
                      point_segment_distance(p, mesh.vertices[e.first], mesh.vertices[e.second]));
    for (int v : corner_vertices) best = std::min(best, norm(p - mesh.vertices[v]));
    dist[d] = best;
  }
  return dist;
}

FeFunction bump_e0(const Mesh& mesh) {
  FeFunction f(mesh);
  f.coeffs = distance_to_dirichlet(mesh);
  return f;
}

FeFunction em_preset(const Mesh& mesh, const std::string& name) {
  const std::vector<double> d = distance_to_dirichlet(mesh);
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto& v : mesh.vertices) {
    lo_x = std::min(lo_x, v.x);
    hi_x = std::max(hi_x, v.x);
    lo_y = std::min(lo_y, v.y);
    hi_y = std::max(hi_y, v.y);
  }
  const double cx = (lo_x + hi_x) / 2.0, cy = (lo_y + hi_y) / 2.0;
  const double dmax = *std::max_element(d.begin(), d.end());

  FeFunction f(mesh);
  for (int i = 0; i < mesh.n_free(); ++i) {
    const Vec2 p = mesh.vertices[mesh.free_vertices[i]];
    if (name == "two-bump") {
      f.coeffs[i] = d[i] * (p.x - cx);
    } else if (name == "ring") {
      f.coeffs[i] = d[i] * (2.0 * d[i] / dmax - 1.0);
    } else if (name == "asym") {
      f.coeffs[i] = d[i] * ((p.x - cx) + 0.5 * (p.y - cy));
    } else {
      throw std::invalid_argument("unknown e_M preset: " + name);
    }
  }
  return f;
}

}  // namespace plap
