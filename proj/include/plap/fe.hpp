// P1 finite element fields and dual vectors over the free (non-Dirichlet)
// vertices of a mesh. Dirichlet vertices carry an implicit zero value.
#pragma once

#include <stdexcept>
#include <vector>

#include "plap/mesh.hpp"

namespace plap {

struct FeFunction {
  const Mesh* mesh = nullptr;
  std::vector<double> coeffs;  // one per free vertex

  FeFunction() = default;
  explicit FeFunction(const Mesh& m) : mesh(&m), coeffs(m.n_free(), 0.0) {}
  FeFunction(const Mesh& m, std::vector<double> c) : mesh(&m), coeffs(std::move(c)) {
    if (static_cast<int>(coeffs.size()) != m.n_free())
      throw std::invalid_argument("FeFunction: coefficient count != free vertex count");
  }

  // Nodal value at a global vertex index (0 on Dirichlet vertices).
  double value_at_vertex(int v) const {
    const int d = mesh->free_index[v];
    return d >= 0 ? coeffs[d] : 0.0;
  }
};

// A continuous linear functional represented by its action on the nodal basis
// functions of the free vertices.
struct DualVector {
  const Mesh* mesh = nullptr;
  std::vector<double> action;

  DualVector() = default;
  explicit DualVector(const Mesh& m) : mesh(&m), action(m.n_free(), 0.0) {}
};

inline double pair(const DualVector& d, const FeFunction& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.action.size(); ++i) s += d.action[i] * v.coeffs[i];
  return s;
}

}  // namespace plap
