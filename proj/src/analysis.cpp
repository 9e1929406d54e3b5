#include "plap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plap/fields.hpp"

namespace plap {

SymmetryClass make_symmetry_class(const DomainSpec& spec, SymmetryKind kind) {
  validate(spec);
  SymmetryClass cls;
  cls.kind = kind;
  const double a = spec.len1, b = spec.len2;
  switch (kind) {
    case SymmetryKind::S1:
      if (spec.shape != Shape::Rectangle)
        throw std::invalid_argument("S1 symmetry is defined on rectangles");
      cls.generators.push_back({{{-1, 0}, {0, 1}}, {a, 0.0}, -1.0});  // odd about x1 = a/2
      cls.generators.push_back({{{1, 0}, {0, -1}}, {0.0, b}, +1.0});  // even about x2 = b/2
      break;
    case SymmetryKind::S2:
      if (spec.shape != Shape::Rectangle || spec.len1 != spec.len2)
        throw std::invalid_argument("S2 symmetry is defined on squares");
      cls.generators.push_back({{{0, 1}, {1, 0}}, {0.0, 0.0}, -1.0});   // odd about x2 = x1
      cls.generators.push_back({{{0, -1}, {-1, 0}}, {a, a}, +1.0});     // even about the antidiagonal
      break;
    case SymmetryKind::SE:
    case SymmetryKind::SO:
      if (spec.shape != Shape::IsoTriangle && spec.shape != Shape::EquiTriangle)
        throw std::invalid_argument("SE/SO symmetry is defined on the triangle domains");
      cls.generators.push_back(
          {{{1, 0}, {0, -1}}, {0.0, 0.0}, kind == SymmetryKind::SE ? +1.0 : -1.0});
      break;
    case SymmetryKind::CenterOdd:
      if (spec.shape != Shape::Rectangle)
        throw std::invalid_argument("CenterOdd symmetry is defined on rectangles");
      cls.generators.push_back({{{-1, 0}, {0, -1}}, {a, b}, -1.0});
      break;
  }
  return cls;
}

namespace {

// Vertex lookup by coordinates with tolerance 1e-10 * diameter: binary search
// on x, then a linear scan of the x-slab for the matching y.
class VertexLocator {
 public:
  explicit VertexLocator(const Mesh& mesh) : mesh_(&mesh) {
    order_.resize(mesh.n_vertices());
    for (int v = 0; v < mesh.n_vertices(); ++v) order_[v] = v;
    std::sort(order_.begin(), order_.end(), [&](int l, int r) {
      return mesh.vertices[l].x < mesh.vertices[r].x;
    });
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const auto& v : mesh.vertices) {
      lo_x = std::min(lo_x, v.x);
      hi_x = std::max(hi_x, v.x);
      lo_y = std::min(lo_y, v.y);
      hi_y = std::max(hi_y, v.y);
    }
    tol_ = 1e-10 * std::hypot(hi_x - lo_x, hi_y - lo_y);
  }

  int find(Vec2 p) const {
    auto it = std::lower_bound(order_.begin(), order_.end(), p.x - tol_,
                               [&](int v, double x) { return mesh_->vertices[v].x < x; });
    for (; it != order_.end() && mesh_->vertices[*it].x <= p.x + tol_; ++it) {
      const Vec2 q = mesh_->vertices[*it];
      if (std::abs(q.y - p.y) <= tol_ && std::abs(q.x - p.x) <= tol_) return *it;
    }
    return -1;
  }

 private:
  const Mesh* mesh_;
  std::vector<int> order_;
  double tol_;
};

}  // namespace

double symmetry_defect(const FeFunction& u, const SymmetryClass& cls) {
  const Mesh& mesh = *u.mesh;
  const VertexLocator locator(mesh);
  const double norm_u = std::sqrt(eval_J(u, 2.0));
  if (!(norm_u > 0.0)) throw std::invalid_argument("symmetry_defect: zero field");

  double worst = 0.0;
  for (const auto& gen : cls.generators) {
    FeFunction diff(mesh);
    for (int d = 0; d < mesh.n_free(); ++d) {
      const int v = mesh.free_vertices[d];
      const int w = locator.find(gen.apply(mesh.vertices[v]));
      if (w < 0 || mesh.tags[w] != mesh.tags[v])
        throw std::invalid_argument("symmetry_defect: mesh is not invariant under the class isometry");
      diff.coeffs[d] = u.coeffs[d] - gen.sign * u.value_at_vertex(w);
    }
    worst = std::max(worst, std::sqrt(eval_J(diff, 2.0)) / norm_u);
  }
  return worst;
}

ConstrainedEigenResult constrained_eigen_with_symmetry(const DomainSpec& domain,
                                                       SymmetryKind kind, double p,
                                                       int target_triangles,
                                                       const CdmConfig& cdm_cfg,
                                                       const CmpaConfig& cmpa_cfg) {
  validate(domain);
  DomainSpec half;
  bool even_class = false;
  switch (kind) {
    case SymmetryKind::S1:
      half = DomainSpec::half(domain, CutAxis::MidVertical, CutCondition::Dirichlet);
      break;
    case SymmetryKind::S2:
      half = DomainSpec::half(domain, CutAxis::Diagonal, CutCondition::Dirichlet);
      break;
    case SymmetryKind::SO:
      half = DomainSpec::half(domain, CutAxis::Horizontal, CutCondition::Dirichlet);
      break;
    case SymmetryKind::SE:
      half = DomainSpec::half(domain, CutAxis::Horizontal, CutCondition::Natural);
      even_class = true;
      break;
    case SymmetryKind::CenterOdd:
      throw std::invalid_argument(
          "CenterOdd has no straight symmetry line; no half-domain problem exists");
  }

  ConstrainedEigenResult out;
  out.mesh = std::make_shared<Mesh>(build_domain(half, target_triangles));
  FemSpace space(*out.mesh, p, cdm_cfg.al);
  const FeFunction e0 = bump_e0(*out.mesh);
  EigenpairResult first = run_cdm(space, e0, cdm_cfg);
  if (!even_class) {
    out.eigenpair = std::move(first);
    return out;
  }
  // Even class: the first eigenpair of the mixed problem is the restriction
  // of u1; the class-constrained second eigenpair is its mountain pass.
  const FeFunction eM = em_preset(*out.mesh, "two-bump");
  FemSpace cmpa_space(*out.mesh, p, cmpa_cfg.al);
  CmpaResult second = run_cmpa(cmpa_space, first.u, eM, cmpa_cfg);
  out.eigenpair = std::move(second.eigenpair);
  out.trace = std::move(second.trace);
  return out;
}

}  // namespace plap
