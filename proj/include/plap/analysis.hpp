// Symmetry classes of the second eigenfunction and the machinery to measure
// and enforce them: an L2 defect against each generating isometry, and
// constrained eigenvalues computed on half-domains (Dirichlet cut for odd
// classes, natural cut for even ones).
#pragma once

#include <memory>
#include <vector>

#include "plap/cmpa.hpp"
#include "plap/domain.hpp"

namespace plap {

enum class SymmetryKind { S1, S2, SE, SO, CenterOdd };

// One generator: an affine isometry T x = Q x + t of the domain and the sign
// the field must pick up under it.
struct SymmetryGenerator {
  double q[2][2];
  Vec2 shift;
  double sign;
  Vec2 apply(Vec2 x) const {
    return {q[0][0] * x.x + q[0][1] * x.y + shift.x,
            q[1][0] * x.x + q[1][1] * x.y + shift.y};
  }
};

struct SymmetryClass {
  SymmetryKind kind;
  std::vector<SymmetryGenerator> generators;
};

// S1/S2/CenterOdd are defined on rectangles (S2 only on squares), SE/SO on
// the isosceles and equilateral triangles. Throws for unsupported pairs.
SymmetryClass make_symmetry_class(const DomainSpec& spec, SymmetryKind kind);

// max over generators of ||u - sign (u o T)||_L2 / ||u||_L2, in [0, 2];
// 0 exactly when u carries the symmetry at the vertices. The mesh must map
// onto itself under every generator (vertex matching within 1e-10 diameter).
double symmetry_defect(const FeFunction& u, const SymmetryClass& cls);

struct ConstrainedEigenResult {
  std::shared_ptr<Mesh> mesh;  // half-domain mesh the eigenfunction lives on
  EigenpairResult eigenpair;
  std::vector<CmpaTracePoint> trace;  // nonempty for even classes (CMPA)
};

// Smallest eigenvalue within the symmetry class, computed as the first
// eigenpair of the Dirichlet half-domain problem for odd classes (S1, S2, SO)
// and as the mountain-pass eigenpair of the mixed problem for SE. The
// eigenfunction extends to the full domain by the class symmetry.
ConstrainedEigenResult constrained_eigen_with_symmetry(const DomainSpec& domain,
                                                       SymmetryKind kind, double p,
                                                       int target_triangles,
                                                       const CdmConfig& cdm_cfg,
                                                       const CmpaConfig& cmpa_cfg);

}  // namespace plap
