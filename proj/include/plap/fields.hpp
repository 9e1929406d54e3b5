// Starting fields for the eigenvalue runs: a positive distance-to-boundary
// bump for CDM and the named intermediate-point presets for the CMPA path.
#pragma once

#include <string>
#include <vector>

#include "plap/fe.hpp"

namespace plap {

// Distance from each free vertex to the Dirichlet part of the hull.
std::vector<double> distance_to_dirichlet(const Mesh& mesh);

// Positive cone-like bump (the distance field itself), not yet scaled to S.
FeFunction bump_e0(const Mesh& mesh);

// Presets for the CMPA intermediate point:
//   "two-bump": d(x) (x1 - c1), two opposite-sign bumps along the x1 axis;
//   "ring":     d(x) (2 d(x)/max d - 1), a sign-changing radial profile;
//   "asym":     d(x) ((x1 - c1) + (x2 - c2)/2), odd about the center but
//               free of the axis symmetries.
FeFunction em_preset(const Mesh& mesh, const std::string& name);

}  // namespace plap
