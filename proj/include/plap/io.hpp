// Plain-text field serialization and legacy ASCII unstructured-grid export
// for external viewers.
#pragma once

#include <iosfwd>
#include <string>

#include "plap/fe.hpp"

namespace plap {

// "field N" header, then N lines "vertex_index value" over the free vertices.
void write_field(std::ostream& os, const FeFunction& u);
FeFunction read_field(std::istream& is, const Mesh& mesh);

// Legacy ASCII unstructured-grid file: points, triangle cells, one scalar
// point-data array (zero on Dirichlet vertices).
void write_vtk(std::ostream& os, const Mesh& mesh, const FeFunction& u,
               const std::string& field_name);

}  // namespace plap
