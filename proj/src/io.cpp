#include "plap/io.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace plap {

void write_field(std::ostream& os, const FeFunction& u) {
  const Mesh& mesh = *u.mesh;
  os << "field " << mesh.n_free() << "\n";
  os.precision(17);
  for (int d = 0; d < mesh.n_free(); ++d)
    os << mesh.free_vertices[d] << " " << u.coeffs[d] << "\n";
}

FeFunction read_field(std::istream& is, const Mesh& mesh) {
  std::string kw;
  int n = 0;
  is >> kw >> n;
  if (kw != "field" || n != mesh.n_free())
    throw std::runtime_error("field read: header does not match mesh");
  FeFunction u(mesh);
  for (int i = 0; i < n; ++i) {
    int v;
    double val;
    is >> v >> val;
    if (!is || v < 0 || v >= mesh.n_vertices() || mesh.free_index[v] < 0)
      throw std::runtime_error("field read: bad vertex index");
    u.coeffs[mesh.free_index[v]] = val;
  }
  return u;
}

void write_vtk(std::ostream& os, const Mesh& mesh, const FeFunction& u,
               const std::string& field_name) {
  os << "# vtk DataFile Version 3.0\n";
  os << field_name << "\n";
  os << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  os.precision(12);
  os << "POINTS " << mesh.n_vertices() << " double\n";
  for (const auto& v : mesh.vertices) os << v.x << " " << v.y << " 0\n";
  os << "CELLS " << mesh.n_triangles() << " " << 4 * mesh.n_triangles() << "\n";
  for (const auto& t : mesh.triangles)
    os << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  os << "CELL_TYPES " << mesh.n_triangles() << "\n";
  for (int t = 0; t < mesh.n_triangles(); ++t) os << "5\n";
  os << "POINT_DATA " << mesh.n_vertices() << "\n";
  os << "SCALARS " << field_name << " double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < mesh.n_vertices(); ++v) os << u.value_at_vertex(v) << "\n";
}

}  // namespace plap
