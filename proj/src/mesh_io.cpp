#include "ektau/mesh_io.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include "ektau/quadruple.hpp"

namespace ektau {

void write_mesh(std::ostream& os, const GridSpec& grid,
                const std::vector<Vec3>& points) {
  if (static_cast<int>(points.size()) != grid.size())
    throw std::invalid_argument("write_mesh: point count != grid size");
  for (int j = 0; j < grid.n_v; ++j)
    for (int i = 0; i < grid.n_u; ++i) {
      const Vec3& p = points[grid.idx(i, j)];
      os << "v " << format_real(p.x()) << ' ' << format_real(p.y()) << ' '
         << format_real(p.z()) << "\n";
    }
  auto id = [&](int i, int j) { return grid.idx(i, j) + 1; };
  for (int j = 0; j + 1 < grid.n_v; ++j)
    for (int i = 0; i + 1 < grid.n_u; ++i) {
      os << "f " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i, j + 1)
         << "\n";
      os << "f " << id(i + 1, j) << ' ' << id(i + 1, j + 1) << ' '
         << id(i, j + 1) << "\n";
    }
}

void write_mesh_file(const std::string& path, const GridSpec& grid,
                     const std::vector<Vec3>& points) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_mesh(os, grid, points);
}

}  // namespace ektau
