#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ektau/types.hpp"

namespace ektau {

/// Wavefront-style triangle mesh of a sampled grid: `v x y z` lines
/// (17 significant digits, chart coordinates) followed by `f i j k` lines
/// with 1-based indices, two triangles per grid cell, vertices in grid
/// order with u varying fastest.
void write_mesh(std::ostream& os, const GridSpec& grid,
                const std::vector<Vec3>& points);
void write_mesh_file(const std::string& path, const GridSpec& grid,
                     const std::vector<Vec3>& points);

}  // namespace ektau
