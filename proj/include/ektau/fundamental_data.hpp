#pragma once

#include "ektau/quadruple.hpp"
#include "ektau/surface_patch.hpp"

namespace ektau {

struct ExtractionOptions {
  /// Step for ambient finite differences (coordinate Christoffels) and for
  /// differentiating the normal field along the parameters of pointwise
  /// patches.
  double h_amb = 1e-4;
  /// Immersion guard: det g must exceed this at every grid point.
  double eps_imm = 1e-10;
  /// Fixed rotation of the tangent frame that S and T are expressed in.
  double frame_rotation = 0.0;
};

/// Extracts (g, S, T, nu) of the patch on the given grid. The normal N is
/// chosen so that (dphi(e1), dphi(e2), N) is a direct frame; S is the shape
/// operator S X = -nabla_X N expressed in the tangent frame; T and nu are
/// the tangential and normal parts of the vertical field E3.
QuadrupleField fundamental_data(const SurfacePatch& patch, const GridSpec& grid,
                                const ExtractionOptions& opts = {});

/// Convenience: extraction over the patch's default extent at n x n.
QuadrupleField fundamental_data(const SurfacePatch& patch, int n_u, int n_v,
                                const ExtractionOptions& opts = {});

/// Scalar mean-curvature field H = tr(S)/2.
std::vector<double> mean_curvature(const QuadrupleField& q);

}  // namespace ektau
