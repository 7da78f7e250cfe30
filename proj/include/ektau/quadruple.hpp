#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ektau/types.hpp"

namespace ektau {

/// Orthonormal tangent frame at a grid point. Columns of P are (e1, e2) in
/// the parameter basis (du, dv); rows of Pinv are the dual coframe
/// (omega^1, omega^2).
struct TangentFrame {
  Mat2 P;
  Mat2 Pinv;
};

/// Per-grid-point fundamental data (g, S, T, nu) of a surface in
/// E(kappa,tau): first fundamental form g in the parameter basis, shape
/// operator S and tangential Killing part T in the tangent frame, and the
/// normal component nu. Satisfies |T|^2 + nu^2 = 1.
struct QuadrupleField {
  double kappa = 0.0;
  double tau = 0.0;
  GridSpec grid;

  std::vector<Mat2> g;
  std::vector<Mat2> S;
  std::vector<Vec2> T;
  std::vector<double> nu;

  /// Fixed rotation applied to the canonical Gram-Schmidt frame that S and
  /// T are expressed in. Always 0 for serialized fields.
  double frame_rotation = 0.0;

  /// Extraction diagnostic: worst |S - S^T| seen before symmetrization.
  double max_S_asymmetry = 0.0;

  void resize(const GridSpec& gs);
  int idx(int i, int j) const { return grid.idx(i, j); }

  /// Frame that S and T are expressed in: the Gram-Schmidt frame of g
  /// seeded on du, rotated by frame_rotation.
  TangentFrame frame_at(int i, int j) const;

  double mean_curvature_at(int i, int j) const {
    return 0.5 * S[idx(i, j)].trace();
  }
  /// Mean and standard deviation of the mean-curvature field.
  void mean_curvature_stats(double& mean, double& stddev) const;

  /// max |(|T|^2 + nu^2) - 1| over the grid.
  double unit_norm_defect() const;
};

/// 2x2 rotation by theta.
Mat2 rotation2(double theta);

/// The quarter turn J (J e1 = e2).
Mat2 quarter_turn();

/// (g, S, -T, -nu); an involution that preserves the compatibility
/// residuals.
QuadrupleField sign_flip(const QuadrupleField& q);

/// Line-oriented text format:
///   #quadruple kappa=<r> tau=<r> nu=<int> nv=<int> u0=<r> u1=<r> v0=<r> v1=<r>
///   u v g11 g12 g22 S11 S12 S22 T1 T2 nu     (one row per point, u fastest)
void write_quadruple(std::ostream& os, const QuadrupleField& q);
void write_quadruple_file(const std::string& path, const QuadrupleField& q);
QuadrupleField read_quadruple(std::istream& is);
QuadrupleField read_quadruple_file(const std::string& path);

/// Sampled-patch file: the quadruple layout with three ambient chart
/// coordinates appended to each row (header tag #patch).
struct SampledPatchData {
  QuadrupleField q;
  std::vector<Vec3> positions;
};
void write_sampled_patch(std::ostream& os, const QuadrupleField& q,
                         const std::vector<Vec3>& positions);
void write_sampled_patch_file(const std::string& path, const QuadrupleField& q,
                              const std::vector<Vec3>& positions);
SampledPatchData read_sampled_patch(std::istream& is);
SampledPatchData read_sampled_patch_file(const std::string& path);

/// Shortest-round-trip style numeric formatting (17 significant digits).
std::string format_real(double x);

}  // namespace ektau
