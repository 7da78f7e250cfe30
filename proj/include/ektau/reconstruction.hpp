#pragma once

#include <array>
#include <memory>
#include <vector>

#include "ektau/model_space.hpp"
#include "ektau/quadruple.hpp"
#include "ektau/surface_patch.hpp"

namespace ektau {

/// Connection data of a quadruple on its grid: values of the antisymmetric
/// matrix of 1-forms Omega = (omega^a_b) against the tangent frame, with
/// omega^2_1 from the Levi-Civita connection of g and omega^3_j(e_k) =
/// <S e_k, e_j>. Also carries the frame columns needed to evaluate forms on
/// parameter directions.
struct ConnectionForms {
  GridSpec grid;
  std::vector<Mat3> omega_e1;  // Omega(e_1)
  std::vector<Mat3> omega_e2;  // Omega(e_2)
  std::vector<TangentFrame> frame;
};

ConnectionForms connection_forms(const QuadrupleField& q);

/// The ambient correction L(Z) of the moving-frame equation
/// A^{-1} dA = Omega + L(A): the Christoffel contraction
/// L_k[a][b] = sum Z^e_a Z^g_k Z^d_b Gamma^d_{g e}. Returns the
/// coefficients (L_1, L_2) of (omega^1, omega^2); each is antisymmetric.
/// Z must be orthogonal to within 1e-6. Position-dependent only for
/// tau = 0 models.
std::array<Mat3, 2> ambient_correction(const ModelSpace& m, const Mat3& Z,
                                       const Vec3& p, double h_amb = 1e-4);

/// Closed form of L(Z) for tau != 0, depending on Z only through its last
/// row (t1, t2, t3).
std::array<Mat3, 2> ambient_correction_closed(const ModelSpace& m, double t1,
                                              double t2, double t3);

/// Frame state carried along the integration: A in SO(3) (columns =
/// (dphi(e1), dphi(e2), N) in the canonical frame; last row = (T1,T2,nu))
/// and the ambient position f.
struct FrameState {
  Mat3 A = Mat3::Identity();
  Vec3 f = Vec3::Zero();
};

/// Order in which the grid is swept from the (u0,v0) corner.
enum class SweepOrder {
  RowThenColumns,  // integrate along u on row 0, then along v per column
  ColumnThenRows,  // integrate along v on column 0, then along u per row
};

struct IntegrationOptions {
  int substeps = 4;           // RK4 substeps per grid edge
  double h_amb = 1e-4;        // ambient finite-difference step (tau = 0)
  SweepOrder order = SweepOrder::RowThenColumns;
  bool check_compat = true;   // run verify() before integrating
  double compat_tol = 0.0;    // 0: use default_tol(grid)
  double a0_tol = 1e-9;       // admissibility of A0
};

struct IntegrationResult {
  GridSpec grid;
  std::vector<FrameState> states;
  /// max ||A^T A - I||_F observed right before each re-projection
  double max_orthogonality_drift = 0.0;
  /// max |A(2,:) - (T1,T2,nu)| over all grid points
  double max_last_row_error = 0.0;

  const FrameState& at(int i, int j) const { return states[grid.idx(i, j)]; }
};

/// Completes (T1, T2, nu) to a matrix of SO(3) whose last row it is; the
/// first row is the seed vector made orthonormal against it.
Mat3 complete_frame(const Vec2& T, double nu, const Vec3& seed = Vec3(1, 0, 0));

/// Integrates the moving-frame system dA = A (Omega + L(A)),
/// df = B(f) A omega over the grid by RK4 along grid edges, re-projecting A
/// to SO(3) by the symmetric square root after each edge. A0 must be in
/// SO(3) with last row (T1,T2,nu)(u0,v0); x0 must lie in the chart.
IntegrationResult integrate_frame(const QuadrupleField& q, const ModelSpace& m,
                                  const Mat3& A0, const Vec3& x0,
                                  const IntegrationOptions& opts = {});

/// Runs integrate_frame and wraps the positions into a sampled patch whose
/// fundamental data reproduces q.
std::shared_ptr<SampledPatch> reconstruct(const QuadrupleField& q,
                                          const ModelSpace& m, const Mat3& A0,
                                          const Vec3& x0,
                                          const IntegrationOptions& opts = {});

/// reconstruct() with the default frame completion at the grid corner and
/// base point x0 = (0,0,0).
std::shared_ptr<SampledPatch> reconstruct(const QuadrupleField& q,
                                          const ModelSpace& m,
                                          const IntegrationOptions& opts = {});

}  // namespace ektau
