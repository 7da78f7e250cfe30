#pragma once

#include "ektau/types.hpp"

namespace ektau {

/// A simply connected homogeneous 3-manifold E(kappa, tau) with
/// 4-dimensional isometry group, in the fixed chart
///
///   ds^2 = lambda^2 (dx^2 + dy^2) + (tau lambda (y dx - x dy) + dz)^2,
///   lambda = 1 / (1 + kappa/4 (x^2 + y^2)).
///
/// kappa is the base curvature, tau the bundle curvature. The space-form
/// corner kappa = 4 tau^2 is admitted here (every closed form below stays
/// valid); user-facing entry points reject it. For kappa < 0 the chart is
/// the disk x^2 + y^2 < 4/(-kappa) times R; for kappa >= 0 it is all of
/// R^3 (covering E minus one fiber when kappa > 0).
class ModelSpace {
 public:
  ModelSpace(double kappa, double tau);

  double kappa() const { return kappa_; }
  double tau() const { return tau_; }
  /// kappa - 4 tau^2, the invariant shared by sister model spaces.
  double aniso() const { return kappa_ - 4.0 * tau_ * tau_; }
  /// sigma = kappa / (2 tau); only defined when tau != 0.
  double sigma() const;

  bool in_domain(const Vec3& p) const;
  void require_in_domain(const Vec3& p) const;

  /// Conformal factor lambda at p.
  double conformal_factor(const Vec3& p) const;

  /// Coordinate metric G at p (symmetric positive definite).
  Mat3 metric(const Vec3& p) const;

  /// Frame matrix B: columns are the canonical frame (E1,E2,E3) in the
  /// coordinate basis. Satisfies B^T G B = I and B(:,2) = (0,0,1).
  Mat3 frame(const Vec3& p) const;

  /// B^{-1} = B^T G, mapping coordinate components to frame components.
  Mat3 frame_inverse(const Vec3& p) const;

  /// Christoffel symbols of the canonical frame,
  /// gamma(alpha, beta, gamma) = <nabla_{E_beta} E_gamma, E_alpha>
  /// (first index: component; second: derivative direction; third:
  /// differentiated field). Constant for tau != 0; computed numerically by
  /// a finite-difference Koszul formula for tau = 0. Antisymmetric in
  /// (component, field): gamma(a,b,c) = -gamma(c,b,a).
  Tensor333 frame_christoffels(const Vec3& p, double h = 1e-4) const;

  /// Coordinate Christoffel symbols Gamma^a_{bc} by central finite
  /// differences of the metric (step h); symmetric in (b,c).
  Tensor333 coordinate_christoffels(const Vec3& p, double h = 1e-4) const;

  /// <R(X,Y)Z,W> at p from the closed-form curvature tensor. All four
  /// vectors must carry the same basis tag. Sign convention:
  /// R(X,Y)Z = nabla_Y nabla_X Z - nabla_X nabla_Y Z + nabla_[X,Y] Z,
  /// so that sec(X,Y) = <R(X,Y)X,Y> for orthonormal X,Y.
  double curvature(const Vec3& p, const AmbientVector& X,
                   const AmbientVector& Y, const AmbientVector& Z,
                   const AmbientVector& W) const;

  /// Vector product in E, defined by <X x Y, Z> = det_(E1,E2,E3)(X,Y,Z).
  /// Accepts any basis tags (converted internally); result is in the
  /// canonical frame basis.
  AmbientVector cross(const Vec3& p, const AmbientVector& X,
                      const AmbientVector& Y) const;

  /// Riemannian inner product at p; accepts any basis tags.
  double inner(const Vec3& p, const AmbientVector& X,
               const AmbientVector& Y) const;

  AmbientVector to_frame(const Vec3& p, const AmbientVector& X) const;
  AmbientVector to_coordinate(const Vec3& p, const AmbientVector& X) const;

 private:
  double kappa_;
  double tau_;
};

}  // namespace ektau
