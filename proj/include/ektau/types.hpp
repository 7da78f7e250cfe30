#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>

namespace ektau {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Basis a vector's components refer to: the chart coordinate frame
/// (dx, dy, dz) or the canonical orthonormal frame (E1, E2, E3).
enum class Basis { Coordinate, Frame };

/// A tangent vector at an ambient point, tagged with the basis its
/// components are expressed in. Mixing tags without an explicit
/// conversion is an error.
struct AmbientVector {
  Vec3 components;
  Basis basis;
};

inline AmbientVector coordinate_vector(const Vec3& v) {
  return {v, Basis::Coordinate};
}
inline AmbientVector frame_vector(const Vec3& v) { return {v, Basis::Frame}; }

/// Thrown when an ambient point (or a finite-difference stencil around it)
/// leaves the model chart.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an operation requires matching basis tags and gets mixed ones.
struct BasisMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when frame integration leaves the chart; records the last grid
/// point that was still valid.
struct ChartExit : DomainError {
  ChartExit(const std::string& what, int iu, int iv)
      : DomainError(what), last_i(iu), last_j(iv) {}
  int last_i;
  int last_j;
};

/// Dense rank-3 tensor with three 3-valued indices.
struct Tensor333 {
  std::array<double, 27> v{};

  double& operator()(int i, int j, int k) { return v[(i * 3 + j) * 3 + k]; }
  double operator()(int i, int j, int k) const {
    return v[(i * 3 + j) * 3 + k];
  }
};

/// Rectangular parameter grid [u0,u1] x [v0,v1] with n_u x n_v points.
struct GridSpec {
  int n_u = 2;
  int n_v = 2;
  double u0 = 0.0, u1 = 1.0;
  double v0 = 0.0, v1 = 1.0;

  double du() const { return n_u > 1 ? (u1 - u0) / (n_u - 1) : 0.0; }
  double dv() const { return n_v > 1 ? (v1 - v0) / (n_v - 1) : 0.0; }
  double u(int i) const { return u0 + i * du(); }
  double v(int j) const { return v0 + j * dv(); }
  int size() const { return n_u * n_v; }
  // Storage order: u varies fastest.
  int idx(int i, int j) const { return j * n_u + i; }

  bool same_layout(const GridSpec& o, double tol = 1e-12) const {
    return n_u == o.n_u && n_v == o.n_v && std::abs(u0 - o.u0) < tol &&
           std::abs(u1 - o.u1) < tol && std::abs(v0 - o.v0) < tol &&
           std::abs(v1 - o.v1) < tol;
  }
};

}  // namespace ektau
