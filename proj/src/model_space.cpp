#include "ektau/model_space.hpp"

#include <cmath>
#include <sstream>

namespace ektau {

namespace {

Vec3 frame_comps(const ModelSpace& m, const Vec3& p, const AmbientVector& X) {
  return X.basis == Basis::Frame ? X.components
                                 : Vec3(m.frame_inverse(p) * X.components);
}

}  // namespace

ModelSpace::ModelSpace(double kappa, double tau) : kappa_(kappa), tau_(tau) {
  if (!std::isfinite(kappa) || !std::isfinite(tau))
    throw std::invalid_argument("ModelSpace: kappa and tau must be finite");
}

double ModelSpace::sigma() const {
  if (tau_ == 0.0)
    throw std::invalid_argument("ModelSpace::sigma: undefined for tau = 0");
  return kappa_ / (2.0 * tau_);
}

bool ModelSpace::in_domain(const Vec3& p) const {
  if (kappa_ >= 0.0) return true;
  return p.x() * p.x() + p.y() * p.y() < 4.0 / (-kappa_);
}

void ModelSpace::require_in_domain(const Vec3& p) const {
  if (!in_domain(p)) {
    std::ostringstream os;
    os << "point (" << p.x() << ", " << p.y() << ", " << p.z()
       << ") outside the chart disk x^2+y^2 < " << 4.0 / (-kappa_);
    throw DomainError(os.str());
  }
}

double ModelSpace::conformal_factor(const Vec3& p) const {
  require_in_domain(p);
  return 1.0 / (1.0 + 0.25 * kappa_ * (p.x() * p.x() + p.y() * p.y()));
}

Mat3 ModelSpace::metric(const Vec3& p) const {
  const double lam = conformal_factor(p);
  const double mu = tau_ * lam;
  // omega = mu (y dx - x dy) + dz; G = lam^2 (dx^2+dy^2) + omega (x) omega
  const double wx = mu * p.y(), wy = -mu * p.x(), wz = 1.0;
  Mat3 g;
  g << lam * lam + wx * wx, wx * wy, wx * wz,  //
      wx * wy, lam * lam + wy * wy, wy * wz,   //
      wx * wz, wy * wz, wz * wz;
  return g;
}

Mat3 ModelSpace::frame(const Vec3& p) const {
  const double lam = conformal_factor(p);
  Mat3 b = Mat3::Zero();
  if (tau_ != 0.0) {
    const double sz = sigma() * p.z();
    const double cs = std::cos(sz), sn = std::sin(sz);
    b(0, 0) = cs / lam;
    b(1, 0) = sn / lam;
    b(2, 0) = tau_ * (p.x() * sn - p.y() * cs);
    b(0, 1) = -sn / lam;
    b(1, 1) = cs / lam;
    b(2, 1) = tau_ * (p.x() * cs + p.y() * sn);
  } else {
    b(0, 0) = 1.0 / lam;
    b(1, 1) = 1.0 / lam;
  }
  b(2, 2) = 1.0;
  return b;
}

Mat3 ModelSpace::frame_inverse(const Vec3& p) const {
  return frame(p).transpose() * metric(p);
}

Tensor333 ModelSpace::frame_christoffels(const Vec3& p, double h) const {
  Tensor333 g;
  if (tau_ != 0.0) {
    const double s = sigma();
    // <nabla_{E1}E2,E3> = tau and cyclic-type companions; antisymmetric in
    // (component, field).
    g(2, 0, 1) = tau_;
    g(1, 0, 2) = -tau_;
    g(2, 1, 0) = -tau_;
    g(0, 1, 2) = tau_;
    g(0, 2, 1) = tau_ - s;
    g(1, 2, 0) = -(tau_ - s);
    return g;
  }

  // tau = 0: Koszul formula on the frame fields, brackets by central
  // finite differences of the frame matrix columns.
  Mat3 jac[3];  // jac[k] = d(E_k components)/d(x,y,z)
  for (int d = 0; d < 3; ++d) {
    Vec3 pp = p, pm = p;
    pp[d] += h;
    pm[d] -= h;
    const Mat3 bp = frame(pp), bm = frame(pm);
    for (int k = 0; k < 3; ++k)
      for (int r = 0; r < 3; ++r) {
        jac[k](r, d) = (bp(r, k) - bm(r, k)) / (2.0 * h);
      }
  }
  const Mat3 b = frame(p);
  const Mat3 gmat = metric(p);
  Vec3 br[3][3];  // [E_i, E_j] in coordinate components
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      br[i][j] = jac[j] * b.col(i) - jac[i] * b.col(j);
  // 2 <nabla_{E_b} E_c, E_a> =
  //   <[E_b,E_c],E_a> - <[E_b,E_a],E_c> - <[E_c,E_a],E_b>
  auto ip = [&](const Vec3& x, int k) { return x.dot(gmat * b.col(k)); };
  Tensor333 out;
  for (int a = 0; a < 3; ++a)
    for (int bdir = 0; bdir < 3; ++bdir)
      for (int c = 0; c < 3; ++c)
        out(a, bdir, c) = 0.5 * (ip(br[bdir][c], a) - ip(br[bdir][a], c) -
                                 ip(br[c][a], bdir));
  return out;
}

Tensor333 ModelSpace::coordinate_christoffels(const Vec3& p, double h) const {
  Mat3 dg[3];
  for (int d = 0; d < 3; ++d) {
    Vec3 pp = p, pm = p;
    pp[d] += h;
    pm[d] -= h;
    dg[d] = (metric(pp) - metric(pm)) / (2.0 * h);
  }
  const Mat3 ginv = metric(p).inverse();
  Tensor333 out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int d = 0; d < 3; ++d)
          s += ginv(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
        out(a, b, c) = 0.5 * s;
      }
  return out;
}

double ModelSpace::curvature(const Vec3& p, const AmbientVector& X,
                             const AmbientVector& Y, const AmbientVector& Z,
                             const AmbientVector& W) const {
  if (X.basis != Y.basis || X.basis != Z.basis || X.basis != W.basis)
    throw BasisMismatch("curvature: all four vectors must share a basis tag");
  const Vec3 x = frame_comps(*this, p, X), y = frame_comps(*this, p, Y),
             z = frame_comps(*this, p, Z), w = frame_comps(*this, p, W);
  // <R(X,Y)Z,W> = (kappa-3tau^2) <R0(X,Y)Z,W> + (kappa-4tau^2) <R1(xi;...)Z,W>
  // with xi = E3, R0(X,Y)Z = <X,Z>Y - <Y,Z>X.
  const double xz = x.dot(z), yz = y.dot(z), xw = x.dot(w), yw = y.dot(w);
  const double x3 = x.z(), y3 = y.z(), z3 = z.z(), w3 = w.z();
  const double r0 = xz * yw - yz * xw;
  const double r1 = y3 * z3 * xw + yz * x3 * w3 - xz * y3 * w3 - x3 * z3 * yw;
  return (kappa_ - 3.0 * tau_ * tau_) * r0 + aniso() * r1;
}

AmbientVector ModelSpace::cross(const Vec3& p, const AmbientVector& X,
                                const AmbientVector& Y) const {
  const Vec3 x = frame_comps(*this, p, X), y = frame_comps(*this, p, Y);
  return frame_vector(x.cross(y));
}

double ModelSpace::inner(const Vec3& p, const AmbientVector& X,
                         const AmbientVector& Y) const {
  if (X.basis == Basis::Coordinate && Y.basis == Basis::Coordinate)
    return X.components.dot(metric(p) * Y.components);
  const Vec3 x = frame_comps(*this, p, X), y = frame_comps(*this, p, Y);
  return x.dot(y);
}

AmbientVector ModelSpace::to_frame(const Vec3& p, const AmbientVector& X) const {
  if (X.basis == Basis::Frame) return X;
  return frame_vector(frame_inverse(p) * X.components);
}

AmbientVector ModelSpace::to_coordinate(const Vec3& p,
                                        const AmbientVector& X) const {
  if (X.basis == Basis::Coordinate) return X;
  return coordinate_vector(frame(p) * X.components);
}

}  // namespace ektau
