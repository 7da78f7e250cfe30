#include "ektau/fundamental_data.hpp"

#include <cmath>
#include <sstream>

namespace ektau {

namespace {

struct PointData {
  Vec3 pos;
  Vec3 x1, x2;    // dphi(e1), dphi(e2) in frame components
  Vec3 n_frame;   // unit normal, frame components
  Vec3 n_coord;   // unit normal, coordinate components
  Vec3 phi_u, phi_v;  // coordinate components
  Mat2 gmat;
  TangentFrame tf;
};

// Evaluates position, tangent frame and normal at (u,v).
PointData eval_point(const ModelSpace& m, const SurfacePatch& patch, double u,
                     double v, double eps_imm, double frame_rotation) {
  PointData d;
  d.pos = patch.position(u, v);
  patch.derivatives(u, v, d.phi_u, d.phi_v);
  const Mat3 binv = m.frame_inverse(d.pos);
  const Vec3 xu = binv * d.phi_u;
  const Vec3 xv = binv * d.phi_v;
  d.gmat << xu.dot(xu), xu.dot(xv), xu.dot(xv), xv.dot(xv);
  const double det = d.gmat.determinant();
  if (!(det > eps_imm)) {
    std::ostringstream os;
    os << "fundamental_data: degenerate induced metric at (u,v)=(" << u << ","
       << v << "), det g = " << det;
    throw std::runtime_error(os.str());
  }
  const double g11 = d.gmat(0, 0), g12 = d.gmat(0, 1);
  const double a = 1.0 / std::sqrt(g11);
  const double c = std::sqrt(g11 / det);
  const double b = -(g12 / g11) * c;
  d.tf.P << a, b, 0.0, c;
  if (frame_rotation != 0.0) d.tf.P = d.tf.P * rotation2(frame_rotation);
  const double pd = d.tf.P.determinant();
  d.tf.Pinv << d.tf.P(1, 1) / pd, -d.tf.P(0, 1) / pd, -d.tf.P(1, 0) / pd,
      d.tf.P(0, 0) / pd;
  d.x1 = d.tf.P(0, 0) * xu + d.tf.P(1, 0) * xv;
  d.x2 = d.tf.P(0, 1) * xu + d.tf.P(1, 1) * xv;
  d.n_frame = d.x1.cross(d.x2);
  d.n_coord = m.frame(d.pos) * d.n_frame;
  return d;
}

Vec3 covariant_term(const Tensor333& gamma, const Vec3& x, const Vec3& y) {
  Vec3 out = Vec3::Zero();
  for (int a = 0; a < 3; ++a) {
    double s = 0.0;
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) s += gamma(a, b, c) * x[b] * y[c];
    out[a] = s;
  }
  return out;
}

}  // namespace

QuadrupleField fundamental_data(const SurfacePatch& patch, const GridSpec& grid,
                                const ExtractionOptions& opts) {
  const ModelSpace& m = patch.model();
  QuadrupleField q;
  q.kappa = m.kappa();
  q.tau = m.tau();
  q.frame_rotation = opts.frame_rotation;
  q.resize(grid);

  std::vector<PointData> pts(grid.size());
  for (int j = 0; j < grid.n_v; ++j)
    for (int i = 0; i < grid.n_u; ++i) {
      PointData d = eval_point(m, patch, grid.u(i), grid.v(j), opts.eps_imm,
                               opts.frame_rotation);
      const int k = grid.idx(i, j);
      q.g[k] = d.gmat;
      q.T[k] << d.x1.z(), d.x2.z();
      q.nu[k] = d.n_frame.z();
      pts[k] = std::move(d);
    }

  // Shape operator: S_jk = -<nabla_{e_k} N, dphi(e_j)>, with the derivative
  // of the normal field taken in coordinates and corrected by the
  // coordinate Christoffels.
  const bool pointwise = patch.pointwise();
  const double h = opts.h_amb;
  double asym = 0.0;
  for (int j = 0; j < grid.n_v; ++j)
    for (int i = 0; i < grid.n_u; ++i) {
      const int k = grid.idx(i, j);
      const PointData& d = pts[k];

      Vec3 dn_du, dn_dv;
      if (pointwise) {
        const double u = grid.u(i), v = grid.v(j);
        auto normal_at = [&](double uu, double vv) {
          return eval_point(m, patch, uu, vv, opts.eps_imm, 0.0).n_coord;
        };
        // 4th-order central differences of the normal field.
        dn_du = (-normal_at(u + 2 * h, v) + 8.0 * normal_at(u + h, v) -
                 8.0 * normal_at(u - h, v) + normal_at(u - 2 * h, v)) /
                (12.0 * h);
        dn_dv = (-normal_at(u, v + 2 * h) + 8.0 * normal_at(u, v + h) -
                 8.0 * normal_at(u, v - h) + normal_at(u, v - 2 * h)) /
                (12.0 * h);
      } else {
        // Grid stencils of the sampled normal field (4th order).
        auto stencil_d = [&](bool along_u) {
          const int n = along_u ? grid.n_u : grid.n_v;
          const int pos = along_u ? i : j;
          const int base = std::min(std::max(pos - 2, 0), n - 5);
          static const double tbl[5][5] = {
              {-25. / 12, 4., -3., 4. / 3, -1. / 4},
              {-1. / 4, -5. / 6, 3. / 2, -1. / 2, 1. / 12},
              {1. / 12, -2. / 3, 0., 2. / 3, -1. / 12},
              {-1. / 12, 1. / 2, -3. / 2, 5. / 6, 1. / 4},
              {1. / 4, -4. / 3, 3., -4., 25. / 12}};
          Vec3 acc = Vec3::Zero();
          for (int t = 0; t < 5; ++t) {
            const int ii = along_u ? base + t : i;
            const int jj = along_u ? j : base + t;
            acc += tbl[pos - base][t] * pts[grid.idx(ii, jj)].n_coord;
          }
          return Vec3(acc / (along_u ? grid.du() : grid.dv()));
        };
        dn_du = stencil_d(true);
        dn_dv = stencil_d(false);
      }

      const Tensor333 gamma = m.coordinate_christoffels(d.pos, h);
      const Vec3 cov_u = dn_du + covariant_term(gamma, d.phi_u, d.n_coord);
      const Vec3 cov_v = dn_dv + covariant_term(gamma, d.phi_v, d.n_coord);
      const Mat3 binv = m.frame_inverse(d.pos);
      const Vec3 cu = binv * cov_u;  // nabla_{du} N, frame components
      const Vec3 cv = binv * cov_v;
      const Vec3 c1 = d.tf.P(0, 0) * cu + d.tf.P(1, 0) * cv;
      const Vec3 c2 = d.tf.P(0, 1) * cu + d.tf.P(1, 1) * cv;

      Mat2 s;
      s << -c1.dot(d.x1), -c2.dot(d.x1), -c1.dot(d.x2), -c2.dot(d.x2);
      asym = std::max(asym, std::abs(s(0, 1) - s(1, 0)));
      q.S[k] = 0.5 * (s + s.transpose());
    }
  q.max_S_asymmetry = asym;
  return q;
}

QuadrupleField fundamental_data(const SurfacePatch& patch, int n_u, int n_v,
                                const ExtractionOptions& opts) {
  GridSpec g = patch.extent();
  g.n_u = n_u;
  g.n_v = n_v;
  return fundamental_data(patch, g, opts);
}

std::vector<double> mean_curvature(const QuadrupleField& q) {
  std::vector<double> h(q.grid.size());
  for (int k = 0; k < q.grid.size(); ++k) h[k] = 0.5 * q.S[k].trace();
  return h;
}

}  // namespace ektau
