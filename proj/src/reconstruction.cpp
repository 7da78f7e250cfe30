#include "ektau/reconstruction.hpp"

#include <cmath>
#include <sstream>

#include "ektau/compatibility.hpp"

namespace ektau {

namespace {

const double kStencil5[5][5] = {{-25. / 12, 4., -3., 4. / 3, -1. / 4},
                                {-1. / 4, -5. / 6, 3. / 2, -1. / 2, 1. / 12},
                                {1. / 12, -2. / 3, 0., 2. / 3, -1. / 12},
                                {-1. / 12, 1. / 2, -3. / 2, 5. / 6, 1. / 4},
                                {1. / 4, -4. / 3, 3., -4., 25. / 12}};

// 4th-order first derivative of a grid scalar field along u or v.
double deriv4(const std::vector<double>& f, const GridSpec& g, int i, int j,
              bool along_u) {
  const int n = along_u ? g.n_u : g.n_v;
  const int pos = along_u ? i : j;
  if (n >= 5) {
    const int base = std::min(std::max(pos - 2, 0), n - 5);
    double acc = 0.0;
    for (int t = 0; t < 5; ++t)
      acc += kStencil5[pos - base][t] *
             f[along_u ? g.idx(base + t, j) : g.idx(i, base + t)];
    return acc / (along_u ? g.du() : g.dv());
  }
  // Small grids: central/one-sided 2nd order.
  auto at = [&](int p) { return f[along_u ? g.idx(p, j) : g.idx(i, p)]; };
  const double h = along_u ? g.du() : g.dv();
  if (pos > 0 && pos < n - 1) return (at(pos + 1) - at(pos - 1)) / (2.0 * h);
  if (pos == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
  return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
}

}  // namespace

ConnectionForms connection_forms(const QuadrupleField& q) {
  const GridSpec& gs = q.grid;
  const int n = gs.size();
  ConnectionForms cf;
  cf.grid = gs;
  cf.omega_e1.assign(n, Mat3::Zero());
  cf.omega_e2.assign(n, Mat3::Zero());
  cf.frame.resize(n);

  std::vector<double> E(n), F(n), G(n), P[2][2];
  for (auto& row : P)
    for (auto& fld : row) fld.assign(n, 0.0);
  for (int j = 0; j < gs.n_v; ++j)
    for (int i = 0; i < gs.n_u; ++i) {
      const int k = gs.idx(i, j);
      E[k] = q.g[k](0, 0);
      F[k] = q.g[k](0, 1);
      G[k] = q.g[k](1, 1);
      cf.frame[k] = q.frame_at(i, j);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) P[a][b][k] = cf.frame[k].P(a, b);
    }

  for (int j = 0; j < gs.n_v; ++j)
    for (int i = 0; i < gs.n_u; ++i) {
      const int k = gs.idx(i, j);

      // Christoffel symbols of g in parameter coordinates.
      double dg[2][2][2];  // dg[c][a][b] = d_c g_ab
      const double gu[3] = {deriv4(E, gs, i, j, true),
                            deriv4(F, gs, i, j, true),
                            deriv4(G, gs, i, j, true)};
      const double gv[3] = {deriv4(E, gs, i, j, false),
                            deriv4(F, gs, i, j, false),
                            deriv4(G, gs, i, j, false)};
      dg[0][0][0] = gu[0];
      dg[0][0][1] = dg[0][1][0] = gu[1];
      dg[0][1][1] = gu[2];
      dg[1][0][0] = gv[0];
      dg[1][0][1] = dg[1][1][0] = gv[1];
      dg[1][1][1] = gv[2];
      const Mat2& gmat = q.g[k];
      const Mat2 ginv = gmat.inverse();
      double chr[2][2][2];  // chr[c][a][b] = Gamma^c_{ab}
      for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            double s = 0.0;
            for (int d = 0; d < 2; ++d)
              s += ginv(c, d) * (dg[a][d][b] + dg[b][d][a] - dg[d][a][b]);
            chr[c][a][b] = 0.5 * s;
          }

      // omega^2_1(e_k) = g(nabla_{e_k} e1, e2), with e1 = P(:,0) as a field.
      const Mat2& Pk = cf.frame[k].P;
      double w[2];
      for (int col = 0; col < 2; ++col) {
        double nab[2];
        for (int c = 0; c < 2; ++c) {
          nab[c] = Pk(0, col) * deriv4(P[c][0], gs, i, j, true) +
                   Pk(1, col) * deriv4(P[c][0], gs, i, j, false);
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              nab[c] += Pk(a, col) * Pk(b, 0) * chr[c][a][b];
        }
        w[col] = (nab[0] * gmat(0, 0) + nab[1] * gmat(1, 0)) * Pk(0, 1) +
                 (nab[0] * gmat(0, 1) + nab[1] * gmat(1, 1)) * Pk(1, 1);
      }

      for (int col = 0; col < 2; ++col) {
        Mat3& om = (col == 0) ? cf.omega_e1[k] : cf.omega_e2[k];
        om(1, 0) = w[col];
        om(0, 1) = -w[col];
        om(2, 0) = q.S[k](0, col);
        om(2, 1) = q.S[k](1, col);
        om(0, 2) = -q.S[k](0, col);
        om(1, 2) = -q.S[k](1, col);
      }
    }
  return cf;
}

std::array<Mat3, 2> ambient_correction(const ModelSpace& m, const Mat3& Z,
                                       const Vec3& p, double h_amb) {
  if ((Z.transpose() * Z - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-6)
    throw std::invalid_argument("ambient_correction: Z is not orthogonal");
  const Tensor333 gam = m.frame_christoffels(p, h_amb);
  std::array<Mat3, 2> L = {Mat3::Zero(), Mat3::Zero()};
  for (int d = 0; d < 3; ++d)
    for (int g = 0; g < 3; ++g)
      for (int e = 0; e < 3; ++e) {
        const double val = gam(d, g, e);
        if (val == 0.0) continue;
        for (int k = 0; k < 2; ++k) {
          const double zg = Z(g, k) * val;
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) L[k](a, b) += Z(e, a) * zg * Z(d, b);
        }
      }
  return L;
}

std::array<Mat3, 2> ambient_correction_closed(const ModelSpace& m, double t1,
                                              double t2, double t3) {
  const double tau = m.tau();
  const double s = m.sigma();  // throws for tau = 0
  Mat3 K;
  K << 0, -t3, t2, t3, 0, -t1, -t2, t1, 0;
  Mat3 M1, M2;
  M1 << 0, 0, 0, 0, 0, tau, 0, -tau, 0;
  M2 << 0, 0, -tau, 0, 0, 0, tau, 0, 0;
  std::array<Mat3, 2> L;
  L[0] = (2.0 * tau - s) * t1 * K + M1;
  L[1] = (2.0 * tau - s) * t2 * K + M2;
  return L;
}

Mat3 complete_frame(const Vec2& T, double nu, const Vec3& seed) {
  Vec3 r3(T(0), T(1), nu);
  const double n3 = r3.norm();
  if (std::abs(n3 - 1.0) > 1e-6)
    throw std::invalid_argument("complete_frame: (T, nu) is not unit");
  r3 /= n3;
  Vec3 r1 = seed - seed.dot(r3) * r3;
  if (r1.norm() < 0.1) {
    const Vec3 alt(0, 1, 0);
    r1 = alt - alt.dot(r3) * r3;
  }
  r1.normalize();
  const Vec3 r2 = r3.cross(r1);
  Mat3 A;
  A.row(0) = r1;
  A.row(1) = r2;
  A.row(2) = Vec3(T(0), T(1), nu);
  return A;
}

namespace {

Mat3 project_so3(const Mat3& A) {
  // Polar factor via the symmetric inverse square root of A^T A.
  Eigen::SelfAdjointEigenSolver<Mat3> es(A.transpose() * A);
  const Vec3 lam = es.eigenvalues();
  Mat3 inv_sqrt = Mat3::Zero();
  for (int k = 0; k < 3; ++k) {
    if (lam(k) <= 0.0)
      throw std::runtime_error("project_so3: frame matrix degenerated");
    inv_sqrt += es.eigenvectors().col(k) * es.eigenvectors().col(k).transpose() /
                std::sqrt(lam(k));
  }
  return A * inv_sqrt;
}

// Cubic Lagrange interpolation of grid fields along one grid line.
struct LineInterp {
  const ConnectionForms& cf;
  int fixed;      // fixed index (j for a u-line, i for a v-line)
  bool along_u;   // line direction
  double origin;  // parameter value of node 0
  double h;       // grid step along the line
  int n;          // node count along the line

  int node_index(int t) const {
    return along_u ? cf.grid.idx(t, fixed) : cf.grid.idx(fixed, t);
  }

  void weights(double x, int& base, double wgt[4], int& m) const {
    const double srel = (x - origin) / h;
    m = std::min(4, n);
    base = std::min(std::max(static_cast<int>(std::floor(srel)) - 1, 0), n - m);
    for (int a = 0; a < m; ++a) {
      double w = 1.0;
      for (int b = 0; b < m; ++b) {
        if (a == b) continue;
        w *= (srel - (base + b)) / static_cast<double>(a - b);
      }
      wgt[a] = w;
    }
  }

  void eval(double x, Mat3& om1, Mat3& om2, Mat2& P) const {
    int base, m;
    double w[4];
    weights(x, base, w, m);
    om1.setZero();
    om2.setZero();
    P.setZero();
    for (int a = 0; a < m; ++a) {
      const int k = node_index(base + a);
      om1 += w[a] * cf.omega_e1[k];
      om2 += w[a] * cf.omega_e2[k];
      P += w[a] * cf.frame[k].P;
    }
  }
};

struct EdgeContext {
  const ModelSpace* m;
  const Tensor333* gamma_const;  // non-null for tau != 0
  double h_amb;
  const LineInterp* line;
  bool dir_u;  // true: moving along u, false: along v
  int cur_i, cur_j;
};

void rhs(const EdgeContext& ctx, double t, const Mat3& A, const Vec3& f,
         Mat3& dA, Vec3& df) {
  Mat3 om1, om2;
  Mat2 P;
  ctx.line->eval(t, om1, om2, P);
  const double detP = P.determinant();
  // Coframe values on the moving direction.
  double w1, w2;
  if (ctx.dir_u) {
    w1 = P(1, 1) / detP;
    w2 = -P(1, 0) / detP;
  } else {
    w1 = -P(0, 1) / detP;
    w2 = P(0, 0) / detP;
  }

  const ModelSpace& m = *ctx.m;
  if (!m.in_domain(f))
    throw ChartExit("integrate_frame: position left the chart", ctx.cur_i,
                    ctx.cur_j);

  // L(A) against the moving direction.
  Mat3 Lsum = Mat3::Zero();
  {
    const Tensor333 local =
        ctx.gamma_const ? *ctx.gamma_const : m.frame_christoffels(f, ctx.h_amb);
    for (int d = 0; d < 3; ++d)
      for (int g = 0; g < 3; ++g)
        for (int e = 0; e < 3; ++e) {
          const double val = local(d, g, e);
          if (val == 0.0) continue;
          const double zg = (A(g, 0) * w1 + A(g, 1) * w2) * val;
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) Lsum(a, b) += A(e, a) * zg * A(d, b);
        }
  }

  dA = A * (om1 * w1 + om2 * w2 + Lsum);
  df = m.frame(f) * (A * Vec3(w1, w2, 0.0));
}

}  // namespace

IntegrationResult integrate_frame(const QuadrupleField& q, const ModelSpace& m,
                                  const Mat3& A0, const Vec3& x0,
                                  const IntegrationOptions& opts) {
  const GridSpec& gs = q.grid;
  if ((A0.transpose() * A0 - Mat3::Identity()).cwiseAbs().maxCoeff() >
      1e3 * opts.a0_tol)
    throw std::invalid_argument("integrate_frame: A0 is not orthogonal");
  if (A0.determinant() < 0.0)
    throw std::invalid_argument("integrate_frame: A0 must be direct");
  {
    const Vec3 want(q.T[gs.idx(0, 0)](0), q.T[gs.idx(0, 0)](1),
                    q.nu[gs.idx(0, 0)]);
    if ((A0.row(2).transpose() - want).cwiseAbs().maxCoeff() > opts.a0_tol)
      throw std::invalid_argument(
          "integrate_frame: last row of A0 must equal (T1,T2,nu) at the "
          "start corner");
  }
  m.require_in_domain(x0);
  if (opts.check_compat) {
    const double tol =
        opts.compat_tol > 0.0 ? opts.compat_tol : default_tol(gs);
    const CompatReport rep = verify(q, m, tol);
    if (!rep.pass) {
      std::ostringstream os;
      os << "integrate_frame: quadruple fails the compatibility equations "
            "(worst residual "
         << rep.worst() << ", tol " << tol << ")";
      throw std::invalid_argument(os.str());
    }
  }

  const ConnectionForms cf = connection_forms(q);
  Tensor333 gamma_const;
  const bool constant_gamma = m.tau() != 0.0;
  if (constant_gamma) gamma_const = m.frame_christoffels(Vec3::Zero());

  IntegrationResult out;
  out.grid = gs;
  out.states.assign(gs.size(), FrameState{});
  out.states[gs.idx(0, 0)] = {A0, x0};

  double drift = 0.0;

  auto do_edge = [&](int i, int j, bool dir_u) {
    // Integrates from node (i,j) to its successor along dir.
    LineInterp line{cf,
                    dir_u ? j : i,
                    dir_u,
                    dir_u ? gs.u0 : gs.v0,
                    dir_u ? gs.du() : gs.dv(),
                    dir_u ? gs.n_u : gs.n_v};
    EdgeContext ctx{&m, constant_gamma ? &gamma_const : nullptr, opts.h_amb,
                    &line, dir_u, i, j};
    const FrameState& from = out.states[gs.idx(i, j)];
    Mat3 A = from.A;
    Vec3 f = from.f;
    const double t0 = dir_u ? gs.u(i) : gs.v(j);
    const double h = (dir_u ? gs.du() : gs.dv()) / opts.substeps;
    for (int s = 0; s < opts.substeps; ++s) {
      const double t = t0 + s * h;
      Mat3 k1A, k2A, k3A, k4A;
      Vec3 k1f, k2f, k3f, k4f;
      rhs(ctx, t, A, f, k1A, k1f);
      rhs(ctx, t + 0.5 * h, A + 0.5 * h * k1A, f + 0.5 * h * k1f, k2A, k2f);
      rhs(ctx, t + 0.5 * h, A + 0.5 * h * k2A, f + 0.5 * h * k2f, k3A, k3f);
      rhs(ctx, t + h, A + h * k3A, f + h * k3f, k4A, k4f);
      A += (h / 6.0) * (k1A + 2.0 * k2A + 2.0 * k3A + k4A);
      f += (h / 6.0) * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
    }
    drift = std::max(
        drift,
        (A.transpose() * A - Mat3::Identity()).norm());
    A = project_so3(A);
    const int ni = dir_u ? i + 1 : i;
    const int nj = dir_u ? j : j + 1;
    if (!m.in_domain(f))
      throw ChartExit("integrate_frame: position left the chart", i, j);
    out.states[gs.idx(ni, nj)] = {A, f};
  };

  if (opts.order == SweepOrder::RowThenColumns) {
    for (int i = 0; i < gs.n_u - 1; ++i) do_edge(i, 0, true);
    for (int i = 0; i < gs.n_u; ++i)
      for (int j = 0; j < gs.n_v - 1; ++j) do_edge(i, j, false);
  } else {
    for (int j = 0; j < gs.n_v - 1; ++j) do_edge(0, j, false);
    for (int j = 0; j < gs.n_v; ++j)
      for (int i = 0; i < gs.n_u - 1; ++i) do_edge(i, j, true);
  }

  out.max_orthogonality_drift = drift;
  double row_err = 0.0;
  for (int j = 0; j < gs.n_v; ++j)
    for (int i = 0; i < gs.n_u; ++i) {
      const int k = gs.idx(i, j);
      const Vec3 want(q.T[k](0), q.T[k](1), q.nu[k]);
      row_err = std::max(row_err, (out.states[k].A.row(2).transpose() - want)
                                      .cwiseAbs()
                                      .maxCoeff());
    }
  out.max_last_row_error = row_err;
  return out;
}

std::shared_ptr<SampledPatch> reconstruct(const QuadrupleField& q,
                                          const ModelSpace& m, const Mat3& A0,
                                          const Vec3& x0,
                                          const IntegrationOptions& opts) {
  const IntegrationResult res = integrate_frame(q, m, A0, x0, opts);
  std::vector<Vec3> pts(q.grid.size());
  for (int k = 0; k < q.grid.size(); ++k) pts[k] = res.states[k].f;
  return std::make_shared<SampledPatch>(m, q.grid, std::move(pts));
}

std::shared_ptr<SampledPatch> reconstruct(const QuadrupleField& q,
                                          const ModelSpace& m,
                                          const IntegrationOptions& opts) {
  const int k0 = q.grid.idx(0, 0);
  const Mat3 A0 = complete_frame(q.T[k0], q.nu[k0]);
  return reconstruct(q, m, A0, Vec3::Zero(), opts);
}

}  // namespace ektau
