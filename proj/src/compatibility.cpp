#include "ektau/compatibility.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace ektau {

namespace {

// Central first difference of a scalar grid field.
struct FieldDiff {
  const std::vector<double>& f;
  const GridSpec& g;
  double du(int i, int j) const {
    return (f[g.idx(i + 1, j)] - f[g.idx(i - 1, j)]) / (2.0 * g.du());
  }
  double dv(int i, int j) const {
    return (f[g.idx(i, j + 1)] - f[g.idx(i, j - 1)]) / (2.0 * g.dv());
  }
  double duu(int i, int j) const {
    return (f[g.idx(i + 1, j)] - 2.0 * f[g.idx(i, j)] + f[g.idx(i - 1, j)]) /
           (g.du() * g.du());
  }
  double dvv(int i, int j) const {
    return (f[g.idx(i, j + 1)] - 2.0 * f[g.idx(i, j)] + f[g.idx(i, j - 1)]) /
           (g.dv() * g.dv());
  }
  double duv(int i, int j) const {
    return (f[g.idx(i + 1, j + 1)] - f[g.idx(i + 1, j - 1)] -
            f[g.idx(i - 1, j + 1)] + f[g.idx(i - 1, j - 1)]) /
           (4.0 * g.du() * g.dv());
  }
};

double det3(double a11, double a12, double a13, double a21, double a22,
            double a23, double a31, double a32, double a33) {
  return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
         a13 * (a21 * a32 - a22 * a31);
}

}  // namespace

ResidualFields compat_residuals(const QuadrupleField& q, const ModelSpace& m) {
  const GridSpec& gs = q.grid;
  const int n = gs.size();
  ResidualFields r;
  r.grid = gs;
  r.gauss.assign(n, 0.0);
  r.codazzi.assign(n, Vec2::Zero());
  r.killing_T.assign(n, Mat2::Zero());
  r.killing_nu.assign(n, Vec2::Zero());
  r.unit_norm.assign(n, 0.0);

  const double tau = m.tau();
  const double aniso = m.aniso();

  // Scalar component fields.
  std::vector<double> E(n), F(n), G(n), S11(n), S12(n), S22(n), T1(n), T2(n);
  std::vector<double> w1u(n), w1v(n), w2u(n), w2v(n);  // coframe components
  std::vector<TangentFrame> tf(n);
  for (int k = 0; k < n; ++k) {
    E[k] = q.g[k](0, 0);
    F[k] = q.g[k](0, 1);
    G[k] = q.g[k](1, 1);
    S11[k] = q.S[k](0, 0);
    S12[k] = q.S[k](0, 1);
    S22[k] = q.S[k](1, 1);
    T1[k] = q.T[k](0);
    T2[k] = q.T[k](1);
  }
  for (int j = 0; j < gs.n_v; ++j)
    for (int i = 0; i < gs.n_u; ++i) {
      const int k = gs.idx(i, j);
      tf[k] = q.frame_at(i, j);
      w1u[k] = tf[k].Pinv(0, 0);
      w1v[k] = tf[k].Pinv(0, 1);
      w2u[k] = tf[k].Pinv(1, 0);
      w2v[k] = tf[k].Pinv(1, 1);
    }

  FieldDiff dE{E, gs}, dF{F, gs}, dG{G, gs};
  FieldDiff dS11{S11, gs}, dS12{S12, gs}, dS22{S22, gs};
  FieldDiff dT1{T1, gs}, dT2{T2, gs}, dNu{q.nu, gs};
  FieldDiff dW1u{w1u, gs}, dW1v{w1v, gs}, dW2u{w2u, gs}, dW2v{w2v, gs};

  for (int j = 0; j < gs.n_v; ++j)
    for (int i = 0; i < gs.n_u; ++i) {
      const int k = gs.idx(i, j);
      r.unit_norm[k] =
          std::abs(T1[k] * T1[k] + T2[k] * T2[k] + q.nu[k] * q.nu[k] - 1.0);
      if (!r.interior(i, j)) continue;

      // Gauss curvature of g by the Brioschi formula.
      const double e = E[k], f = F[k], g = G[k];
      const double eu = dE.du(i, j), ev = dE.dv(i, j);
      const double fu = dF.du(i, j), fv = dF.dv(i, j);
      const double gu = dG.du(i, j), gv = dG.dv(i, j);
      const double evv = dE.dvv(i, j), guu = dG.duu(i, j), fuv = dF.duv(i, j);
      const double det = e * g - f * f;
      const double m1 =
          det3(-0.5 * evv + fuv - 0.5 * guu, 0.5 * eu, fu - 0.5 * ev,  //
               fv - 0.5 * gu, e, f,                                    //
               0.5 * gv, f, g);
      const double m2 = det3(0.0, 0.5 * ev, 0.5 * gu,  //
                             0.5 * ev, e, f,           //
                             0.5 * gu, f, g);
      const double K = (m1 - m2) / (det * det);
      const double detS = S11[k] * S22[k] - S12[k] * S12[k];
      r.gauss[k] =
          K - detS - tau * tau - aniso * q.nu[k] * q.nu[k];

      // Directional derivatives along the tangent frame.
      const Mat2& P = tf[k].P;
      auto ddir = [&](const FieldDiff& d, int col) {
        return P(0, col) * d.du(i, j) + P(1, col) * d.dv(i, j);
      };

      // omega^2_1(e_k) from the first structure equation:
      // omega^2_1(e_1) = d omega^1(e1,e2), omega^2_1(e_2) = d omega^2(e1,e2).
      const double detP = P.determinant();
      const double w1 = (dW1v.du(i, j) - dW1u.dv(i, j)) * detP;
      const double w2 = (dW2v.du(i, j) - dW2u.dv(i, j)) * detP;

      // Codazzi, (X,Y) = (e1,e2).
      const double c1 = ddir(dS12, 0) - ddir(dS11, 1) +
                        w1 * (S11[k] - S22[k]) + 2.0 * w2 * S12[k] -
                        aniso * q.nu[k] * T2[k];
      const double c2 = ddir(dS22, 0) - ddir(dS12, 1) + 2.0 * w1 * S12[k] -
                        w2 * (S11[k] - S22[k]) + aniso * q.nu[k] * T1[k];
      r.codazzi[k] << c1, c2;

      // nabla_{e_k} T = nu (S e_k - tau J e_k).
      const double jcol[2][2] = {{0.0, -1.0}, {1.0, 0.0}};  // J(row, col)
      const double wk[2] = {w1, w2};
      for (int col = 0; col < 2; ++col) {
        const double st1 = q.S[k](0, col) - tau * jcol[0][col];
        const double st2 = q.S[k](1, col) - tau * jcol[1][col];
        r.killing_T[k](0, col) =
            ddir(dT1, col) - T2[k] * wk[col] - q.nu[k] * st1;
        r.killing_T[k](1, col) =
            ddir(dT2, col) + T1[k] * wk[col] - q.nu[k] * st2;
        r.killing_nu[k](col) = ddir(dNu, col) + st1 * T1[k] + st2 * T2[k];
      }
    }
  return r;
}

namespace {

struct Accum {
  double max_abs = 0.0;
  double sum_sq = 0.0;
  long count = 0;
  void add(double x) {
    max_abs = std::max(max_abs, std::abs(x));
    sum_sq += x * x;
    ++count;
  }
  EquationStat stat() const {
    return {max_abs, count ? std::sqrt(sum_sq / count) : 0.0};
  }
};

}  // namespace

CompatReport verify(const QuadrupleField& q, const ModelSpace& m, double tol) {
  const ResidualFields r = compat_residuals(q, m);
  Accum ag, ac, akt, akn, an;
  const GridSpec& gs = q.grid;
  for (int j = 1; j < gs.n_v - 1; ++j)
    for (int i = 1; i < gs.n_u - 1; ++i) {
      const int k = gs.idx(i, j);
      ag.add(r.gauss[k]);
      ac.add(r.codazzi[k](0));
      ac.add(r.codazzi[k](1));
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) akt.add(r.killing_T[k](a, b));
      akn.add(r.killing_nu[k](0));
      akn.add(r.killing_nu[k](1));
      an.add(r.unit_norm[k]);
    }
  CompatReport rep;
  rep.kappa = m.kappa();
  rep.tau = m.tau();
  rep.grid = gs;
  rep.gauss = ag.stat();
  rep.codazzi = ac.stat();
  rep.killing_T = akt.stat();
  rep.killing_nu = akn.stat();
  rep.unit_norm = an.stat();
  rep.tol = tol;
  rep.pass = rep.worst() < tol;
  return rep;
}

double CompatReport::worst() const {
  return std::max({gauss.max_abs, codazzi.max_abs, killing_T.max_abs,
                   killing_nu.max_abs, unit_norm.max_abs});
}

double default_tol(const GridSpec& grid) {
  // 1e-4 at 81x81 over the same extent, scaled with the squared step.
  const double r = std::max(80.0 / std::max(grid.n_u - 1, 1),
                            80.0 / std::max(grid.n_v - 1, 1));
  return 1e-4 * r * r;
}

void write_report(std::ostream& os, const CompatReport& r) {
  os << "#compat kappa=" << format_real(r.kappa)
     << " tau=" << format_real(r.tau) << " nu=" << r.grid.n_u
     << " nv=" << r.grid.n_v << "\n";
  auto line = [&](const char* name, const EquationStat& s) {
    os << name << ' ' << format_real(s.max_abs) << ' ' << format_real(s.rms)
       << "\n";
  };
  line("gauss", r.gauss);
  line("codazzi", r.codazzi);
  line("killing_T", r.killing_T);
  line("killing_nu", r.killing_nu);
  line("unit_norm", r.unit_norm);
  os << (r.pass ? "PASS" : "FAIL") << " tol=" << format_real(r.tol) << "\n";
}

std::string report_to_string(const CompatReport& r) {
  std::ostringstream os;
  write_report(os, r);
  return os.str();
}

}  // namespace ektau
