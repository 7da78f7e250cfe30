// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails its tolerance or runtime budget.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "ektau/compatibility.hpp"
#include "ektau/correspondence.hpp"
#include "ektau/fundamental_data.hpp"
#include "ektau/reconstruction.hpp"
#include "ektau/surface_patch.hpp"
#include "oracles.hpp"

using namespace ektau;

namespace {

int failures = 0;

struct Criterion {
  std::string detail;
  double budget_s;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  bool ok = true;

  explicit Criterion(double budget) : budget_s(budget) {}

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }

  void finish(int index, const std::string& title) {
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (dt >= budget_s) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("over budget");
    }
    std::printf("[%s] criterion %d: %s (%.2f s / %.0f s)%s%s\n",
                ok ? "PASS" : "FAIL", index, title.c_str(), dt, budget_s,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", x);
  return b;
}

QuadrupleField catalog_quadruple(const std::string& name, int n) {
  auto p = catalog(name, (name == "tube" || name == "sphere") ? 1.0 : 0.0);
  return fundamental_data(*p, n, n);
}

void criterion1() {
  Criterion c(1.0);
  auto plane = catalog("vertical-plane");
  const QuadrupleField q = fundamental_data(*plane, 41, 41);
  double worst = 0.0;
  Mat2 wantS;
  wantS << 0.0, -0.5, -0.5, 0.0;
  for (int k = 0; k < q.grid.size(); ++k) {
    worst = std::max(worst, std::abs(q.nu[k]));
    worst = std::max(worst, (q.T[k] - Vec2(1, 0)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (q.S[k] - wantS).cwiseAbs().maxCoeff());
  }
  c.require(worst < 1e-10, "plane quadruple dev " + fmt(worst));

  auto [qs, ph] = sister(q, plane->model(), ModelSpace(-1.0, 0.0));
  double worst2 = std::abs(ph.theta - M_PI / 2);
  Mat2 sisterS;
  sisterS << 1.0, 0.0, 0.0, 0.0;
  for (int k = 0; k < q.grid.size(); ++k) {
    worst2 = std::max(worst2, std::abs(qs.nu[k]));
    worst2 = std::max(worst2, (qs.T[k] - Vec2(0, 1)).cwiseAbs().maxCoeff());
    worst2 = std::max(worst2, (qs.S[k] - sisterS).cwiseAbs().maxCoeff());
  }
  c.require(worst2 < 1e-10, "sister quadruple dev " + fmt(worst2));
  c.detail = "worst dev " + fmt(std::max(worst, worst2));
  c.finish(1, "exact reproduction of the vertical plane and its sister");
}

void criterion2() {
  Criterion c(10.0);
  double worst81 = 0.0, ratio_lo = 10.0, ratio_hi = 0.0;
  for (const auto& e : catalog_entries()) {
    const QuadrupleField q81 = catalog_quadruple(e.name, 81);
    const CompatReport r81 = verify(q81, ModelSpace(e.kappa, e.tau), 1e-4);
    worst81 = std::max(worst81, r81.worst());
    if (!r81.pass) c.require(false, e.name + " fails at 1e-4");
    const QuadrupleField q41 = catalog_quadruple(e.name, 41);
    const CompatReport r41 = verify(q41, ModelSpace(e.kappa, e.tau), 1.0);
    if (r41.worst() > 1e-10) {  // above the rounding floor
      const double ratio = r41.worst() / r81.worst();
      ratio_lo = std::min(ratio_lo, ratio);
      ratio_hi = std::max(ratio_hi, ratio);
      c.require(ratio > 3.0 && ratio < 5.0,
                e.name + " convergence ratio " + fmt(ratio));
    }
  }
  c.detail = "worst residual " + fmt(worst81) + ", ratios in [" +
             fmt(ratio_lo) + ", " + fmt(ratio_hi) + "]";
  c.finish(2, "compatibility residuals < 1e-4 at 81x81, O(h^2) convergence");
}

void criterion3() {
  Criterion c(5.0);
  testing::Rng rng(424242);
  const ModelSpace models[4] = {ModelSpace(0.0, 0.5), ModelSpace(4.0, 1.0),
                                ModelSpace(-1.0, 0.5), ModelSpace(-1.0, 0.0)};
  double worst = 0.0;
  for (const ModelSpace& m : models) {
    for (int t = 0; t < 100; ++t) {
      const Vec3 p = rng.point(m);
      const Vec3 X = rng.vec3(), Y = rng.vec3(), Z = rng.vec3(),
                 W = rng.vec3();
      const double closed =
          m.curvature(p, coordinate_vector(X), coordinate_vector(Y),
                      coordinate_vector(Z), coordinate_vector(W));
      const double fd = testing::fd_riemann(m, p, X, Y, Z, W, 1e-3);
      worst = std::max(worst, std::abs(closed - fd));
    }
  }
  c.require(worst < 1e-4, "curvature deviation " + fmt(worst));
  c.detail = "worst deviation " + fmt(worst);
  c.finish(3, "closed-form curvature matches the FD Riemann tensor");
}

void criterion4() {
  Criterion c(1.0);
  testing::Rng rng(5150);
  double worst = 0.0;
  for (const ModelSpace m :
       {ModelSpace(0.0, 0.5), ModelSpace(4.0, 1.0), ModelSpace(-1.0, 0.5)}) {
    for (int t = 0; t < 1000; ++t) {
      const Mat3 Z = rng.so3();
      const auto got = ambient_correction(m, Z, Vec3(0.2, -0.1, 0.7));
      const auto want =
          ambient_correction_closed(m, Z(2, 0), Z(2, 1), Z(2, 2));
      worst = std::max(worst, (got[0] - want[0]).cwiseAbs().maxCoeff());
      worst = std::max(worst, (got[1] - want[1]).cwiseAbs().maxCoeff());
    }
  }
  c.require(worst < 1e-12, "L(Z) deviation " + fmt(worst));
  c.detail = "worst deviation " + fmt(worst);
  c.finish(4, "Christoffel contraction L(Z) equals its closed form");
}

void criterion5() {
  Criterion c(30.0);
  double worst_rt = 0.0, worst_drift = 0.0, worst_holo = 0.0;
  for (const auto& e : catalog_entries()) {
    const QuadrupleField q = catalog_quadruple(e.name, 81);
    const ModelSpace m(e.kappa, e.tau);
    const int k0 = q.grid.idx(0, 0);
    const Mat3 A0 = complete_frame(q.T[k0], q.nu[k0]);
    IntegrationOptions row;
    const IntegrationResult res = integrate_frame(q, m, A0, Vec3::Zero(), row);
    worst_drift = std::max(worst_drift, res.max_orthogonality_drift);

    std::vector<Vec3> pts(q.grid.size());
    for (int k = 0; k < q.grid.size(); ++k) pts[k] = res.states[k].f;
    SampledPatch patch(m, q.grid, std::move(pts));
    const QuadrupleField r = fundamental_data(patch, q.grid);
    double dev = 0.0;
    for (int k = 0; k < q.grid.size(); ++k) {
      dev = std::max(dev, (r.g[k] - q.g[k]).cwiseAbs().maxCoeff());
      dev = std::max(dev, (r.S[k] - q.S[k]).cwiseAbs().maxCoeff());
      dev = std::max(dev, (r.T[k] - q.T[k]).cwiseAbs().maxCoeff());
      dev = std::max(dev, std::abs(r.nu[k] - q.nu[k]));
    }
    worst_rt = std::max(worst_rt, dev);
    c.require(dev < 1e-3, e.name + " round-trip " + fmt(dev));

    IntegrationOptions col;
    col.order = SweepOrder::ColumnThenRows;
    col.check_compat = false;  // same data; already verified above
    const IntegrationResult other =
        integrate_frame(q, m, A0, Vec3::Zero(), col);
    const int far = q.grid.idx(q.grid.n_u - 1, q.grid.n_v - 1);
    const double holo = (res.states[far].A - other.states[far].A).norm();
    worst_holo = std::max(worst_holo, holo);
    c.require(holo < 1e-3, e.name + " holonomy " + fmt(holo));
  }
  c.require(worst_drift < 1e-8, "drift " + fmt(worst_drift));
  c.detail = "round-trip " + fmt(worst_rt) + ", drift " + fmt(worst_drift) +
             ", holonomy " + fmt(worst_holo);
  c.finish(5, "reconstruction round-trip, orthogonality, two-path holonomy");
}

void criterion6() {
  Criterion c(10.0);
  const ModelSpace nil(0.0, 0.5);
  // The twin correspondence assumes exactly constant mean curvature;
  // recenter the extracted trace (scatter ~1e-12) so the hypothesis
  // holds to rounding.
  QuadrupleField q = catalog_quadruple("tube", 41);
  {
    double m0, d0;
    q.mean_curvature_stats(m0, d0);
    for (int k = 0; k < q.grid.size(); ++k) {
      const double d = 0.5 * q.S[k].trace() - m0;
      q.S[k] -= d * Mat2::Identity();
    }
  }
  double mean, dev;
  q.mean_curvature_stats(mean, dev);
  auto [qt, ph] = twin(q, nil, mean);
  double h2, dev2;
  qt.mean_curvature_stats(h2, dev2);
  c.require(std::abs(h2 + mean) < 1e-12, "mean curvature did not negate");
  double worst_unit = 0.0;
  for (int k = 0; k < q.grid.size(); ++k)
    worst_unit = std::max(
        worst_unit, std::abs(qt.T[k].squaredNorm() + qt.nu[k] * qt.nu[k] -
                             (q.T[k].squaredNorm() + q.nu[k] * q.nu[k])));
  c.require(worst_unit < 1e-14, "unit norm drifted " + fmt(worst_unit));

  auto [qtt, ph2] = twin(qt, nil, h2);
  double worst_inv = 0.0;
  for (int k = 0; k < q.grid.size(); ++k) {
    worst_inv =
        std::max(worst_inv, (qtt.S[k] - q.S[k]).cwiseAbs().maxCoeff());
    worst_inv =
        std::max(worst_inv, (qtt.T[k] - q.T[k]).cwiseAbs().maxCoeff());
    worst_inv = std::max(worst_inv, std::abs(qtt.nu[k] - q.nu[k]));
  }
  c.require(worst_inv < 1e-12, "twin involution dev " + fmt(worst_inv));

  testing::Rng rng(1618);
  const Mat2 J = quarter_turn();
  double worst_id = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const double tau = rng.uniform(-2, 2), H = rng.uniform(-2, 2);
    if (tau * tau + H * H < 1e-6) continue;
    const double rot = rng.uniform(-3, 3);
    const std::complex<double> z =
        std::polar(1.0, rot) * std::complex<double>(tau, H);
    const Phase p = phase_angle(tau, H, z.real(), z.imag());
    const Mat2 lhs = p.H2 * Mat2::Identity() - p.tau2 * J;
    const Mat2 rhs =
        rotation2(p.theta) * (p.H1 * Mat2::Identity() - p.tau1 * J);
    worst_id = std::max(worst_id, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  c.require(worst_id < 1e-12, "operator identity dev " + fmt(worst_id));
  c.detail = "involution " + fmt(worst_inv) + ", identity " + fmt(worst_id);
  c.finish(6, "twin involution, H negation, unit norm, operator identity");
}

void criterion7() {
  Criterion c(10.0);
  double worst = 0.0;
  for (const char* name : {"vertical-plane", "nil-z0"}) {
    auto p = catalog(name);
    const QuadrupleField q = fundamental_data(*p, 41, 41);
    const ModelSpace m1 = p->model();
    const ModelSpace m2(-1.0, 0.0);
    auto [qs, ph] = sister(q, m1, m2);
    const ResidualFields r1 = compat_residuals(q, m1);
    const ResidualFields r2 = compat_residuals(qs, m2);
    for (int j = 1; j < q.grid.n_v - 1; ++j)
      for (int i = 1; i < q.grid.n_u - 1; ++i) {
        const int k = q.grid.idx(i, j);
        worst = std::max(worst, std::abs(r1.gauss[k] - r2.gauss[k]));
      }
  }
  c.require(worst < 1e-10, "gauss transfer dev " + fmt(worst));
  c.detail = "pointwise deviation " + fmt(worst);
  c.finish(7, "gauss residual transfers pointwise under the sister map");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  if (failures == 0) {
    std::printf("ACCEPTANCE: all 7 criteria passed\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", failures);
  return 1;
}
