#include "ektau/correspondence.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace ektau {

Phase phase_angle(double tau1, double H1, double tau2, double H2) {
  const double n1 = tau1 * tau1 + H1 * H1;
  const double n2 = tau2 * tau2 + H2 * H2;
  if (n1 == 0.0)
    throw std::invalid_argument("phase_angle: (tau1, H1) must be nonzero");
  if (std::abs(n1 - n2) > 1e-9 * std::max(1.0, n1)) {
    std::ostringstream os;
    os << "phase_angle: tau1^2+H1^2 = " << n1 << " != tau2^2+H2^2 = " << n2;
    throw std::invalid_argument(os.str());
  }
  const std::complex<double> z =
      std::complex<double>(tau2, H2) / std::complex<double>(tau1, H1);
  Phase p;
  p.theta = std::arg(z);
  if (p.theta <= -M_PI) p.theta = M_PI;  // pin arg to (-pi, pi]
  p.tau1 = tau1;
  p.H1 = H1;
  p.tau2 = tau2;
  p.H2 = H2;
  return p;
}

namespace {

// Applies the phase rotation to a quadruple: T -> R T, traceless part of S
// rotated by theta, trace recentered at 2 H2. g and nu are untouched.
QuadrupleField rotate_quadruple(const QuadrupleField& q, const Phase& ph) {
  QuadrupleField out = q;
  const double c = std::cos(ph.theta), s = std::sin(ph.theta);
  for (int k = 0; k < q.grid.size(); ++k) {
    const Mat2& S = q.S[k];
    const double p = 0.5 * (S(0, 0) - S(1, 1));
    const double w = S(0, 1);
    const double pr = c * p - s * w;
    const double wr = s * p + c * w;
    out.S[k] << ph.H2 + pr, wr, wr, ph.H2 - pr;
    const Vec2& t = q.T[k];
    out.T[k] << c * t(0) - s * t(1), s * t(0) + c * t(1);
  }
  return out;
}

double checked_cmc(const QuadrupleField& q, double cmc_tol, const char* who) {
  double mean, dev;
  q.mean_curvature_stats(mean, dev);
  if (dev > cmc_tol) {
    std::ostringstream os;
    os << who << ": mean curvature is not constant (stddev " << dev << " > "
       << cmc_tol << ")";
    throw std::invalid_argument(os.str());
  }
  return mean;
}

}  // namespace

std::pair<QuadrupleField, Phase> sister(const QuadrupleField& q,
                                        const ModelSpace& m1,
                                        const ModelSpace& m2,
                                        const SisterOptions& opts) {
  if (std::abs(m1.kappa() - q.kappa) > 1e-12 ||
      std::abs(m1.tau() - q.tau) > 1e-12)
    throw std::invalid_argument("sister: quadruple was not extracted in m1");
  if (std::abs(m1.aniso() - m2.aniso()) > opts.aniso_tol) {
    std::ostringstream os;
    os << "sister: anisotropy mismatch, kappa1-4tau1^2 = " << m1.aniso()
       << " != kappa2-4tau2^2 = " << m2.aniso();
    throw std::invalid_argument(os.str());
  }
  const double H1 = checked_cmc(q, opts.cmc_tol, "sister");
  const double tau1 = m1.tau(), tau2 = m2.tau();
  double rad = tau1 * tau1 + H1 * H1 - tau2 * tau2;
  if (rad < -1e-12) {
    std::ostringstream os;
    os << "sister: no real H2, tau1^2+H1^2-tau2^2 = " << rad;
    throw std::invalid_argument(os.str());
  }
  rad = std::max(rad, 0.0);
  const double H2 = (opts.h2_sign >= 0 ? 1.0 : -1.0) * std::sqrt(rad);

  Phase ph = phase_angle(tau1, H1, tau2, H2);
  QuadrupleField out = rotate_quadruple(q, ph);
  out.kappa = m2.kappa();
  out.tau = m2.tau();
  return {std::move(out), ph};
}

std::pair<QuadrupleField, Phase> twin(const QuadrupleField& q,
                                      const ModelSpace& m, double H,
                                      const SisterOptions& opts) {
  const double tau = m.tau();
  if (tau == 0.0)
    throw std::invalid_argument("twin: requires tau != 0");
  if (H == 0.0) throw std::invalid_argument("twin: requires H != 0");
  if (std::abs(m.kappa() - q.kappa) > 1e-12 ||
      std::abs(m.tau() - q.tau) > 1e-12)
    throw std::invalid_argument("twin: quadruple was not extracted in m");
  const double measured = checked_cmc(q, opts.cmc_tol, "twin");
  if (std::abs(measured - H) > std::max(1e-6, 1e-9 * std::abs(H)))
    throw std::invalid_argument("twin: supplied H does not match tr(S)/2");

  Phase ph;
  ph.theta = -2.0 * std::atan(H / tau);
  ph.tau1 = tau;
  ph.H1 = H;
  ph.tau2 = tau;
  ph.H2 = -H;

  QuadrupleField out = rotate_quadruple(q, ph);
  // Cross-check the two forms of the twin shape operator,
  // S~ = e^{thetaJ}(S - H I) - H I  and  S~ = e^{thetaJ}(S - tau J) + tau J.
  // (The returned field carries the trace pinned at -2H; it differs from
  // either form by at most the constant-mean-curvature scatter of the
  // input.)
  const Mat2 R = rotation2(ph.theta);
  const Mat2 J = quarter_turn();
  double worst = 0.0;
  for (int k = 0; k < q.grid.size(); ++k) {
    const Mat2 a = R * (q.S[k] - H * Mat2::Identity()) - H * Mat2::Identity();
    const Mat2 b = R * (q.S[k] - tau * J) + tau * J;
    worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
  }
  if (worst > 1e-12)
    throw std::runtime_error("twin: the two forms of S~ disagree");
  return {std::move(out), ph};
}

}  // namespace ektau
