#include "ektau/quadruple.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ektau {

void QuadrupleField::resize(const GridSpec& gs) {
  grid = gs;
  g.assign(gs.size(), Mat2::Zero());
  S.assign(gs.size(), Mat2::Zero());
  T.assign(gs.size(), Vec2::Zero());
  nu.assign(gs.size(), 0.0);
}

TangentFrame QuadrupleField::frame_at(int i, int j) const {
  const Mat2& gij = g[idx(i, j)];
  const double g11 = gij(0, 0), g12 = gij(0, 1), g22 = gij(1, 1);
  const double det = g11 * g22 - g12 * g12;
  if (g11 <= 0.0 || det <= 0.0)
    throw std::runtime_error("QuadrupleField: degenerate metric at grid point");
  const double a = 1.0 / std::sqrt(g11);
  const double c = std::sqrt(g11 / det);
  const double b = -(g12 / g11) * c;
  TangentFrame f;
  f.P << a, b, 0.0, c;
  if (frame_rotation != 0.0) f.P = f.P * rotation2(frame_rotation);
  const double d = f.P(0, 0) * f.P(1, 1) - f.P(0, 1) * f.P(1, 0);
  f.Pinv << f.P(1, 1) / d, -f.P(0, 1) / d, -f.P(1, 0) / d, f.P(0, 0) / d;
  return f;
}

void QuadrupleField::mean_curvature_stats(double& mean, double& stddev) const {
  const int n = grid.size();
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += 0.5 * S[k].trace();
  mean = s / n;
  double var = 0.0;
  for (int k = 0; k < n; ++k) {
    const double d = 0.5 * S[k].trace() - mean;
    var += d * d;
  }
  stddev = std::sqrt(var / n);
}

double QuadrupleField::unit_norm_defect() const {
  double worst = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    const double r = std::abs(T[k].squaredNorm() + nu[k] * nu[k] - 1.0);
    worst = std::max(worst, r);
  }
  return worst;
}

Mat2 rotation2(double theta) {
  Mat2 r;
  const double c = std::cos(theta), s = std::sin(theta);
  r << c, -s, s, c;
  return r;
}

Mat2 quarter_turn() {
  Mat2 j;
  j << 0.0, -1.0, 1.0, 0.0;
  return j;
}

QuadrupleField sign_flip(const QuadrupleField& q) {
  QuadrupleField out = q;
  for (auto& t : out.T) t = -t;
  for (auto& n : out.nu) n = -n;
  return out;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_grid_file(std::ostream& os, const char* tag,
                     const QuadrupleField& q, const std::vector<Vec3>* pos) {
  if (q.frame_rotation != 0.0)
    throw std::invalid_argument(
        "write_quadruple: only canonical-frame fields are serializable");
  os << tag << " kappa=" << format_real(q.kappa)
     << " tau=" << format_real(q.tau) << " nu=" << q.grid.n_u
     << " nv=" << q.grid.n_v << " u0=" << format_real(q.grid.u0)
     << " u1=" << format_real(q.grid.u1) << " v0=" << format_real(q.grid.v0)
     << " v1=" << format_real(q.grid.v1) << "\n";
  for (int j = 0; j < q.grid.n_v; ++j)
    for (int i = 0; i < q.grid.n_u; ++i) {
      const int k = q.idx(i, j);
      os << format_real(q.grid.u(i)) << ' ' << format_real(q.grid.v(j)) << ' '
         << format_real(q.g[k](0, 0)) << ' ' << format_real(q.g[k](0, 1))
         << ' ' << format_real(q.g[k](1, 1)) << ' '
         << format_real(q.S[k](0, 0)) << ' ' << format_real(q.S[k](0, 1))
         << ' ' << format_real(q.S[k](1, 1)) << ' ' << format_real(q.T[k](0))
         << ' ' << format_real(q.T[k](1)) << ' ' << format_real(q.nu[k]);
      if (pos) {
        const Vec3& p = (*pos)[k];
        os << ' ' << format_real(p.x()) << ' ' << format_real(p.y()) << ' '
           << format_real(p.z());
      }
      os << "\n";
    }
}

}  // namespace

void write_quadruple(std::ostream& os, const QuadrupleField& q) {
  write_grid_file(os, "#quadruple", q, nullptr);
}

void write_quadruple_file(const std::string& path, const QuadrupleField& q) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_quadruple(os, q);
}

namespace {

double parse_kv(const std::string& token, const std::string& key) {
  if (token.rfind(key + "=", 0) != 0)
    throw std::runtime_error("quadruple header: expected " + key +
                             "=..., got '" + token + "'");
  return std::stod(token.substr(key.size() + 1));
}

}  // namespace

namespace {

SampledPatchData read_grid_file(std::istream& is, const char* want_tag,
                                bool with_positions) {
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("quadruple: empty input");
  std::istringstream hs(line);
  std::string tag, tok;
  hs >> tag;
  if (tag != want_tag)
    throw std::runtime_error(std::string("expected header ") + want_tag +
                             ", got '" + tag + "'");
  SampledPatchData out;
  QuadrupleField& q = out.q;
  GridSpec gs;
  hs >> tok;
  q.kappa = parse_kv(tok, "kappa");
  hs >> tok;
  q.tau = parse_kv(tok, "tau");
  hs >> tok;
  gs.n_u = static_cast<int>(parse_kv(tok, "nu"));
  hs >> tok;
  gs.n_v = static_cast<int>(parse_kv(tok, "nv"));
  hs >> tok;
  gs.u0 = parse_kv(tok, "u0");
  hs >> tok;
  gs.u1 = parse_kv(tok, "u1");
  hs >> tok;
  gs.v0 = parse_kv(tok, "v0");
  hs >> tok;
  gs.v1 = parse_kv(tok, "v1");
  if (gs.n_u < 2 || gs.n_v < 2)
    throw std::runtime_error("quadruple: grid must be at least 2x2");
  q.resize(gs);
  if (with_positions) out.positions.assign(gs.size(), Vec3::Zero());
  for (int j = 0; j < gs.n_v; ++j)
    for (int i = 0; i < gs.n_u; ++i) {
      if (!std::getline(is, line))
        throw std::runtime_error("quadruple: truncated data section");
      std::istringstream ls(line);
      double u, v, g11, g12, g22, s11, s12, s22, t1, t2, n;
      if (!(ls >> u >> v >> g11 >> g12 >> g22 >> s11 >> s12 >> s22 >> t1 >>
            t2 >> n))
        throw std::runtime_error("quadruple: malformed row");
      const int k = q.idx(i, j);
      q.g[k] << g11, g12, g12, g22;
      q.S[k] << s11, s12, s12, s22;
      q.T[k] << t1, t2;
      q.nu[k] = n;
      if (with_positions) {
        double x, y, z;
        if (!(ls >> x >> y >> z))
          throw std::runtime_error("patch: row lacks ambient coordinates");
        out.positions[k] = Vec3(x, y, z);
      }
    }
  return out;
}

}  // namespace

QuadrupleField read_quadruple(std::istream& is) {
  return read_grid_file(is, "#quadruple", false).q;
}

void write_sampled_patch(std::ostream& os, const QuadrupleField& q,
                         const std::vector<Vec3>& positions) {
  if (static_cast<int>(positions.size()) != q.grid.size())
    throw std::invalid_argument("write_sampled_patch: position count");
  write_grid_file(os, "#patch", q, &positions);
}

void write_sampled_patch_file(const std::string& path, const QuadrupleField& q,
                              const std::vector<Vec3>& positions) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_sampled_patch(os, q, positions);
}

SampledPatchData read_sampled_patch(std::istream& is) {
  return read_grid_file(is, "#patch", true);
}

SampledPatchData read_sampled_patch_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_sampled_patch(is);
}

QuadrupleField read_quadruple_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_quadruple(is);
}

}  // namespace ektau
