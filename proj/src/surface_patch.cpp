#include "ektau/surface_patch.hpp"

#include <cmath>

namespace ektau {

void SurfacePatch::derivatives(double u, double v, Vec3& pu, Vec3& pv) const {
  const double h = fd_step;
  pu = (position(u + h, v) - position(u - h, v)) / (2.0 * h);
  pv = (position(u, v + h) - position(u, v - h)) / (2.0 * h);
}

SampledPatch::SampledPatch(const ModelSpace& m, const GridSpec& grid,
                           std::vector<Vec3> points)
    : SurfacePatch(m, grid), points_(std::move(points)) {
  if (static_cast<int>(points_.size()) != grid.size())
    throw std::invalid_argument("SampledPatch: sample count != grid size");
  if (grid.n_u < 5 || grid.n_v < 5)
    throw std::invalid_argument("SampledPatch: need at least a 5x5 grid");
}

int SampledPatch::node_u(double u) const {
  const GridSpec& g = extent();
  const double t = (u - g.u0) / g.du();
  const int i = static_cast<int>(std::lround(t));
  if (i < 0 || i >= g.n_u || std::abs(t - i) > 1e-6)
    throw std::invalid_argument("SampledPatch: u is not a grid node");
  return i;
}

int SampledPatch::node_v(double v) const {
  const GridSpec& g = extent();
  const double t = (v - g.v0) / g.dv();
  const int j = static_cast<int>(std::lround(t));
  if (j < 0 || j >= g.n_v || std::abs(t - j) > 1e-6)
    throw std::invalid_argument("SampledPatch: v is not a grid node");
  return j;
}

Vec3 SampledPatch::position(double u, double v) const {
  return points_[extent().idx(node_u(u), node_v(v))];
}

namespace {

// 5-point stencil first derivative at offset s in {-2,...,2} from the
// stencil center; 4th order.
void stencil5(int s, double coeff[5]) {
  static const double table[5][5] = {
      {-25. / 12, 4., -3., 4. / 3, -1. / 4},  // node 0 of 0..4
      {-1. / 4, -5. / 6, 3. / 2, -1. / 2, 1. / 12},
      {1. / 12, -2. / 3, 0., 2. / 3, -1. / 12},
      {-1. / 12, 1. / 2, -3. / 2, 5. / 6, 1. / 4},
      {1. / 4, -4. / 3, 3., -4., 25. / 12}};
  for (int k = 0; k < 5; ++k) coeff[k] = table[s + 2][k];
}

}  // namespace

void SampledPatch::derivatives(double u, double v, Vec3& pu, Vec3& pv) const {
  const GridSpec& g = extent();
  const int i = node_u(u), j = node_v(v);

  const int bu = std::min(std::max(i - 2, 0), g.n_u - 5);
  const int bv = std::min(std::max(j - 2, 0), g.n_v - 5);
  double cu[5], cv[5];
  stencil5(i - bu - 2, cu);
  stencil5(j - bv - 2, cv);

  pu.setZero();
  pv.setZero();
  for (int k = 0; k < 5; ++k) {
    pu += cu[k] * points_[g.idx(bu + k, j)];
    pv += cv[k] * points_[g.idx(i, bv + k)];
  }
  pu /= g.du();
  pv /= g.dv();
}

namespace {

// Height profile shared by the tube and sphere families.
double tube_f(double v, double H) {
  const double s = std::sin(v), c = std::cos(v);
  const double q = std::sqrt(1.0 + c * c / (4.0 * H * H));
  return q * s + (1.0 + 4.0 * H * H) / (2.0 * H) *
                     std::asin(s / std::sqrt(1.0 + 4.0 * H * H));
}

double tube_fprime(double v, double H) {
  const double c = std::cos(v);
  return 2.0 * c * std::sqrt(1.0 + c * c / (4.0 * H * H));
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"vertical-plane", "flat minimal plane x2 = 0 in Nil3", false, 0.0, 0.5},
      {"nil-z0", "rotational minimal surface z = 0 in Nil3", false, 0.0, 0.5},
      {"horocycle-cylinder", "horocycle x R in H2xR (CMC 1/2)", false, -1.0,
       0.0},
      {"cmc-graph-B", "rotational CMC 1/2 entire graph in H2xR", false, -1.0,
       0.0},
      {"tube", "translation-invariant CMC H tube in Nil3", true, 0.0, 0.5},
      {"sphere", "rotational CMC sphere in Nil3 (mean curvature -H)", true,
       0.0, 0.5}};
  return entries;
}

std::shared_ptr<AnalyticPatch> catalog(const std::string& name, double H) {
  const bool has_H = H != 0.0;
  auto require_H = [&](bool wanted) {
    if (wanted && H <= 0.0)
      throw std::invalid_argument("catalog: '" + name + "' requires H > 0");
    if (!wanted && has_H)
      throw std::invalid_argument("catalog: '" + name + "' takes no H");
  };

  if (name == "vertical-plane") {
    require_H(false);
    ModelSpace m(0.0, 0.5);
    GridSpec ext{41, 41, -1.0, 1.0, -1.0, 1.0};
    return std::make_shared<AnalyticPatch>(
        m, ext, [](double u, double v) { return Vec3(v, 0.0, u); },
        [](double, double, Vec3& pu, Vec3& pv) {
          pu = Vec3(0, 0, 1);
          pv = Vec3(1, 0, 0);
        });
  }

  if (name == "nil-z0") {
    require_H(false);
    ModelSpace m(0.0, 0.5);
    GridSpec ext{41, 41, 1.0, 1.5, 0.0, 1.0};
    return std::make_shared<AnalyticPatch>(
        m, ext,
        [](double u, double v) {
          return Vec3(u * std::cos(v), u * std::sin(v), 0.0);
        },
        [](double u, double v, Vec3& pu, Vec3& pv) {
          pu = Vec3(std::cos(v), std::sin(v), 0.0);
          pv = Vec3(-u * std::sin(v), u * std::cos(v), 0.0);
        });
  }

  if (name == "horocycle-cylinder") {
    // Unit-speed horocycle through the origin of the Poincare disk chart
    // (image of the line y = 1 of the half-plane model), times R.
    require_H(false);
    ModelSpace m(-1.0, 0.0);
    GridSpec ext{41, 41, -1.0, 1.0, -1.0, 1.0};
    return std::make_shared<AnalyticPatch>(
        m, ext,
        [](double u, double v) {
          const double d = u * u + 4.0;
          return Vec3(2.0 * u * u / d, 4.0 * u / d, v);
        },
        [](double u, double, Vec3& pu, Vec3& pv) {
          const double d = u * u + 4.0;
          pu = Vec3(16.0 * u / (d * d), 4.0 * (4.0 - u * u) / (d * d), 0.0);
          pv = Vec3(0.0, 0.0, 1.0);
        });
  }

  if (name == "cmc-graph-B") {
    // Rotational CMC 1/2 graph, transplanted from the hyperboloid model via
    // x+iy = 2 (x^1+i x^2)/(1+x^0), z = x^3.
    require_H(false);
    ModelSpace m(-1.0, 0.0);
    GridSpec ext{41, 41, 1.0, 1.3, 0.0, 1.0};
    return std::make_shared<AnalyticPatch>(
        m, ext,
        [](double u, double v) {
          const double w = std::sqrt(4.0 + u * u);
          return Vec3(2.0 * u * std::cos(v) / w, 2.0 * u * std::sin(v) / w, w);
        },
        [](double u, double v, Vec3& pu, Vec3& pv) {
          const double w = std::sqrt(4.0 + u * u);
          const double r = 2.0 * u / w;
          const double rp = 8.0 / (w * w * w);
          pu = Vec3(rp * std::cos(v), rp * std::sin(v), u / w);
          pv = Vec3(-r * std::sin(v), r * std::cos(v), 0.0);
        });
  }

  if (name == "tube") {
    require_H(true);
    ModelSpace m(0.0, 0.5);
    GridSpec ext{41, 41, -1.0, 1.0, -0.2, 0.2};
    return std::make_shared<AnalyticPatch>(
        m, ext,
        [H](double u, double v) {
          return Vec3(u, std::cos(v) / (2.0 * H),
                      u * std::cos(v) / (4.0 * H) + tube_f(v, H) / (4.0 * H));
        },
        [H](double u, double v, Vec3& pu, Vec3& pv) {
          pu = Vec3(1.0, 0.0, std::cos(v) / (4.0 * H));
          pv = Vec3(0.0, -std::sin(v) / (2.0 * H),
                    -u * std::sin(v) / (4.0 * H) + tube_fprime(v, H) / (4.0 * H));
        });
  }

  if (name == "sphere") {
    require_H(true);
    ModelSpace m(0.0, 0.5);
    GridSpec ext{41, 41, 0.0, 1.0, -0.25, 0.25};
    return std::make_shared<AnalyticPatch>(
        m, ext,
        [H](double u, double v) {
          return Vec3(std::cos(u) * std::cos(v) / H,
                      std::sin(u) * std::cos(v) / H, tube_f(v, H) / (2.0 * H));
        },
        [H](double u, double v, Vec3& pu, Vec3& pv) {
          pu = Vec3(-std::sin(u) * std::cos(v) / H,
                    std::cos(u) * std::cos(v) / H, 0.0);
          pv = Vec3(-std::cos(u) * std::sin(v) / H,
                    -std::sin(u) * std::sin(v) / H, tube_fprime(v, H) / (2.0 * H));
        });
  }

  throw std::invalid_argument("catalog: unknown surface '" + name + "'");
}

}  // namespace ektau
