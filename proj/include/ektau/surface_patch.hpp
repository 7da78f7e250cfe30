#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ektau/model_space.hpp"
#include "ektau/types.hpp"

namespace ektau {

/// A parametrized surface patch (u,v) -> E(kappa,tau) over a rectangle.
class SurfacePatch {
 public:
  SurfacePatch(const ModelSpace& m, const GridSpec& extent)
      : model_(m), extent_(extent) {}
  virtual ~SurfacePatch() = default;

  virtual Vec3 position(double u, double v) const = 0;

  /// First derivatives in coordinate components. The default is a central
  /// finite difference of position() with step h.
  virtual void derivatives(double u, double v, Vec3& pu, Vec3& pv) const;

  /// True when position()/derivatives() can be evaluated at arbitrary
  /// parameters (as opposed to grid samples only).
  virtual bool pointwise() const { return true; }
  virtual bool analytic_derivatives() const { return false; }

  const ModelSpace& model() const { return model_; }
  const GridSpec& extent() const { return extent_; }
  void set_extent(const GridSpec& e) { extent_ = e; }

  double fd_step = 1e-4;

 private:
  ModelSpace model_;
  GridSpec extent_;  // n_u/n_v carry the default grid resolution
};

/// Patch given by closed-form position and (optionally) closed-form first
/// derivatives.
class AnalyticPatch final : public SurfacePatch {
 public:
  using PositionFn = std::function<Vec3(double, double)>;
  using DerivFn = std::function<void(double, double, Vec3&, Vec3&)>;

  AnalyticPatch(const ModelSpace& m, const GridSpec& extent, PositionFn pos,
                DerivFn deriv = nullptr)
      : SurfacePatch(m, extent), pos_(std::move(pos)), deriv_(std::move(deriv)) {}

  Vec3 position(double u, double v) const override { return pos_(u, v); }
  void derivatives(double u, double v, Vec3& pu, Vec3& pv) const override {
    if (deriv_)
      deriv_(u, v, pu, pv);
    else
      SurfacePatch::derivatives(u, v, pu, pv);
  }
  bool analytic_derivatives() const override { return deriv_ != nullptr; }

  /// Drops the closed-form derivatives so the finite-difference path is used.
  void use_finite_differences() { deriv_ = nullptr; }

 private:
  PositionFn pos_;
  DerivFn deriv_;
};

/// Patch known only through samples on a grid (e.g. a reconstructed
/// immersion). Derivatives use 5-point stencils along grid lines; position
/// is only available at grid nodes.
class SampledPatch final : public SurfacePatch {
 public:
  SampledPatch(const ModelSpace& m, const GridSpec& grid,
               std::vector<Vec3> points);

  Vec3 position(double u, double v) const override;
  void derivatives(double u, double v, Vec3& pu, Vec3& pv) const override;
  bool pointwise() const override { return false; }

  const std::vector<Vec3>& points() const { return points_; }
  const GridSpec& grid() const { return extent(); }

 private:
  int node_u(double u) const;
  int node_v(double v) const;
  std::vector<Vec3> points_;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  bool takes_H;
  double kappa;
  double tau;
};

/// Names and defaults of the built-in surfaces.
const std::vector<CatalogEntry>& catalog_entries();

/// Builds a catalog surface with exact first derivatives. H is required for
/// "tube" and "sphere" (H > 0) and rejected otherwise; pass 0 for no value.
std::shared_ptr<AnalyticPatch> catalog(const std::string& name, double H = 0.0);

}  // namespace ektau
