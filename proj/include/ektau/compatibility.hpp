#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ektau/model_space.hpp"
#include "ektau/quadruple.hpp"

namespace ektau {

/// Raw residual fields of the four compatibility equations plus the unit
/// norm constraint, evaluated against a target model. Derivative-based
/// residuals are defined on interior grid points only (outermost ring
/// excluded); boundary entries are zero-filled.
struct ResidualFields {
  GridSpec grid;
  std::vector<double> gauss;      // K - det S - tau^2 - (kappa-4tau^2) nu^2
  std::vector<Vec2> codazzi;      // (X,Y) = (e1,e2), tangent-frame components
  std::vector<Mat2> killing_T;    // column k: residual of nabla_{e_k} T eq.
  std::vector<Vec2> killing_nu;   // entry k: residual of the dnu equation
  std::vector<double> unit_norm;  // | |T|^2 + nu^2 - 1 |

  bool interior(int i, int j) const {
    return i >= 1 && i < grid.n_u - 1 && j >= 1 && j < grid.n_v - 1;
  }
};

ResidualFields compat_residuals(const QuadrupleField& q, const ModelSpace& m);

struct EquationStat {
  double max_abs = 0.0;
  double rms = 0.0;
};

/// Aggregated residual report; records the model it was evaluated against.
struct CompatReport {
  double kappa = 0.0;
  double tau = 0.0;
  GridSpec grid;
  EquationStat gauss, codazzi, killing_T, killing_nu, unit_norm;
  double tol = 1e-4;
  bool pass = false;

  double worst() const;
};

CompatReport verify(const QuadrupleField& q, const ModelSpace& m, double tol);

/// Reference tolerance 1e-4 at grid step 0.025, scaled with h^2.
double default_tol(const GridSpec& grid);

/// Line-oriented serialization: `equation max rms` lines and a
/// `PASS|FAIL tol=<r>` footer.
void write_report(std::ostream& os, const CompatReport& r);
std::string report_to_string(const CompatReport& r);

}  // namespace ektau
