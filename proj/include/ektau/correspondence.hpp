#pragma once

#include <utility>

#include "ektau/model_space.hpp"
#include "ektau/quadruple.hpp"

namespace ektau {

/// Rotation angle theta linking two (tau, H) pairs through
/// tau2 + i H2 = e^{i theta} (tau1 + i H1); requires equal moduli.
struct Phase {
  double theta = 0.0;
  double tau1 = 0.0, H1 = 0.0;
  double tau2 = 0.0, H2 = 0.0;
};

/// theta = arg((tau2 + i H2)/(tau1 + i H1)) in (-pi, pi]. Errors when the
/// moduli disagree beyond 1e-9 or the source pair is zero.
Phase phase_angle(double tau1, double H1, double tau2, double H2);

struct SisterOptions {
  /// Sign of H2 = sign * sqrt(tau1^2 + H1^2 - tau2^2).
  int h2_sign = +1;
  /// Constant-mean-curvature guard: stddev of tr(S)/2 must stay below this.
  double cmc_tol = 1e-6;
  /// Anisotropy matching guard.
  double aniso_tol = 1e-9;
};

/// Sister (generalized Lawson) transform of a CMC quadruple from m1 to m2:
/// keeps g and nu, rotates T and the traceless part of S by the phase, and
/// recenters the trace at 2 H2. Requires equal anisotropy constants and a
/// real H2.
std::pair<QuadrupleField, Phase> sister(const QuadrupleField& q,
                                        const ModelSpace& m1,
                                        const ModelSpace& m2,
                                        const SisterOptions& opts = {});

/// Twin transform inside one model: the sister with target (tau, -H),
/// phase theta = -2 arctan(H / tau). Requires tau != 0 and H != 0.
std::pair<QuadrupleField, Phase> twin(const QuadrupleField& q,
                                      const ModelSpace& m, double H,
                                      const SisterOptions& opts = {});

}  // namespace ektau
