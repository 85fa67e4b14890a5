#pragma once

#include "gmrf/linalg.hpp"

namespace gmrf {

/// Boundary quadratic form of a p x q rectangle on H1^{2p} + H2^{2q}.
/// Canonical layout, used repo-wide: South edges left to right, then North
/// left to right, then West bottom to top, then East bottom to top.
struct RectQuadForm {
  int p = 0, q = 0;
  int d1 = 0, d2 = 0;
  HermitianMatrix matrix;

  int dim() const { return 2 * p * d1 + 2 * q * d2; }
};

/// (alpha, Q) pair of the scaled Gaussian weight alpha * exp(-x*Qx/2),
/// alpha > 0 kept in log scale so large rectangles do not overflow.
struct ScaledQuadForm {
  double log_scale = 0.0;
  RectQuadForm form;
};

}  // namespace gmrf
