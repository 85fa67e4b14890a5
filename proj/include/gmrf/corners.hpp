#pragma once

#include <array>

#include "gmrf/folds.hpp"

namespace gmrf {

enum class Corner { SW = 0, SE = 1, NW = 2, NE = 3 };

const char* corner_name(Corner c);

/// Corner quadratic form on (vertical half-line, horizontal half-line):
/// e.g. for SW the vertical line carries the E boundary of the quadrant
/// (H2 blocks) and the horizontal line its N boundary (H1 blocks), with
/// the transverse coupling V mapping the horizontal line into the vertical
/// one. Storage is nearest-to-cut-first on both lines.
struct CornerForm {
  Corner corner = Corner::SW;
  int n = 0;
  int dv = 0;  // block dim on the vertical half-line
  int dh = 0;  // block dim on the horizontal half-line
  HalfLineOperator vv;  // fold of the facing half-plane symbol (H2 side)
  HalfLineOperator hh;  // fold of the facing half-plane symbol (H1 side)
  Matrix v_from_h;      // V: horizontal line -> vertical line, (n dv) x (n dh)

  int dim() const { return n * (dv + dh); }
  Matrix assembled() const;  // order: vertical line, horizontal line
};

CornerForm corner_fixed_point(const FaceOperator& Q, Corner corner, int n,
                              int grid_size = kDefaultGrid);

/// Residuals of the six block equations characterizing the corner fixed
/// point, on leading (n - margin) blocks. `hsH` is the W/E half-strip
/// facing the corner's horizontal line, `hsV` the S/N half-strip facing
/// its vertical line.
std::array<double, 6> corner_residuals(const FaceOperator& Q, const CornerForm& C,
                                       const HalfStripForm& hsH, const HalfStripForm& hsV,
                                       int margin = 8);

/// Glue a perpendicular half-strip onto a corner along the shared
/// half-line and absorb the freed cut edges by the shift morphism.
CornerForm glue_corner_halfstrip(const CornerForm& C, const HalfStripForm& A);

struct HalfPlaneComparison {
  Matrix assembled;
  Matrix expected;
  double near_cut_residual = 0.0;
};

/// Glue two adjacent corners over their shared half-line and compare the
/// interior coefficients with the half-plane Toeplitz operator.
HalfPlaneComparison glue_corners_to_halfplane(const CornerForm& A, const CornerForm& B,
                                              const HalfPlaneSymbol& hp, int window = 8);

/// Consistent rectangle boundary weight assembled from four corner fixed
/// points and 2p + 2q half-strip fixed points, all half-line spaces
/// eliminated.
struct BoundaryWeight {
  int p = 0, q = 0;
  int n = 0, grid = 0;  // provenance: truncation and quadrature grid
  RectQuadForm form;
};

BoundaryWeight assemble_boundary_weight(const FaceOperator& Q, int p, int q, int n,
                                        int grid_size = kDefaultGrid);

/// Residual of the restriction consistency: the (p,q) field with the
/// assembled boundary weight, marginalized onto the boundary of an inner
/// (pp, qq) rectangle, against the directly assembled inner boundary law.
/// Offsets default to the centered placement.
double restriction_consistency_check(const FaceOperator& Q, int p, int q, int pp, int qq, int n,
                                     int grid_size = kDefaultGrid, int ox = -1, int oy = -1);

struct CovarianceCheck {
  double max_residual = 0.0;
  Matrix covariance;  // edge-pair covariance of the finite field
  Matrix expected;    // Fourier coefficients of Psi^{-1}
  Matrix residual;    // entrywise absolute difference
};

/// Compares every edge-pair covariance of the rectangle field (domain form
/// plus assembled boundary weight) with C^{i,j}_{k'-k, l'-l}.
CovarianceCheck covariance_check(const FaceOperator& Q, int p, int q, int n,
                                 int grid_size = kDefaultGrid);

}  // namespace gmrf
