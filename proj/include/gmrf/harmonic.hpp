#pragma once

#include <array>
#include <vector>

#include "gmrf/face_weight.hpp"
#include "gmrf/quad_form.hpp"

namespace gmrf {

/// Values on every edge of a rectangle, the solution of the discrete
/// harmonic (zero massive-Laplacian) equations at interior edges.
struct HarmonicField {
  EdgeIndexing indexing;
  Vector values;  // scalar-expanded, enumeration order of EdgeIndexing

  Vector horizontal(int k, int l) const;
  Vector vertical(int k, int l) const;
};

/// Unique energy minimizer of the domain form with the given boundary
/// values (canonical rectangle layout).
HarmonicField solve_harmonic(const FaceOperator& Q, int p, int q, const Vector& boundary);

/// Largest interior-equation residual of a field, for testing.
double harmonic_residual(const FaceOperator& Q, const HarmonicField& field);

/// Surface power assembled column-by-column from harmonic solves paired
/// with the one-sided local gradients of the Stokes formula.
RectQuadForm stokes_surface_power(const FaceOperator& Q, int p, int q);

/// One transverse mode of the separated solution on a width-q rectangle:
/// root zeta of the 2x2 determinant condition with |zeta| > 1, the kernel
/// ratio kappa, and the integer-power amplitude ratios of the x^(1)
/// component for the outgoing/ingoing branches.
struct ZetaMode {
  int r = 0;
  double zeta = 0.0;
  Complex kappa{1.0, 0.0};
  double rho_out = 0.0;  // x^(1) amplitude per unit x^(2) amplitude, zeta branch
  double rho_in = 0.0;   // 1/zeta branch
};

std::vector<ZetaMode> zeta_modes(double t, double a, double u, int q);

/// Residual of the mode condition matrix applied to the stored kernel data.
double zeta_mode_residual(double t, double a, double u, int q, const ZetaMode& mode);

/// Separated sine-mode solution with the given values on one side and zero
/// on the three others (dihedral scalar weights only).
HarmonicField sine_mode_solution(double t, double a, double u, int p, int q, Side side,
                                 const Vector& side_values);

/// The sixteen coupling blocks of Q^[p,q] indexed by (row side, column
/// side); they sum to the full surface power.
using SplitBlocks = std::array<std::array<Matrix, 4>, 4>;
SplitBlocks split_surface_power(const FaceOperator& Q, int p, int q);

/// Restriction of the harmonic solution to a vertical guillotine cut at
/// x = p1 (values of the q vertical edges bottom to top).
Vector harmonic_cut_values(const FaceOperator& Q, int p, int q, int p1, const Vector& boundary);

}  // namespace gmrf
