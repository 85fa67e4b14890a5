#pragma once

#include "gmrf/guill_rect.hpp"
#include "gmrf/strips.hpp"

namespace gmrf {

/// Truncated operator on a half-line space l2(Z_{<0}; H) (W/S sides) or
/// l2(Z_{>=0}; H) (E/N sides), stored nearest-to-cut-first: block index i
/// corresponds to lattice site -1-i on W/S sides and +i on E/N sides.
struct HalfLineOperator {
  Side side = Side::W;
  int d = 0;
  int n = 0;
  Matrix matrix;  // (n*d) x (n*d)

  Matrix block(int i, int j) const { return matrix.block(i * d, j * d, d, d); }
  /// Geometric decay ratio fitted on block norms by separation from the
  /// diagonal; < 1 for the operators built here.
  double fitted_decay() const;
};

HalfLineOperator toeplitz(const SymbolFunction& sym, Side side, int n);
HalfLineOperator hankel(const SymbolFunction& sym, Side side, int n);
/// fold = T - H; requires an even Hermitian symbol when positivity is
/// wanted (throws NotEven otherwise).
HalfLineOperator fold(const SymbolFunction& sym, Side side, int n);
HalfLineOperator fold_plus(const SymbolFunction& sym, Side side, int n);

/// Transverse coupling of the half-strip fixed point: row block k equals
/// U (I + W^L) (W^L)^k, mapping the cut H2 into the half-line.
Matrix u_transverse(const FaceOperator& Q, Side side, int n);

/// Half-strip quadratic form on (line, line, cut): for a W/E half-strip of
/// width w the two half-lines carry H1 and the cut carries H2^w; for S/N
/// half-strips the roles of H1 and H2 swap.
struct HalfStripForm {
  Side side = Side::W;
  int n = 0;
  int dline = 0;  // block dimension on the half-lines
  int w = 1;      // cut width (number of cut edges)
  int dcut = 0;   // dimension per cut edge
  HalfLineOperator line_ff, line_fs, line_sf, line_ss;  // 2x2 half-line block
  Matrix first_cut, second_cut;                         // (n*dline) x (w*dcut)
  Matrix cut_cut;                                       // (w*dcut) x (w*dcut)

  int dim() const { return 2 * n * dline + w * dcut; }
  Matrix assembled() const;  // order: first line, second line, cut
};

/// Fixed point of the gluing action of a dihedral face weight, via folds of
/// the strip symbol, the transverse coupling and the 1D invariant boundary.
HalfStripForm halfstrip_fixed_point(const FaceOperator& Q, Side side, int n,
                                    int grid_size = kDefaultGrid);

/// Same construction for a (1,q) rectangle form viewed as a face weight
/// with an H2^q cut space (W/E sides; needs x-reflection symmetry).
HalfStripForm halfstrip_fixed_point_rect(const RectQuadForm& R, Side side, int n,
                                         int grid_size = kDefaultGrid);

/// D^L_p / D^R_p realized at truncation: prepend p blocks at the cut end
/// (listed nearest-cut-first), drop p blocks at the far end. `extended` is
/// ((n+p)*d)^2 ordered (new blocks, old blocks).
Matrix shift_absorb(const Matrix& extended, int n, int d, int p);
/// One-sided version for column maps: rows ordered (new blocks, old rows).
Matrix shift_absorb_rows(const Matrix& extended_rows, int n, int d, int p);

/// Glue two same-side half-strips along the shared inner half-line.
HalfStripForm glue_halfstrips_vertical(const HalfStripForm& A, const HalfStripForm& B);

/// Glue a (p, w) rectangle onto the cut of a width-w half-strip and absorb
/// the p new boundary edges into the half-lines.
HalfStripForm glue_halfstrip_rect(const HalfStripForm& A, const RectQuadForm& R);

struct StripComparison {
  Matrix assembled;        // form on (W line, E line) pairs after the cut elimination
  Matrix expected;         // Toeplitz coefficients of the strip symbol
  double near_cut_residual = 0.0;  // max over blocks within the comparison window
};

/// Glue opposite half-strips over the shared cut block and compare the
/// interior coefficients against the doubly-infinite strip operator.
StripComparison glue_opposite_halfstrips(const HalfStripForm& W, const HalfStripForm& E,
                                         const StripSymbol& sym, int window = 8);

/// Residuals of the three block fixed-point equations on the leading
/// (n - margin) blocks.
struct HalfStripResiduals {
  double cut_block = 0.0;    // 1D invariant-boundary equation
  double line_block = 0.0;   // shift-invariant SN equation (worst of SS, SN, NS, NN)
  double transverse = 0.0;   // transverse column equation
};

HalfStripResiduals halfstrip_residuals(const FaceOperator& Q, const HalfStripForm& hs,
                                       int margin = 8);

}  // namespace gmrf
