#pragma once

#include "gmrf/one_dim.hpp"
#include "gmrf/spectral.hpp"

namespace gmrf {

enum class Direction { WE, SN };

/// Strip operator in Fourier representation: for each u on the circle, the
/// Schur complement of psi_h (resp. psi_v) over the transverse block, a
/// Hermitian PD matrix on H1^2 (resp. H2^2).
struct StripSymbol {
  Direction direction = Direction::WE;
  int d = 0;  // block dimension (d1 for WE, d2 for SN)
  SymbolFunction symbol;
};

StripSymbol strip_symbol(const FaceOperator& Q, Direction dir, int grid_size = kDefaultGrid);

/// Ring of p face weights glued along the transverse direction; a form on
/// H1^{2p} (WE) or H2^{2p} (SN), wrap-around edges eliminated.
HermitianMatrix cylinder_form(const FaceOperator& Q, int p, Direction dir);

/// Fourier block of the cylinder at mode k.
Matrix cylinder_block(const FaceOperator& Q, int p, int k, Direction dir);

/// Pointwise 1D Schur product of two strip symbols.
StripSymbol strip_schur(const StripSymbol& A, const StripSymbol& B);

/// W-hat symbol of a half-plane: e.g. W_S(u) = C^{1,1}_{.,1}(u)
/// (C^{1,1}_{.,0}(u))^{-1}; spectral radius < 1 enforced on the grid.
SymbolFunction w_hat(const FaceOperator& Q, Side side, int grid_size = kDefaultGrid);

/// Half-plane boundary weight per Fourier mode together with its W symbol.
struct HalfPlaneSymbol {
  Side side = Side::S;
  int d = 0;
  SymbolFunction symbol;
  SymbolFunction w_symbol;
};

HalfPlaneSymbol halfplane_symbol(const FaceOperator& Q, Side side, int grid_size = kDefaultGrid);

/// Pointwise residual of the half-plane fixed-point equation
/// S1D_left(G(u), strip(u)) = G(u) (or the right version), maximized over
/// the grid.
double halfplane_fixed_point_residual(const StripSymbol& strip, const HalfPlaneSymbol& hp);

}  // namespace gmrf
