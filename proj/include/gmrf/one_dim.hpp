#pragma once

#include <vector>

#include "gmrf/linalg.hpp"

namespace gmrf {

/// Nearest-neighbour coupling of a 1D Gaussian Markov chain on H, as a
/// Hermitian PD operator on H^2 with (L, R) blocks.
struct EdgeCoupling {
  int d = 0;
  HermitianMatrix matrix;

  static EdgeCoupling from_matrix(int d, Matrix m);
  static EdgeCoupling scalar(double ll, double lr, double rl, double rr);

  Matrix LL() const { return matrix.mat().block(0, 0, d, d); }
  Matrix LR() const { return matrix.mat().block(0, d, d, d); }
  Matrix RL() const { return matrix.mat().block(d, 0, d, d); }
  Matrix RR() const { return matrix.mat().block(d, d, d, d); }
};

Matrix phi_1d(const EdgeCoupling& K, Complex z);

struct RootRecord {
  Complex z;
  Vector kernel;
};

/// Contraction operators of the invariant boundary conditions: W^L collects
/// 1/z on kernels at roots |z| > 1 (plus zero on ker K_LR), W^R collects z
/// at roots |z| < 1 (plus zero on ker K_RL).
struct WPair {
  Matrix WL, WR;
  std::vector<RootRecord> outside_roots;  // |z| > 1
  std::vector<RootRecord> inside_roots;   // |z| < 1
};

/// Root route: companion linearization of det(z phi_K(z)) with kernel
/// extraction; guards the genericity assumption.
WPair w_operators(const EdgeCoupling& K);

/// Fourier route: W^L = F_1(phi^-1) F_0(phi^-1)^-1, W^R with F_{-1}.
WPair w_via_fourier(const EdgeCoupling& K, int grid_size = 1024);

Matrix fourier_phi_inv(const EdgeCoupling& K, int k, int grid_size = 1024);

struct InvariantBoundaries {
  Matrix GL, GR;
};

/// G_L = K_RR + K_RL W^L and G_R = K_LL + K_LR W^R.
InvariantBoundaries invariant_boundaries(const EdgeCoupling& K, const WPair& W);
InvariantBoundaries invariant_boundaries(const EdgeCoupling& K);

/// Chain composition of two couplings: Schur complement of the joined
/// three-site form over the middle site.
Matrix schur_1d(const Matrix& A, const Matrix& B);
/// Left boundary action: Schur of K + diag(G, 0) over the first site.
Matrix schur_1d_left(const Matrix& G, const Matrix& K);
/// Right boundary action: Schur of K + diag(0, G) over the second site.
Matrix schur_1d_right(const Matrix& K, const Matrix& G);

/// E[X_k | X_0 = x0, X_n = xn] through the spectral decomposition of the
/// boundary data in the kernel basis of phi_K.
Vector conditional_profile(const EdgeCoupling& K, const Vector& x0, const Vector& xn, int n,
                           int k);

}  // namespace gmrf
