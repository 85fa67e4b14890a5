#pragma once

#include <vector>

#include "gmrf/folds.hpp"

namespace gmrf {

/// log of the torus partition function Z_per on the p x q discrete torus.
double torus_log_z(const FaceOperator& Q, int p, int q);

/// log Lambda^1D_WE = d2 log(2pi) - log det(B^W_EE + Q_WW), the eigenvalue
/// of the transverse 1D process on vertical edges.
double lambda_1d_we(const FaceOperator& Q);

/// Same quantity through the quadrature identity
/// d2 log(2pi) - (1/2pi) \int log det phi^WE.
double lambda_1d_we_quadrature(const FaceOperator& Q, int grid_size = 4096);

/// log Lambda' = d1 log(2pi) - (1/4pi^2) \int\int log det S with S the
/// Schur complement of Psi over the H2 block.
double lambda_prime_integral(const FaceOperator& Q, int grid_size = kDefaultGrid);

/// Renormalized determinant-ratio route: 1D free energies of the truncated
/// fold couplings R_n at orders n+1 and n.
double lambda_prime_szego(const FaceOperator& Q, int n, int grid_size = kDefaultGrid,
                          int theta_grid = 256);

/// log of the 1D eigenvalue of the order-n truncated fold coupling.
double truncated_fold_log_lambda(const StripSymbol& sym, int n, int theta_grid = 256);

struct EigenReport {
  double log_lambda_fourier = 0.0;
  double log_lambda_1d_we = 0.0;
  double log_lambda_prime_integral = 0.0;
  std::vector<std::pair<int, double>> torus_per_face;   // (p, log Z / p^2)
  std::vector<std::pair<int, double>> szego_sequence;   // (n, ratio)
  double factorization_residual = 0.0;  // |1d + prime - fourier|
};

EigenReport eigen_report(const FaceOperator& Q, int grid_size = kDefaultGrid,
                         const std::vector<int>& torus_sizes = {8, 16, 32, 64},
                         const std::vector<int>& szego_orders = {16, 32, 64});

}  // namespace gmrf
