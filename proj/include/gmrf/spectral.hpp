#pragma once

#include <functional>
#include <vector>

#include "gmrf/face_weight.hpp"

namespace gmrf {

// Quadrature tolerance for Fourier coefficients (absolute, per entry).
inline constexpr double kQuadTol = 1e-12;
inline constexpr int kDefaultGrid = 256;

/// Matrix-valued function on the unit circle: samples at the M-th roots of
/// unity plus cached Fourier coefficients by trapezoidal quadrature
/// (spectrally accurate for the analytic symbols used here).
class SymbolFunction {
 public:
  SymbolFunction() = default;
  SymbolFunction(std::vector<Matrix> samples);

  static SymbolFunction from_function(const std::function<Matrix(Complex)>& fn, int grid_size);

  int grid_size() const { return static_cast<int>(samples_.size()); }
  int rows() const { return samples_.empty() ? 0 : static_cast<int>(samples_[0].rows()); }
  int cols() const { return samples_.empty() ? 0 : static_cast<int>(samples_[0].cols()); }
  const Matrix& sample(int m) const { return samples_[m]; }
  static Complex node(int m, int grid_size);

  Matrix fourier(int k) const;  // F_k, cached
  bool hermitian_on_grid(double tol = 1e-12) const;
  bool even_on_grid(double tol = 1e-12) const;  // samples at u and conj(u) equal

  SymbolFunction map(const std::function<Matrix(const Matrix&)>& f) const;

 private:
  std::vector<Matrix> samples_;
  mutable std::vector<Matrix> cache_;
  mutable std::vector<char> cached_;
};

/// Fourier coefficients C_{k,l} of Psi^{-1} for |k| <= kmax, |l| <= lmax.
class FourierTable {
 public:
  FourierTable() = default;
  FourierTable(int kmax, int lmax, std::vector<Matrix> data);

  int kmax() const { return kmax_; }
  int lmax() const { return lmax_; }
  const Matrix& coeff(int k, int l) const;
  Matrix block(int k, int l, int i, int j, int d1, int d2) const;

 private:
  int kmax_ = 0, lmax_ = 0;
  std::vector<Matrix> data_;
};

Matrix psi(const FaceOperator& Q, Complex z, Complex w);
Matrix psi_h(const FaceOperator& Q, Complex z);
Matrix psi_v(const FaceOperator& Q, Complex w);
Matrix phi_we(const FaceOperator& Q, Complex z);
Matrix phi_sn(const FaceOperator& Q, Complex w);

/// True iff Psi, Psi_h, Psi_v, phi_WE, phi_SN are positive definite at every
/// grid point (M x M for Psi).
bool torus_positivity_check(const FaceOperator& Q, int grid_size = kDefaultGrid);

/// C_{k,l} with the grid doubled until the max entry change is below
/// kQuadTol; throws QuadratureNotConverged past grid 4096.
FourierTable fourier_table(const FaceOperator& Q, int kmax, int lmax,
                           int grid_size = kDefaultGrid);

enum class Axis { First, Second };

/// Partial Fourier coefficient C_{k,.} (Axis::First integrates the first
/// variable) or C_{.,k} as a function of the remaining variable.
SymbolFunction partial_fourier(const FaceOperator& Q, Axis integrated, int k,
                               int grid_size = kDefaultGrid);

/// log Lambda = (d1+d2) log 2pi - (1/4pi^2) \int\int log det Psi.
double free_energy(const FaceOperator& Q, int grid_size = kDefaultGrid);

struct SliceRoot {
  Complex location;  // root of det Psi along the slice
  Vector kernel;     // unit kernel vector of Psi at the root
};

/// Roots in C* of det Psi_Q(u, .) (Axis::Second varies w) or (., u), with
/// kernels; enforces the generic-spectral-curve assumption.
std::vector<SliceRoot> spectral_slice(const FaceOperator& Q, Axis varying, Complex u);

}  // namespace gmrf
