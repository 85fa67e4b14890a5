#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gmrf/errors.hpp"

namespace gmrf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Relative threshold under which an eliminated pivot block is rejected.
inline constexpr double kPivotTol = 1e-12;
// Relative Hermitian-asymmetry tolerance accepted at construction.
inline constexpr double kHermTol = 1e-12;

/// Dense Hermitian matrix. Inputs are symmetrized (M + M*)/2 on
/// construction; asymmetry beyond kHermTol * max|entry| is reported on
/// stderr once (quadrature-built matrices carry rounding asymmetry).
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }

  static HermitianMatrix identity(int n) { return HermitianMatrix(Matrix::Identity(n, n)); }

 private:
  Matrix m_;
};

/// Ordered block partition of a square matrix, with one label per block.
struct BlockLayout {
  std::vector<int> sizes;
  std::vector<std::string> labels;

  int blocks() const { return static_cast<int>(sizes.size()); }
  int dim() const;
  int offset(int block) const;
  int find(const std::string& label) const;  // throws LayoutMismatch if absent
  std::vector<int> indices_of(const std::vector<std::string>& labels) const;
};

struct LduFactors {
  Matrix lower;     // unit lower-triangular (block sense, kept-then-eliminated order)
  Matrix diagonal;  // block diag(M/M_kk, M_kk)
  Matrix upper;     // unit upper-triangular
  std::vector<int> permutation;  // scalar indices, kept first then eliminated
};

// Index-level workhorses shared by every module. `keep`/`elim` partition
// 0..M.rows()-1. The eliminated diagonal block is guarded: its smallest
// eigenvalue magnitude must exceed kPivotTol times the largest.
Matrix schur_complement_indices(const Matrix& M, const std::vector<int>& keep,
                                const std::vector<int>& elim);

HermitianMatrix schur_complement(const HermitianMatrix& M, const BlockLayout& layout,
                                 const std::vector<std::string>& eliminated);

LduFactors ldu(const HermitianMatrix& M, const BlockLayout& layout,
               const std::vector<std::string>& eliminated);

bool is_positive_definite(const HermitianMatrix& M, double tol = kPivotTol);

double log_det(const HermitianMatrix& M);
double log_det(const Matrix& hermitian_pd);

/// One summand of join(): `block_targets[i]` is the layout block receiving
/// the i-th block of the summand.
struct JoinSummand {
  HermitianMatrix matrix;
  std::vector<int> summand_sizes;
  std::vector<int> block_targets;
};

HermitianMatrix join(const std::vector<JoinSummand>& summands, const BlockLayout& layout);

// Smallest/largest eigenvalue of a Hermitian matrix (dense solve).
double min_eigenvalue(const Matrix& hermitian);
double max_abs_eigenvalue(const Matrix& hermitian);

double spectral_radius(const Matrix& m);

}  // namespace gmrf
