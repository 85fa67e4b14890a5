#include "gmrf/linalg.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>

namespace gmrf {

HermitianMatrix::HermitianMatrix(Matrix m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("HermitianMatrix: not square");
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (scale > 0 && asym > kHermTol * scale) {
    std::cerr << "warning: symmetrizing matrix with relative asymmetry " << asym / scale << "\n";
  }
  m_ = 0.5 * (m + m.adjoint().eval());
}

int BlockLayout::dim() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }

int BlockLayout::offset(int block) const {
  int off = 0;
  for (int b = 0; b < block; ++b) off += sizes[b];
  return off;
}

int BlockLayout::find(const std::string& label) const {
  for (int b = 0; b < blocks(); ++b)
    if (labels[b] == label) return b;
  throw LayoutMismatch("BlockLayout: no block labelled '" + label + "'");
}

std::vector<int> BlockLayout::indices_of(const std::vector<std::string>& which) const {
  std::vector<int> out;
  for (const auto& lab : which) {
    const int b = find(lab);
    const int off = offset(b);
    for (int i = 0; i < sizes[b]; ++i) out.push_back(off + i);
  }
  return out;
}

namespace {

void check_pivot(const Matrix& block) {
  if (block.rows() == 0) return;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (block + block.adjoint().eval()),
                                           Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lo = ev.cwiseAbs().minCoeff();
  const double hi = ev.cwiseAbs().maxCoeff();
  if (hi == 0.0 || lo < kPivotTol * hi)
    throw SingularPivot("eliminated block is singular to working precision");
}

std::vector<int> complement(int n, const std::vector<int>& subset) {
  std::vector<char> in(n, 0);
  for (int i : subset) in[i] = 1;
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

}  // namespace

Matrix schur_complement_indices(const Matrix& M, const std::vector<int>& keep,
                                const std::vector<int>& elim) {
  const int nk = static_cast<int>(keep.size());
  const int ne = static_cast<int>(elim.size());
  Matrix A(nk, nk), B(nk, ne), D(ne, ne);
  for (int i = 0; i < nk; ++i)
    for (int j = 0; j < nk; ++j) A(i, j) = M(keep[i], keep[j]);
  for (int i = 0; i < nk; ++i)
    for (int j = 0; j < ne; ++j) B(i, j) = M(keep[i], elim[j]);
  for (int i = 0; i < ne; ++i)
    for (int j = 0; j < ne; ++j) D(i, j) = M(elim[i], elim[j]);
  if (ne == 0) return A;
  check_pivot(D);
  return A - B * D.ldlt().solve(B.adjoint().eval());
}

HermitianMatrix schur_complement(const HermitianMatrix& M, const BlockLayout& layout,
                                 const std::vector<std::string>& eliminated) {
  if (layout.dim() != M.dim()) throw LayoutMismatch("schur_complement: layout/dim mismatch");
  const auto elim = layout.indices_of(eliminated);
  const auto keep = complement(M.dim(), elim);
  return HermitianMatrix(schur_complement_indices(M.mat(), keep, elim));
}

LduFactors ldu(const HermitianMatrix& M, const BlockLayout& layout,
               const std::vector<std::string>& eliminated) {
  if (layout.dim() != M.dim()) throw LayoutMismatch("ldu: layout/dim mismatch");
  const auto elim = layout.indices_of(eliminated);
  const auto keep = complement(M.dim(), elim);
  const int nk = static_cast<int>(keep.size());
  const int ne = static_cast<int>(elim.size());
  const int n = nk + ne;

  std::vector<int> perm(keep);
  perm.insert(perm.end(), elim.begin(), elim.end());
  Matrix P(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P(i, j) = M.mat()(perm[i], perm[j]);

  const Matrix Dkk = P.block(nk, nk, ne, ne);
  if (ne > 0) check_pivot(Dkk);
  const Matrix Bke = P.block(0, nk, nk, ne);
  const Matrix comp =
      ne > 0 ? (P.block(0, 0, nk, nk) - Bke * Dkk.ldlt().solve(Bke.adjoint().eval())).eval()
             : P.block(0, 0, nk, nk).eval();

  LduFactors f;
  f.permutation = perm;
  f.lower = Matrix::Identity(n, n);
  f.upper = Matrix::Identity(n, n);
  f.diagonal = Matrix::Zero(n, n);
  f.diagonal.block(0, 0, nk, nk) = comp;
  f.diagonal.block(nk, nk, ne, ne) = Dkk;
  if (ne > 0) {
    f.lower.block(0, nk, nk, ne) = Bke * Dkk.inverse();
    f.upper.block(nk, 0, ne, nk) = Dkk.inverse() * Bke.adjoint();
  }
  return f;
}

bool is_positive_definite(const HermitianMatrix& M, double tol) {
  if (M.dim() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Matrix> es(M.mat(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return ev.minCoeff() > tol * ev.cwiseAbs().maxCoeff();
}

double log_det(const Matrix& hermitian_pd) {
  if (hermitian_pd.rows() == 0) return 0.0;
  Eigen::LDLT<Matrix> ldlt(hermitian_pd);
  if (ldlt.info() != Eigen::Success)
    throw NotPositiveDefinite("log_det: factorization failed");
  double out = 0.0;
  for (int i = 0; i < hermitian_pd.rows(); ++i) {
    const double d = ldlt.vectorD()(i).real();
    if (d <= 0.0) throw NotPositiveDefinite("log_det: nonpositive pivot");
    out += std::log(d);
  }
  return out;
}

double log_det(const HermitianMatrix& M) { return log_det(M.mat()); }

HermitianMatrix join(const std::vector<JoinSummand>& summands, const BlockLayout& layout) {
  Matrix out = Matrix::Zero(layout.dim(), layout.dim());
  for (const auto& s : summands) {
    if (static_cast<int>(s.block_targets.size()) != static_cast<int>(s.summand_sizes.size()))
      throw LayoutMismatch("join: targets/sizes mismatch");
    int sdim = std::accumulate(s.summand_sizes.begin(), s.summand_sizes.end(), 0);
    if (sdim != s.matrix.dim()) throw LayoutMismatch("join: summand layout/dim mismatch");
    std::vector<char> used(layout.blocks(), 0);
    std::vector<int> map(sdim);
    int src = 0;
    for (size_t b = 0; b < s.block_targets.size(); ++b) {
      const int tgt = s.block_targets[b];
      if (tgt < 0 || tgt >= layout.blocks() || used[tgt])
        throw LayoutMismatch("join: embedding not injective into layout");
      if (layout.sizes[tgt] != s.summand_sizes[b])
        throw LayoutMismatch("join: block size mismatch");
      used[tgt] = 1;
      const int off = layout.offset(tgt);
      for (int i = 0; i < s.summand_sizes[b]; ++i) map[src + i] = off + i;
      src += s.summand_sizes[b];
    }
    for (int i = 0; i < sdim; ++i)
      for (int j = 0; j < sdim; ++j) out(map[i], map[j]) += s.matrix.mat()(i, j);
  }
  return HermitianMatrix(out);
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (hermitian + hermitian.adjoint().eval()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_abs_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (hermitian + hermitian.adjoint().eval()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace gmrf
