#include "gmrf/one_dim.hpp"

#include <cmath>

namespace gmrf {

EdgeCoupling EdgeCoupling::from_matrix(int d, Matrix m) {
  if (m.rows() != 2 * d) throw DimensionMismatch("EdgeCoupling: matrix dim != 2d");
  EdgeCoupling K;
  K.d = d;
  K.matrix = HermitianMatrix(std::move(m));
  if (!is_positive_definite(K.matrix))
    throw NotPositiveDefinite("EdgeCoupling: coupling must be positive definite");
  return K;
}

EdgeCoupling EdgeCoupling::scalar(double ll, double lr, double rl, double rr) {
  Matrix m(2, 2);
  m << ll, lr, rl, rr;
  return from_matrix(1, std::move(m));
}

Matrix phi_1d(const EdgeCoupling& K, Complex z) {
  return K.LL() + K.RR() + z * K.LR() + K.RL() / z;
}

namespace {

// det(z phi_K(z)) is a polynomial of degree <= 2d: interpolate on circle
// points and return its roots (near-zero leading coefficients correspond to
// ker K_LR and are deflated away by the caller's rank logic).
std::vector<Complex> chain_roots(const EdgeCoupling& K) {
  const int d = K.d;
  const int Ns = 4 * d + 4;
  std::vector<Complex> vals(Ns);
  for (int m = 0; m < Ns; ++m) {
    const double th = 2.0 * M_PI * m / Ns;
    const Complex z(std::cos(th), std::sin(th));
    vals[m] = std::pow(z, d) * phi_1d(K, z).determinant();
  }
  std::vector<Complex> coeffs(2 * d + 1);
  for (int k = 0; k <= 2 * d; ++k) {
    Complex acc = 0.0;
    for (int m = 0; m < Ns; ++m) {
      const double th = -2.0 * M_PI * k * m / Ns;
      acc += vals[m] * Complex(std::cos(th), std::sin(th));
    }
    coeffs[k] = acc / static_cast<double>(Ns);
  }
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  int lo = 0, hi = 2 * d;
  while (hi > 0 && std::abs(coeffs[hi]) < 1e-11 * scale) --hi;
  while (lo < hi && std::abs(coeffs[lo]) < 1e-11 * scale) ++lo;
  const int deg = hi - lo;
  if (deg <= 0) return {};
  Matrix comp = Matrix::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[lo + i] / coeffs[hi];
  Eigen::ComplexEigenSolver<Matrix> es(comp, false);
  std::vector<Complex> roots;
  for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

Vector kernel_vector(const Matrix& m, double rel_gap_tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const int n = static_cast<int>(sv.size());
  if (n >= 2 && sv(n - 2) < rel_gap_tol * sv(0))
    throw AssumptionViolated("kernel dimension exceeds one at a root");
  return svd.matrixV().col(n - 1);
}

// Null space basis of m at relative threshold.
std::vector<Vector> null_basis(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double scale = sv.size() ? sv(0) : 0.0;
  std::vector<Vector> out;
  for (int i = 0; i < sv.size(); ++i)
    if (scale == 0.0 || sv(i) < rel_tol * scale) out.push_back(svd.matrixV().col(i));
  return out;
}

}  // namespace

WPair w_operators(const EdgeCoupling& K) {
  const int d = K.d;
  const auto roots = chain_roots(K);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (std::abs(std::abs(roots[i]) - 1.0) < 1e-8)
      throw AssumptionViolated("w_operators: root pinned to the unit circle");
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < 1e-6 * std::max(std::abs(roots[i]), 1.0))
        throw AssumptionViolated("w_operators: near-multiple root");
  }

  WPair W;
  std::vector<Vector> out_vecs, in_vecs;
  std::vector<Complex> out_vals, in_vals;
  for (const Complex& z : roots) {
    const Vector eps = kernel_vector(phi_1d(K, z), 1e-6);
    if (std::abs(z) > 1.0) {
      W.outside_roots.push_back({z, eps});
      out_vecs.push_back(eps);
      out_vals.push_back(1.0 / z);
    } else {
      W.inside_roots.push_back({z, eps});
      in_vecs.push_back(eps);
      in_vals.push_back(z);
    }
  }
  // ker K_LR / ker K_RL complete the bases with eigenvalue zero.
  for (const Vector& v : null_basis(K.LR(), 1e-10)) {
    out_vecs.push_back(v);
    out_vals.push_back(0.0);
  }
  for (const Vector& v : null_basis(K.RL(), 1e-10)) {
    in_vecs.push_back(v);
    in_vals.push_back(0.0);
  }
  if (static_cast<int>(out_vecs.size()) != d || static_cast<int>(in_vecs.size()) != d)
    throw AssumptionViolated("w_operators: kernels and roots do not span H");

  auto assemble = [&](const std::vector<Vector>& vecs, const std::vector<Complex>& vals) {
    Matrix E(d, d), D = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      E.col(i) = vecs[i];
      D(i, i) = vals[i];
    }
    Eigen::FullPivLU<Matrix> lu(E);
    if (!lu.isInvertible())
      throw AssumptionViolated("w_operators: kernel basis is singular");
    return (E * D * lu.inverse()).eval();
  };
  W.WL = assemble(out_vecs, out_vals);
  W.WR = assemble(in_vecs, in_vals);
  if (spectral_radius(W.WL) >= 1.0 - 1e-8 || spectral_radius(W.WR) >= 1.0 - 1e-8)
    throw AssumptionViolated("w_operators: W operator not a strict contraction");
  return W;
}

Matrix fourier_phi_inv(const EdgeCoupling& K, int k, int grid_size) {
  Matrix acc = Matrix::Zero(K.d, K.d);
  for (int m = 0; m < grid_size; ++m) {
    const double th = 2.0 * M_PI * m / grid_size;
    const Complex z(std::cos(th), std::sin(th));
    const double ph = -k * th;
    acc += phi_1d(K, z).inverse() * Complex(std::cos(ph), std::sin(ph));
  }
  return acc / static_cast<double>(grid_size);
}

WPair w_via_fourier(const EdgeCoupling& K, int grid_size) {
  const Matrix F0 = fourier_phi_inv(K, 0, grid_size);
  Eigen::FullPivLU<Matrix> lu(F0);
  if (!lu.isInvertible()) throw SingularPivot("w_via_fourier: F_0(phi^-1) is singular");
  WPair W;
  W.WL = fourier_phi_inv(K, 1, grid_size) * lu.inverse();
  W.WR = fourier_phi_inv(K, -1, grid_size) * lu.inverse();
  return W;
}

InvariantBoundaries invariant_boundaries(const EdgeCoupling& K, const WPair& W) {
  InvariantBoundaries g;
  g.GL = K.RR() + K.RL() * W.WL;
  g.GR = K.LL() + K.LR() * W.WR;
  return g;
}

InvariantBoundaries invariant_boundaries(const EdgeCoupling& K) {
  return invariant_boundaries(K, w_via_fourier(K));
}

namespace {

void check_half(const Matrix& m, int d) {
  if (m.rows() != 2 * d || m.cols() != 2 * d)
    throw DimensionMismatch("schur_1d: operand has wrong dimension");
}

}  // namespace

Matrix schur_1d(const Matrix& A, const Matrix& B) {
  const int d = static_cast<int>(A.rows()) / 2;
  check_half(A, d);
  check_half(B, d);
  const Matrix T = A.block(d, d, d, d) + B.block(0, 0, d, d);
  Eigen::FullPivLU<Matrix> lu(T);
  if (!lu.isInvertible()) throw SingularPivot("schur_1d: middle block singular");
  const Matrix Ti = lu.inverse();
  Matrix out(2 * d, 2 * d);
  out.block(0, 0, d, d) = A.block(0, 0, d, d) - A.block(0, d, d, d) * Ti * A.block(d, 0, d, d);
  out.block(0, d, d, d) = -A.block(0, d, d, d) * Ti * B.block(0, d, d, d);
  out.block(d, 0, d, d) = -B.block(d, 0, d, d) * Ti * A.block(d, 0, d, d);
  out.block(d, d, d, d) = B.block(d, d, d, d) - B.block(d, 0, d, d) * Ti * B.block(0, d, d, d);
  return out;
}

Matrix schur_1d_left(const Matrix& G, const Matrix& K) {
  const int d = static_cast<int>(G.rows());
  check_half(K, d);
  const Matrix T = K.block(0, 0, d, d) + G;
  Eigen::FullPivLU<Matrix> lu(T);
  if (!lu.isInvertible()) throw SingularPivot("schur_1d_left: pivot singular");
  return K.block(d, d, d, d) - K.block(d, 0, d, d) * lu.inverse() * K.block(0, d, d, d);
}

Matrix schur_1d_right(const Matrix& K, const Matrix& G) {
  const int d = static_cast<int>(G.rows());
  check_half(K, d);
  const Matrix T = K.block(d, d, d, d) + G;
  Eigen::FullPivLU<Matrix> lu(T);
  if (!lu.isInvertible()) throw SingularPivot("schur_1d_right: pivot singular");
  return K.block(0, 0, d, d) - K.block(0, d, d, d) * lu.inverse() * K.block(d, 0, d, d);
}

Vector conditional_profile(const EdgeCoupling& K, const Vector& x0, const Vector& xn, int n,
                           int k) {
  const int d = K.d;
  if (k == 0) return x0;
  if (k == n) return xn;
  const WPair W = w_operators(K);
  std::vector<RootRecord> all = W.outside_roots;
  all.insert(all.end(), W.inside_roots.begin(), W.inside_roots.end());
  // a fully decoupled chain has no spectral modes and zero interior profile
  if (all.empty() && K.LR().cwiseAbs().maxCoeff() < 1e-14) return Vector::Zero(d);
  if (static_cast<int>(all.size()) != 2 * d)
    throw AssumptionViolated("conditional_profile: chain has fewer than 2d spectral modes");
  Matrix basis(2 * d, 2 * d);
  for (int i = 0; i < 2 * d; ++i) {
    basis.block(0, i, d, 1) = all[i].kernel;
    basis.block(d, i, d, 1) = std::pow(all[i].z, n) * all[i].kernel;
  }
  Vector rhs(2 * d);
  rhs.segment(0, d) = x0;
  rhs.segment(d, d) = xn;
  Eigen::FullPivLU<Matrix> lu(basis);
  if (!lu.isInvertible())
    throw AssumptionViolated("conditional_profile: boundary decomposition ill-posed");
  const Vector alpha = lu.solve(rhs);
  Vector out = Vector::Zero(d);
  for (int i = 0; i < 2 * d; ++i) out += alpha(i) * std::pow(all[i].z, k) * all[i].kernel;
  return out;
}

}  // namespace gmrf
