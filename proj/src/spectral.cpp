#include "gmrf/spectral.hpp"

#include <cmath>

namespace gmrf {

SymbolFunction::SymbolFunction(std::vector<Matrix> samples) : samples_(std::move(samples)) {
  cache_.resize(2 * samples_.size() + 1);
  cached_.assign(2 * samples_.size() + 1, 0);
}

SymbolFunction SymbolFunction::from_function(const std::function<Matrix(Complex)>& fn,
                                             int grid_size) {
  std::vector<Matrix> samples(grid_size);
  for (int m = 0; m < grid_size; ++m) samples[m] = fn(node(m, grid_size));
  return SymbolFunction(std::move(samples));
}

Complex SymbolFunction::node(int m, int grid_size) {
  const double th = 2.0 * M_PI * m / grid_size;
  return Complex(std::cos(th), std::sin(th));
}

Matrix SymbolFunction::fourier(int k) const {
  const int M = grid_size();
  if (std::abs(k) > M / 2)
    throw QuadratureNotConverged("SymbolFunction: coefficient order beyond grid resolution");
  const int slot = k + M;
  if (!cached_[slot]) {
    Matrix acc = Matrix::Zero(rows(), cols());
    for (int m = 0; m < M; ++m) {
      const double th = -2.0 * M_PI * k * m / M;
      acc += samples_[m] * Complex(std::cos(th), std::sin(th));
    }
    cache_[slot] = acc / static_cast<double>(M);
    cached_[slot] = 1;
  }
  return cache_[slot];
}

bool SymbolFunction::hermitian_on_grid(double tol) const {
  for (const auto& s : samples_)
    if ((s - s.adjoint().eval()).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

bool SymbolFunction::even_on_grid(double tol) const {
  const int M = grid_size();
  for (int m = 1; m < M; ++m)
    if ((samples_[m] - samples_[M - m]).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

SymbolFunction SymbolFunction::map(const std::function<Matrix(const Matrix&)>& f) const {
  std::vector<Matrix> out(samples_.size());
  for (size_t m = 0; m < samples_.size(); ++m) out[m] = f(samples_[m]);
  return SymbolFunction(std::move(out));
}

FourierTable::FourierTable(int kmax, int lmax, std::vector<Matrix> data)
    : kmax_(kmax), lmax_(lmax), data_(std::move(data)) {}

const Matrix& FourierTable::coeff(int k, int l) const {
  if (std::abs(k) > kmax_ || std::abs(l) > lmax_)
    throw DimensionMismatch("FourierTable: coefficient out of range");
  return data_[(k + kmax_) * (2 * lmax_ + 1) + (l + lmax_)];
}

Matrix FourierTable::block(int k, int l, int i, int j, int d1, int d2) const {
  const Matrix& c = coeff(k, l);
  const int ro = i == 0 ? 0 : d1;
  const int co = j == 0 ? 0 : d1;
  return c.block(ro, co, i == 0 ? d1 : d2, j == 0 ? d1 : d2);
}

Matrix psi(const FaceOperator& Q, Complex z, Complex w) {
  const int d1 = Q.d1, d2 = Q.d2;
  Matrix out(d1 + d2, d1 + d2);
  out.block(0, 0, d1, d1) = Q.block(Side::S, Side::S) + Q.block(Side::N, Side::N) +
                            w * Q.block(Side::S, Side::N) + Q.block(Side::N, Side::S) / w;
  out.block(d1, d1, d2, d2) = Q.block(Side::W, Side::W) + Q.block(Side::E, Side::E) +
                              z * Q.block(Side::W, Side::E) + Q.block(Side::E, Side::W) / z;
  out.block(0, d1, d1, d2) = Q.block(Side::S, Side::W) + z * Q.block(Side::S, Side::E) +
                             Q.block(Side::N, Side::W) / w + z * Q.block(Side::N, Side::E) / w;
  out.block(d1, 0, d2, d1) = Q.block(Side::W, Side::S) + Q.block(Side::E, Side::S) / z +
                             w * Q.block(Side::W, Side::N) + w * Q.block(Side::E, Side::N) / z;
  return out;
}

Matrix phi_we(const FaceOperator& Q, Complex z) {
  return Q.block(Side::W, Side::W) + Q.block(Side::E, Side::E) + z * Q.block(Side::W, Side::E) +
         Q.block(Side::E, Side::W) / z;
}

Matrix phi_sn(const FaceOperator& Q, Complex w) {
  return Q.block(Side::S, Side::S) + Q.block(Side::N, Side::N) + w * Q.block(Side::S, Side::N) +
         Q.block(Side::N, Side::S) / w;
}

Matrix psi_h(const FaceOperator& Q, Complex z) {
  const int d1 = Q.d1, d2 = Q.d2;
  Matrix out(2 * d1 + d2, 2 * d1 + d2);
  out.block(0, 0, d1, d1) = Q.block(Side::S, Side::S);
  out.block(0, d1, d1, d1) = Q.block(Side::S, Side::N);
  out.block(d1, 0, d1, d1) = Q.block(Side::N, Side::S);
  out.block(d1, d1, d1, d1) = Q.block(Side::N, Side::N);
  out.block(0, 2 * d1, d1, d2) = Q.block(Side::S, Side::W) + z * Q.block(Side::S, Side::E);
  out.block(d1, 2 * d1, d1, d2) = Q.block(Side::N, Side::W) + z * Q.block(Side::N, Side::E);
  out.block(2 * d1, 0, d2, d1) = Q.block(Side::W, Side::S) + Q.block(Side::E, Side::S) / z;
  out.block(2 * d1, d1, d2, d1) = Q.block(Side::W, Side::N) + Q.block(Side::E, Side::N) / z;
  out.block(2 * d1, 2 * d1, d2, d2) = phi_we(Q, z);
  return out;
}

Matrix psi_v(const FaceOperator& Q, Complex w) {
  const int d1 = Q.d1, d2 = Q.d2;
  Matrix out(d1 + 2 * d2, d1 + 2 * d2);
  out.block(0, 0, d1, d1) = phi_sn(Q, w);
  out.block(0, d1, d1, d2) = Q.block(Side::S, Side::W) + Q.block(Side::N, Side::W) / w;
  out.block(0, d1 + d2, d1, d2) = Q.block(Side::S, Side::E) + Q.block(Side::N, Side::E) / w;
  out.block(d1, 0, d2, d1) = Q.block(Side::W, Side::S) + w * Q.block(Side::W, Side::N);
  out.block(d1 + d2, 0, d2, d1) = Q.block(Side::E, Side::S) + w * Q.block(Side::E, Side::N);
  out.block(d1, d1, d2, d2) = Q.block(Side::W, Side::W);
  out.block(d1, d1 + d2, d2, d2) = Q.block(Side::W, Side::E);
  out.block(d1 + d2, d1, d2, d2) = Q.block(Side::E, Side::W);
  out.block(d1 + d2, d1 + d2, d2, d2) = Q.block(Side::E, Side::E);
  return out;
}

bool torus_positivity_check(const FaceOperator& Q, int grid_size) {
  for (int m1 = 0; m1 < grid_size; ++m1) {
    const Complex z = SymbolFunction::node(m1, grid_size);
    if (min_eigenvalue(psi_h(Q, z)) <= 0) return false;
    if (min_eigenvalue(psi_v(Q, z)) <= 0) return false;
    if (min_eigenvalue(phi_we(Q, z)) <= 0) return false;
    if (min_eigenvalue(phi_sn(Q, z)) <= 0) return false;
    for (int m2 = 0; m2 < grid_size; ++m2)
      if (min_eigenvalue(psi(Q, z, SymbolFunction::node(m2, grid_size))) <= 0) return false;
  }
  return true;
}

namespace {

std::vector<Matrix> psi_inverse_grid(const FaceOperator& Q, int M) {
  std::vector<Matrix> grid(static_cast<size_t>(M) * M);
  for (int m1 = 0; m1 < M; ++m1) {
    const Complex z = SymbolFunction::node(m1, M);
    for (int m2 = 0; m2 < M; ++m2)
      grid[static_cast<size_t>(m1) * M + m2] = psi(Q, z, SymbolFunction::node(m2, M)).inverse();
  }
  return grid;
}

std::vector<Matrix> table_at(const FaceOperator& Q, int kmax, int lmax, int M) {
  const auto grid = psi_inverse_grid(Q, M);
  const int d = Q.d1 + Q.d2;
  std::vector<Matrix> out;
  out.reserve((2 * kmax + 1) * (2 * lmax + 1));
  // row sums first so each coefficient costs O(M) instead of O(M^2)
  for (int k = -kmax; k <= kmax; ++k) {
    std::vector<Matrix> rows(M, Matrix::Zero(d, d));
    for (int m1 = 0; m1 < M; ++m1) {
      const double th = -2.0 * M_PI * k * m1 / M;
      const Complex ph(std::cos(th), std::sin(th));
      for (int m2 = 0; m2 < M; ++m2) rows[m2] += grid[static_cast<size_t>(m1) * M + m2] * ph;
    }
    for (int l = -lmax; l <= lmax; ++l) {
      Matrix acc = Matrix::Zero(d, d);
      for (int m2 = 0; m2 < M; ++m2) {
        const double th = -2.0 * M_PI * l * m2 / M;
        acc += rows[m2] * Complex(std::cos(th), std::sin(th));
      }
      out.push_back(acc / (static_cast<double>(M) * M));
    }
  }
  return out;
}

}  // namespace

FourierTable fourier_table(const FaceOperator& Q, int kmax, int lmax, int grid_size) {
  if (!torus_positivity_check(Q, std::min(grid_size, 64)))
    throw NotPositiveDefinite("fourier_table: symbol not positive on the torus");
  auto coarse = table_at(Q, kmax, lmax, grid_size);
  for (int M = 2 * grid_size; M <= 4096; M *= 2) {
    auto fine = table_at(Q, kmax, lmax, M);
    double change = 0.0;
    for (size_t i = 0; i < coarse.size(); ++i)
      change = std::max(change, (fine[i] - coarse[i]).cwiseAbs().maxCoeff());
    if (change < kQuadTol) return FourierTable(kmax, lmax, std::move(fine));
    coarse = std::move(fine);
  }
  throw QuadratureNotConverged("fourier_table: no convergence up to grid 4096");
}

SymbolFunction partial_fourier(const FaceOperator& Q, Axis integrated, int k, int grid_size) {
  const int M = grid_size;
  const auto grid = psi_inverse_grid(Q, M);
  const int d = Q.d1 + Q.d2;
  std::vector<Matrix> samples(M, Matrix::Zero(d, d));
  for (int mi = 0; mi < M; ++mi) {
    const double th = -2.0 * M_PI * k * mi / M;
    const Complex ph(std::cos(th), std::sin(th));
    for (int mu = 0; mu < M; ++mu) {
      const size_t cell = integrated == Axis::First ? static_cast<size_t>(mi) * M + mu
                                                    : static_cast<size_t>(mu) * M + mi;
      samples[mu] += grid[cell] * ph;
    }
  }
  for (auto& s : samples) s /= static_cast<double>(M);
  return SymbolFunction(std::move(samples));
}

namespace {

double free_energy_at(const FaceOperator& Q, int M) {
  double acc = 0.0;
  for (int m1 = 0; m1 < M; ++m1) {
    const Complex z = SymbolFunction::node(m1, M);
    for (int m2 = 0; m2 < M; ++m2)
      acc += log_det(psi(Q, z, SymbolFunction::node(m2, M)));
  }
  return (Q.d1 + Q.d2) * std::log(2.0 * M_PI) - acc / (static_cast<double>(M) * M);
}

}  // namespace

double free_energy(const FaceOperator& Q, int grid_size) {
  if (!torus_positivity_check(Q, std::min(grid_size, 64)))
    throw NotPositiveDefinite("free_energy: symbol not positive on the torus");
  double coarse = free_energy_at(Q, grid_size);
  for (int M = 2 * grid_size; M <= 4096; M *= 2) {
    const double fine = free_energy_at(Q, M);
    if (std::abs(fine - coarse) < kQuadTol) return fine;
    coarse = fine;
  }
  throw QuadratureNotConverged("free_energy: no convergence up to grid 4096");
}

namespace {

// Roots of a polynomial (ascending coefficients) via the balanced companion
// matrix; leading/trailing near-zero coefficients are deflated (roots at
// infinity / zero are dropped).
std::vector<Complex> poly_roots(std::vector<Complex> coeffs) {
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return {};
  int lo = 0, hi = static_cast<int>(coeffs.size()) - 1;
  while (hi > 0 && std::abs(coeffs[hi]) < 1e-11 * scale) --hi;
  while (lo < hi && std::abs(coeffs[lo]) < 1e-11 * scale) ++lo;
  const int deg = hi - lo;
  if (deg <= 0) return {};
  Matrix comp = Matrix::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[lo + i] / coeffs[hi];
  Eigen::ComplexEigenSolver<Matrix> es(comp, false);
  std::vector<Complex> out;
  for (int i = 0; i < deg; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace

std::vector<SliceRoot> spectral_slice(const FaceOperator& Q, Axis varying, Complex u) {
  const int d = Q.d1 + Q.d2;
  // w^d * det Psi is a polynomial of degree <= 2d in the varying parameter;
  // interpolate its coefficients on 4d+1 circle points.
  const int Ns = 4 * d + 4;
  std::vector<Complex> vals(Ns);
  for (int m = 0; m < Ns; ++m) {
    const Complex w = SymbolFunction::node(m, Ns);
    const Matrix P = varying == Axis::Second ? psi(Q, u, w) : psi(Q, w, u);
    vals[m] = std::pow(w, d) * P.determinant();
  }
  std::vector<Complex> coeffs(2 * d + 1, Complex(0, 0));
  for (int k = 0; k <= 2 * d; ++k) {
    Complex acc = 0.0;
    for (int m = 0; m < Ns; ++m) {
      const double th = -2.0 * M_PI * k * m / Ns;
      acc += vals[m] * Complex(std::cos(th), std::sin(th));
    }
    coeffs[k] = acc / static_cast<double>(Ns);
  }
  const auto roots = poly_roots(coeffs);

  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < 1e-6 * std::max(std::abs(roots[i]), 1.0))
        throw AssumptionViolated("spectral_slice: near-multiple root on the slice");

  std::vector<SliceRoot> out;
  for (const Complex& w : roots) {
    const Matrix P = varying == Axis::Second ? psi(Q, u, w) : psi(Q, w, u);
    Eigen::JacobiSVD<Matrix> svd(P, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (d >= 2 && sv(d - 2) < 1e-6 * sv(0))
      throw AssumptionViolated("spectral_slice: kernel dimension exceeds one at a root");
    SliceRoot r;
    r.location = w;
    r.kernel = svd.matrixV().col(d - 1);
    out.push_back(r);
  }
  return out;
}

}  // namespace gmrf
