#include "gmrf/eigenvalue.hpp"

#include <cmath>

namespace gmrf {

double torus_log_z(const FaceOperator& Q, int p, int q) {
  double acc = 0.0;
  for (int k = 0; k < p; ++k) {
    const double th1 = 2.0 * M_PI * k / p;
    const Complex z(std::cos(th1), std::sin(th1));
    for (int l = 0; l < q; ++l) {
      const double th2 = 2.0 * M_PI * l / q;
      acc += log_det(psi(Q, z, Complex(std::cos(th2), std::sin(th2))));
    }
  }
  return (Q.d1 + Q.d2) * p * q * std::log(2.0 * M_PI) - acc;
}

double lambda_1d_we(const FaceOperator& Q) {
  Matrix Kc(2 * Q.d2, 2 * Q.d2);
  Kc.block(0, 0, Q.d2, Q.d2) = Q.block(Side::W, Side::W);
  Kc.block(0, Q.d2, Q.d2, Q.d2) = Q.block(Side::W, Side::E);
  Kc.block(Q.d2, 0, Q.d2, Q.d2) = Q.block(Side::E, Side::W);
  Kc.block(Q.d2, Q.d2, Q.d2, Q.d2) = Q.block(Side::E, Side::E);
  const EdgeCoupling K = EdgeCoupling::from_matrix(Q.d2, Kc);
  const Matrix GL = invariant_boundaries(K).GL;
  const Matrix B = GL + Q.block(Side::W, Side::W);
  return Q.d2 * std::log(2.0 * M_PI) - log_det(0.5 * (B + B.adjoint().eval()));
}

double lambda_1d_we_quadrature(const FaceOperator& Q, int grid_size) {
  double acc = 0.0;
  for (int m = 0; m < grid_size; ++m) {
    const double th = 2.0 * M_PI * m / grid_size;
    acc += log_det(phi_we(Q, Complex(std::cos(th), std::sin(th))));
  }
  return Q.d2 * std::log(2.0 * M_PI) - acc / grid_size;
}

namespace {

double lambda_prime_integral_at(const FaceOperator& Q, int M) {
  double acc = 0.0;
  for (int m1 = 0; m1 < M; ++m1) {
    const Complex z = SymbolFunction::node(m1, M);
    for (int m2 = 0; m2 < M; ++m2) {
      const Matrix P = psi(Q, z, SymbolFunction::node(m2, M));
      const int d1 = Q.d1, d2 = Q.d2;
      const Matrix S = P.block(0, 0, d1, d1) -
                       P.block(0, d1, d1, d2) * P.block(d1, d1, d2, d2).inverse() *
                           P.block(d1, 0, d2, d1);
      acc += log_det(0.5 * (S + S.adjoint().eval()));
    }
  }
  return Q.d1 * std::log(2.0 * M_PI) - acc / (static_cast<double>(M) * M);
}

}  // namespace

double lambda_prime_integral(const FaceOperator& Q, int grid_size) {
  double coarse = lambda_prime_integral_at(Q, grid_size);
  for (int M = 2 * grid_size; M <= 4096; M *= 2) {
    const double fine = lambda_prime_integral_at(Q, M);
    if (std::abs(fine - coarse) < kQuadTol) return fine;
    coarse = fine;
  }
  throw QuadratureNotConverged("lambda_prime_integral: no convergence up to grid 4096");
}

double truncated_fold_log_lambda(const StripSymbol& sym, int n, int theta_grid) {
  const int d = sym.d;
  auto comp = [&](int a, int b) {
    return sym.symbol.map([&](const Matrix& s) { return s.block(a * d, b * d, d, d).eval(); });
  };
  const Matrix Rss = fold(comp(0, 0), Side::W, n).matrix;
  const Matrix Rsn = fold(comp(0, 1), Side::W, n).matrix;
  const Matrix Rns = fold(comp(1, 0), Side::W, n).matrix;
  const Matrix Rnn = fold(comp(1, 1), Side::W, n).matrix;
  double acc = 0.0;
  for (int m = 0; m < theta_grid; ++m) {
    const Complex th = SymbolFunction::node(m, theta_grid);
    const Matrix phi = Rss + Rnn + th * Rsn + Rns / th;
    acc += log_det(0.5 * (phi + phi.adjoint().eval()));
  }
  return n * d * std::log(2.0 * M_PI) - acc / theta_grid;
}

namespace {

// grid able to resolve fold coefficients up to order 2(n+1)
int szego_grid(int n, int grid_size) {
  int g = grid_size;
  while (g < 4 * (n + 2)) g *= 2;
  return g;
}

}  // namespace

double lambda_prime_szego(const FaceOperator& Q, int n, int grid_size, int theta_grid) {
  const StripSymbol sym = strip_symbol(Q, Direction::WE, szego_grid(n, grid_size));
  return truncated_fold_log_lambda(sym, n + 1, theta_grid) -
         truncated_fold_log_lambda(sym, n, theta_grid);
}

EigenReport eigen_report(const FaceOperator& Q, int grid_size,
                         const std::vector<int>& torus_sizes,
                         const std::vector<int>& szego_orders) {
  EigenReport r;
  r.log_lambda_fourier = free_energy(Q, grid_size);
  r.log_lambda_1d_we = lambda_1d_we(Q);
  r.log_lambda_prime_integral = lambda_prime_integral(Q, grid_size);
  r.factorization_residual =
      std::abs(r.log_lambda_1d_we + r.log_lambda_prime_integral - r.log_lambda_fourier);
  for (int p : torus_sizes)
    r.torus_per_face.emplace_back(p, torus_log_z(Q, p, p) / (static_cast<double>(p) * p));
  int max_order = 0;
  for (int n : szego_orders) max_order = std::max(max_order, n);
  const StripSymbol sym = strip_symbol(Q, Direction::WE, szego_grid(max_order, grid_size));
  for (int n : szego_orders)
    r.szego_sequence.emplace_back(
        n, truncated_fold_log_lambda(sym, n + 1) - truncated_fold_log_lambda(sym, n));
  return r;
}

}  // namespace gmrf
