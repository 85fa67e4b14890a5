#include "gmrf/strips.hpp"

#include <cmath>

namespace gmrf {

namespace {

Matrix strip_sample(const FaceOperator& Q, Direction dir, Complex u) {
  if (dir == Direction::WE) {
    const Matrix ph = psi_h(Q, u);
    const int d1 = Q.d1, d2 = Q.d2;
    const Matrix A = ph.block(0, 0, 2 * d1, 2 * d1);
    const Matrix B = ph.block(0, 2 * d1, 2 * d1, d2);
    const Matrix D = ph.block(2 * d1, 2 * d1, d2, d2);
    return A - B * D.inverse() * B.adjoint();
  }
  const Matrix pv = psi_v(Q, u);
  const int d1 = Q.d1, d2 = Q.d2;
  const Matrix A = pv.block(d1, d1, 2 * d2, 2 * d2);
  const Matrix B = pv.block(d1, 0, 2 * d2, d1);
  const Matrix D = pv.block(0, 0, d1, d1);
  return A - B * D.inverse() * B.adjoint();
}

}  // namespace

StripSymbol strip_symbol(const FaceOperator& Q, Direction dir, int grid_size) {
  StripSymbol s;
  s.direction = dir;
  s.d = dir == Direction::WE ? Q.d1 : Q.d2;
  s.symbol = SymbolFunction::from_function(
      [&](Complex u) { return strip_sample(Q, dir, u); }, grid_size);
  for (int m = 0; m < grid_size; ++m)
    if (min_eigenvalue(s.symbol.sample(m)) <= 0)
      throw NotPositiveDefinite("strip_symbol: symbol not PD on the grid");
  return s;
}

HermitianMatrix cylinder_form(const FaceOperator& Q, int p, Direction dir) {
  if (p < 1) throw ShapeMismatch("cylinder_form: need p >= 1");
  // For WE: p faces in a row, vertical edges identified cyclically.
  const int dlong = dir == Direction::WE ? Q.d1 : Q.d2;   // boundary edge dim
  const int dwrap = dir == Direction::WE ? Q.d2 : Q.d1;   // eliminated ring dim
  const int nb = 2 * p * dlong;
  const int nw = p * dwrap;
  Matrix M = Matrix::Zero(nb + nw, nb + nw);
  for (int i = 0; i < p; ++i) {
    // face edge order (S, N, W, E) for WE; (W, E, S, N) for SN rings.
    std::vector<int> map;
    auto push = [&](int base, int dim) {
      for (int c = 0; c < dim; ++c) map.push_back(base + c);
    };
    if (dir == Direction::WE) {
      push(i * dlong, dlong);                       // S_i
      push(p * dlong + i * dlong, dlong);           // N_i
      push(nb + i * dwrap, dwrap);                  // ring edge i (west of face i)
      push(nb + ((i + 1) % p) * dwrap, dwrap);      // ring edge i+1
    } else {
      push(nb + i * dwrap, dwrap);                  // S ring edge
      push(nb + ((i + 1) % p) * dwrap, dwrap);      // N ring edge
      push(i * dlong, dlong);                       // W_i
      push(p * dlong + i * dlong, dlong);           // E_i
    }
    const Matrix& Qm = Q.matrix.mat();
    for (size_t r = 0; r < map.size(); ++r)
      for (size_t c = 0; c < map.size(); ++c)
        M(map[r], map[c]) += Qm(static_cast<int>(r), static_cast<int>(c));
  }
  std::vector<int> keep(nb), elim(nw);
  for (int i = 0; i < nb; ++i) keep[i] = i;
  for (int i = 0; i < nw; ++i) elim[i] = nb + i;
  return HermitianMatrix(schur_complement_indices(M, keep, elim));
}

Matrix cylinder_block(const FaceOperator& Q, int p, int k, Direction dir) {
  const double th = 2.0 * M_PI * k / p;
  return strip_sample(Q, dir, Complex(std::cos(th), std::sin(th)));
}

StripSymbol strip_schur(const StripSymbol& A, const StripSymbol& B) {
  if (A.direction != B.direction || A.symbol.grid_size() != B.symbol.grid_size() ||
      A.d != B.d)
    throw ShapeMismatch("strip_schur: symbols must share direction, grid and dimension");
  std::vector<Matrix> out(A.symbol.grid_size());
  for (int m = 0; m < A.symbol.grid_size(); ++m)
    out[m] = schur_1d(A.symbol.sample(m), B.symbol.sample(m));
  StripSymbol s;
  s.direction = A.direction;
  s.d = A.d;
  s.symbol = SymbolFunction(std::move(out));
  return s;
}

SymbolFunction w_hat(const FaceOperator& Q, Side side, int grid_size) {
  // S/N look at the (1,1) block of Psi^{-1} in the second variable,
  // W/E at the (2,2) block in the first variable.
  const bool horiz_boundary = (side == Side::S || side == Side::N);
  const Axis integrated = horiz_boundary ? Axis::Second : Axis::First;
  const int order = (side == Side::S || side == Side::W) ? 1 : -1;
  const SymbolFunction c0 = partial_fourier(Q, integrated, 0, grid_size);
  const SymbolFunction c1 = partial_fourier(Q, integrated, order, grid_size);
  const int off = horiz_boundary ? 0 : Q.d1;
  const int dim = horiz_boundary ? Q.d1 : Q.d2;

  std::vector<Matrix> out(grid_size);
  for (int m = 0; m < grid_size; ++m) {
    const Matrix den = c0.sample(m).block(off, off, dim, dim);
    Eigen::FullPivLU<Matrix> lu(den);
    if (!lu.isInvertible())
      throw SingularPivot("w_hat: zeroth partial Fourier block singular on the grid");
    out[m] = c1.sample(m).block(off, off, dim, dim) * lu.inverse();
    if (spectral_radius(out[m]) >= 1.0 - 1e-8)
      throw AssumptionViolated("w_hat: W symbol not a strict contraction on the grid");
  }
  return SymbolFunction(std::move(out));
}

HalfPlaneSymbol halfplane_symbol(const FaceOperator& Q, Side side, int grid_size) {
  const bool horiz_boundary = (side == Side::S || side == Side::N);
  const StripSymbol strip =
      strip_symbol(Q, horiz_boundary ? Direction::WE : Direction::SN, grid_size);
  const SymbolFunction w = w_hat(Q, side, grid_size);
  const int d = strip.d;

  std::vector<Matrix> out(grid_size);
  for (int m = 0; m < grid_size; ++m) {
    const Matrix& K = strip.symbol.sample(m);
    // Side::S / Side::W give the left boundary weight G_L = K_RR + K_RL W^L;
    // the opposite sides give G_R.
    const bool left = (side == Side::S || side == Side::W);
    const Matrix g = left ? (K.block(d, d, d, d) + K.block(d, 0, d, d) * w.sample(m)).eval()
                          : (K.block(0, 0, d, d) + K.block(0, d, d, d) * w.sample(m)).eval();
    out[m] = g;
  }
  HalfPlaneSymbol hp;
  hp.side = side;
  hp.d = d;
  hp.symbol = SymbolFunction(std::move(out));
  hp.w_symbol = w;
  return hp;
}

double halfplane_fixed_point_residual(const StripSymbol& strip, const HalfPlaneSymbol& hp) {
  double worst = 0.0;
  const bool left = (hp.side == Side::S || hp.side == Side::W);
  for (int m = 0; m < strip.symbol.grid_size(); ++m) {
    const Matrix& K = strip.symbol.sample(m);
    const Matrix& g = hp.symbol.sample(m);
    const Matrix r = left ? schur_1d_left(g, K) : schur_1d_right(K, g);
    worst = std::max(worst, (r - g).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace gmrf
