#include "gmrf/harmonic.hpp"

#include <cmath>

namespace gmrf {

Vector HarmonicField::horizontal(int k, int l) const {
  const int e = indexing.horizontal_edge(k, l);
  return values.segment(indexing.scalar_offset(e), indexing.d1);
}

Vector HarmonicField::vertical(int k, int l) const {
  const int e = indexing.vertical_edge(k, l);
  return values.segment(indexing.scalar_offset(e), indexing.d2);
}

HarmonicField solve_harmonic(const FaceOperator& Q, int p, int q, const Vector& boundary) {
  auto [M, idx] = domain_precision(Q, p, q);
  const auto bidx = idx.boundary_scalar_indices();
  const auto iidx = idx.interior_scalar_indices();
  if (boundary.size() != static_cast<int>(bidx.size()))
    throw DimensionMismatch("solve_harmonic: boundary vector has wrong size");

  HarmonicField f;
  f.indexing = idx;
  f.values = Vector::Zero(idx.scalar_dim());
  for (size_t i = 0; i < bidx.size(); ++i) f.values(bidx[i]) = boundary(static_cast<int>(i));
  if (!iidx.empty()) {
    Matrix Mii(iidx.size(), iidx.size());
    for (size_t i = 0; i < iidx.size(); ++i)
      for (size_t j = 0; j < iidx.size(); ++j) Mii(i, j) = M.mat()(iidx[i], iidx[j]);
    Vector rhs = Vector::Zero(iidx.size());
    for (size_t i = 0; i < iidx.size(); ++i)
      for (size_t j = 0; j < bidx.size(); ++j)
        rhs(static_cast<int>(i)) -= M.mat()(iidx[i], bidx[j]) * f.values(bidx[j]);
    Eigen::LDLT<Matrix> ldlt(Mii);
    if (ldlt.info() != Eigen::Success)
      throw SingularPivot("solve_harmonic: interior system not factorizable");
    const Vector sol = ldlt.solve(rhs);
    for (size_t i = 0; i < iidx.size(); ++i) f.values(iidx[i]) = sol(static_cast<int>(i));
  }
  return f;
}

double harmonic_residual(const FaceOperator& Q, const HarmonicField& field) {
  auto [M, idx] = domain_precision(Q, field.indexing.p, field.indexing.q);
  const auto iidx = idx.interior_scalar_indices();
  double worst = 0.0;
  for (int i : iidx) {
    Complex r = 0.0;
    for (int j = 0; j < idx.scalar_dim(); ++j) r += M.mat()(i, j) * field.values(j);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

namespace {

// One-sided gradient D paired with a boundary edge; `outer` is the side of
// the rectangle the edge lies on.
Vector boundary_gradient(const FaceOperator& Q, const HarmonicField& x, Side outer, int k, int l) {
  switch (outer) {
    case Side::S:  // D^(1)_{(k,0),N}
      return Q.block(Side::S, Side::S) * x.horizontal(k, 0) +
             Q.block(Side::S, Side::N) * x.horizontal(k, 1) +
             Q.block(Side::S, Side::W) * x.vertical(k, 0) +
             Q.block(Side::S, Side::E) * x.vertical(k + 1, 0);
    case Side::N:  // D^(1)_{(k,q),S}
      return Q.block(Side::N, Side::S) * x.horizontal(k, l - 1) +
             Q.block(Side::N, Side::N) * x.horizontal(k, l) +
             Q.block(Side::N, Side::W) * x.vertical(k, l - 1) +
             Q.block(Side::N, Side::E) * x.vertical(k + 1, l - 1);
    case Side::W:  // D^(2)_{(0,l),E}
      return Q.block(Side::W, Side::S) * x.horizontal(0, l) +
             Q.block(Side::W, Side::N) * x.horizontal(0, l + 1) +
             Q.block(Side::W, Side::W) * x.vertical(0, l) +
             Q.block(Side::W, Side::E) * x.vertical(1, l);
    case Side::E:  // D^(2)_{(p,l),W}
      return Q.block(Side::E, Side::S) * x.horizontal(k - 1, l) +
             Q.block(Side::E, Side::N) * x.horizontal(k - 1, l + 1) +
             Q.block(Side::E, Side::W) * x.vertical(k - 1, l) +
             Q.block(Side::E, Side::E) * x.vertical(k, l);
  }
  return Vector();
}

Matrix stokes_columns(const FaceOperator& Q, int p, int q,
                      const std::vector<Vector>& boundary_vectors) {
  const int nb = 2 * p * Q.d1 + 2 * q * Q.d2;
  Matrix out(nb, static_cast<int>(boundary_vectors.size()));
  for (size_t col = 0; col < boundary_vectors.size(); ++col) {
    const HarmonicField x = solve_harmonic(Q, p, q, boundary_vectors[col]);
    Vector v(nb);
    int at = 0;
    for (int k = 0; k < p; ++k) {
      v.segment(at, Q.d1) = boundary_gradient(Q, x, Side::S, k, 0);
      at += Q.d1;
    }
    for (int k = 0; k < p; ++k) {
      v.segment(at, Q.d1) = boundary_gradient(Q, x, Side::N, k, q);
      at += Q.d1;
    }
    for (int l = 0; l < q; ++l) {
      v.segment(at, Q.d2) = boundary_gradient(Q, x, Side::W, 0, l);
      at += Q.d2;
    }
    for (int l = 0; l < q; ++l) {
      v.segment(at, Q.d2) = boundary_gradient(Q, x, Side::E, p, l);
      at += Q.d2;
    }
    out.col(static_cast<int>(col)) = v;
  }
  return out;
}

}  // namespace

RectQuadForm stokes_surface_power(const FaceOperator& Q, int p, int q) {
  const int nb = 2 * p * Q.d1 + 2 * q * Q.d2;
  std::vector<Vector> basis(nb, Vector::Zero(nb));
  for (int j = 0; j < nb; ++j) basis[j](j) = 1.0;
  RectQuadForm f;
  f.p = p;
  f.q = q;
  f.d1 = Q.d1;
  f.d2 = Q.d2;
  f.matrix = HermitianMatrix(stokes_columns(Q, p, q, basis));
  return f;
}

std::vector<ZetaMode> zeta_modes(double t, double a, double u, int q) {
  if (a == 0.0)
    throw DegenerateMode("zeta_modes: a = 0 degenerates the mode condition; use the dense solver");
  std::vector<ZetaMode> out;
  for (int r = 1; r <= q; ++r) {
    const double cr = std::cos(M_PI * r / q);
    const double ch = std::cos(M_PI * r / (2.0 * q));
    const double den = 2.0 * a * (t + a * cr) - 2.0 * u * u * (1.0 + cr);
    if (std::abs(den) < 1e-14 * std::max({std::abs(t), std::abs(a), 1.0}))
      throw DegenerateMode("zeta_modes: mode condition degenerates to linear (zeta -> inf)");
    const double s = -(4.0 * t * t + 4.0 * t * a * cr - 4.0 * u * u * (1.0 + cr)) / den;
    const double disc = s * s - 4.0;
    if (disc <= 0.0)
      throw DegenerateMode("zeta_modes: roots collide or leave the real axis");
    const double z1 = (s + std::sqrt(disc)) / 2.0;
    const double z2 = (s - std::sqrt(disc)) / 2.0;
    const double z = std::abs(z1) > std::abs(z2) ? z1 : z2;
    if (std::abs(std::abs(z) - 1.0) < 1e-8)
      throw DegenerateMode("zeta_modes: root pinned to the unit circle");
    ZetaMode m;
    m.r = r;
    m.zeta = z;
    if (r < q) {
      const double diag1 = 2.0 * t + 2.0 * a * cr;
      m.rho_out = -2.0 * u * (1.0 + z) * ch / diag1;
      m.rho_in = -2.0 * u * (1.0 + 1.0 / z) * ch / diag1;
      m.kappa = Complex(1.0 / m.rho_out, 0.0);  // v2/v1 at integer powers, zeta branch
    } else {
      m.kappa = Complex(1.0, 0.0);  // paper convention: the x^(1) component is absent
    }
    out.push_back(m);
  }
  return out;
}

double zeta_mode_residual(double t, double a, double u, int q, const ZetaMode& m) {
  const double cr = std::cos(M_PI * m.r / q);
  const double ch = std::cos(M_PI * m.r / (2.0 * q));
  const double z = m.zeta;
  Matrix cond(2, 2);
  cond << 2.0 * t + 2.0 * a * cr, 2.0 * u * (1.0 + z) * ch, 2.0 * u * (1.0 + 1.0 / z) * ch,
      2.0 * t + a * (z + 1.0 / z);
  Vector kernel(2);
  if (m.r < q)
    kernel << m.rho_out, 1.0;
  else
    kernel << 0.0, 1.0;
  return (cond * kernel).cwiseAbs().maxCoeff();
}

namespace {

// West/East separated solution on scalar-valued fields; S and N follow by
// the diagonal reflection of the dihedral weight.
void sine_we_accumulate(double t, double a, double u, int p, int q, const Vector& west,
                        const Vector& east, HarmonicField& f) {
  const auto modes = zeta_modes(t, a, u, q);
  for (const auto& m : modes) {
    const int r = m.r;
    const double norm = (r == q) ? static_cast<double>(q) : q / 2.0;
    Complex sw = 0.0, se = 0.0;
    for (int l = 0; l < q; ++l) {
      const double sl = std::sin(M_PI * r * (l + 0.5) / q);
      sw += west(l) * sl;
      se += east(l) * sl;
    }
    sw /= norm;
    se /= norm;
    const double z = m.zeta;
    const double zp = std::pow(z, p);
    const double det = zp - 1.0 / zp;
    const Complex ap = (se - sw / zp) / det;
    const Complex am = (sw * zp - se) / det;
    for (int k = 0; k <= p; ++k) {
      const Complex amp2 = ap * std::pow(z, k) + am * std::pow(z, -k);
      for (int l = 0; l < q; ++l) {
        const int e = f.indexing.vertical_edge(k, l);
        f.values(f.indexing.scalar_offset(e)) += amp2 * std::sin(M_PI * r * (l + 0.5) / q);
      }
    }
    if (r < q) {
      for (int k = 0; k < p; ++k) {
        const Complex amp1 =
            ap * m.rho_out * std::pow(z, k) + am * m.rho_in * std::pow(z, -k);
        for (int l = 0; l <= q; ++l) {
          const int e = f.indexing.horizontal_edge(k, l);
          f.values(f.indexing.scalar_offset(e)) += amp1 * std::sin(M_PI * r * l / q);
        }
      }
    }
  }
}

}  // namespace

HarmonicField sine_mode_solution(double t, double a, double u, int p, int q, Side side,
                                 const Vector& side_values) {
  const int len = (side == Side::W || side == Side::E) ? q : p;
  if (side_values.size() != len)
    throw DimensionMismatch("sine_mode_solution: side values have wrong length");

  HarmonicField f;
  f.indexing = EdgeIndexing{p, q, 1, 1};
  f.values = Vector::Zero(f.indexing.scalar_dim());

  if (side == Side::W || side == Side::E) {
    const Vector zero = Vector::Zero(q);
    sine_we_accumulate(t, a, u, p, q, side == Side::W ? side_values : zero,
                       side == Side::E ? side_values : zero, f);
    return f;
  }

  // S/N: solve the reflected problem (p <-> q, horizontal <-> vertical) and
  // transpose the field; the dihedral weight is invariant under the
  // diagonal reflection.
  HarmonicField g;
  g.indexing = EdgeIndexing{q, p, 1, 1};
  g.values = Vector::Zero(g.indexing.scalar_dim());
  const Vector zero = Vector::Zero(p);
  sine_we_accumulate(t, a, u, q, p, side == Side::S ? side_values : zero,
                     side == Side::N ? side_values : zero, g);
  for (int k = 0; k < p; ++k)
    for (int l = 0; l <= q; ++l)
      f.values(f.indexing.scalar_offset(f.indexing.horizontal_edge(k, l))) =
          g.values(g.indexing.scalar_offset(g.indexing.vertical_edge(l, k)));
  for (int k = 0; k <= p; ++k)
    for (int l = 0; l < q; ++l)
      f.values(f.indexing.scalar_offset(f.indexing.vertical_edge(k, l))) =
          g.values(g.indexing.scalar_offset(g.indexing.horizontal_edge(l, k)));
  return f;
}

SplitBlocks split_surface_power(const FaceOperator& Q, int p, int q) {
  const int nd1 = p * Q.d1, nd2 = q * Q.d2;
  const int nb = 2 * nd1 + 2 * nd2;
  const std::array<int, 4> offs = {0, nd1, 2 * nd1, 2 * nd1 + nd2};
  const std::array<int, 4> lens = {nd1, nd1, nd2, nd2};

  SplitBlocks out;
  for (int b = 0; b < 4; ++b) {
    std::vector<Vector> basis;
    for (int j = 0; j < lens[b]; ++j) {
      Vector v = Vector::Zero(nb);
      v(offs[b] + j) = 1.0;
      basis.push_back(v);
    }
    const Matrix cols = stokes_columns(Q, p, q, basis);
    for (int a = 0; a < 4; ++a) out[a][b] = cols.block(offs[a], 0, lens[a], lens[b]);
  }
  return out;
}

Vector harmonic_cut_values(const FaceOperator& Q, int p, int q, int p1, const Vector& boundary) {
  const HarmonicField x = solve_harmonic(Q, p, q, boundary);
  Vector out(q * Q.d2);
  for (int l = 0; l < q; ++l) out.segment(l * Q.d2, Q.d2) = x.vertical(p1, l);
  return out;
}

}  // namespace gmrf
