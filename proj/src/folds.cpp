#include "gmrf/folds.hpp"

#include <cmath>

namespace gmrf {

double HalfLineOperator::fitted_decay() const {
  // log-linear fit of the first super-diagonal band norms
  std::vector<double> lognorm;
  for (int s = 0; s < n; ++s) {
    double m = 0.0;
    for (int i = 0; i + s < n; ++i) m = std::max(m, block(i, i + s).cwiseAbs().maxCoeff());
    if (m < 1e-300) break;
    lognorm.push_back(std::log(m));
  }
  if (lognorm.size() < 2) return 0.0;
  double num = 0.0, den = 0.0;
  const double s_mean = (lognorm.size() - 1) / 2.0;
  double l_mean = 0.0;
  for (double v : lognorm) l_mean += v;
  l_mean /= lognorm.size();
  for (size_t s = 0; s < lognorm.size(); ++s) {
    num += (s - s_mean) * (lognorm[s] - l_mean);
    den += (s - s_mean) * (s - s_mean);
  }
  return std::exp(num / den);
}

namespace {

bool near_side(Side s) { return s == Side::W || s == Side::S; }

HalfLineOperator from_coeffs(const SymbolFunction& sym, Side side, int n, bool hankel_part,
                             double sign_hankel) {
  const int d = sym.rows();
  HalfLineOperator out;
  out.side = side;
  out.d = d;
  out.n = n;
  out.matrix = Matrix::Zero(n * d, n * d);
  const bool near = near_side(side);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Matrix blk = sym.fourier(near ? j - i : i - j);
      if (hankel_part) {
        const int hk = near ? -(i + j + 1) : (i + j + 1);
        blk = hankel_part && sign_hankel == 0.0 ? sym.fourier(hk)
                                                : blk + sign_hankel * sym.fourier(hk);
      }
      out.matrix.block(i * d, j * d, d, d) = blk;
    }
  }
  return out;
}

}  // namespace

HalfLineOperator toeplitz(const SymbolFunction& sym, Side side, int n) {
  return from_coeffs(sym, side, n, false, 0.0);
}

HalfLineOperator hankel(const SymbolFunction& sym, Side side, int n) {
  return from_coeffs(sym, side, n, true, 0.0);
}

HalfLineOperator fold(const SymbolFunction& sym, Side side, int n) {
  if (!sym.even_on_grid(1e-10) || !sym.hermitian_on_grid(1e-10))
    throw NotEven("fold: positivity needs an even Hermitian symbol");
  return from_coeffs(sym, side, n, true, -1.0);
}

HalfLineOperator fold_plus(const SymbolFunction& sym, Side side, int n) {
  if (!sym.even_on_grid(1e-10) || !sym.hermitian_on_grid(1e-10))
    throw NotEven("fold_plus: positivity needs an even Hermitian symbol");
  return from_coeffs(sym, side, n, true, 1.0);
}

Matrix u_transverse(const FaceOperator& Q, Side side, int n) {
  if (!Q.is_dihedral())
    throw NotDihedral("u_transverse: displayed formula holds for dihedral weights");
  Matrix Kc(2 * Q.d2, 2 * Q.d2);
  Kc.block(0, 0, Q.d2, Q.d2) = Q.block(Side::W, Side::W);
  Kc.block(0, Q.d2, Q.d2, Q.d2) = Q.block(Side::W, Side::E);
  Kc.block(Q.d2, 0, Q.d2, Q.d2) = Q.block(Side::E, Side::W);
  Kc.block(Q.d2, Q.d2, Q.d2, Q.d2) = Q.block(Side::E, Side::E);
  const WPair W = w_via_fourier(EdgeCoupling::from_matrix(Q.d2, Kc));
  if (spectral_radius(W.WL) >= 1.0 - 1e-8)
    throw AssumptionViolated("u_transverse: W^L is not a strict contraction");
  const Matrix U = Q.block(Side::S, Side::W);
  const int d = Q.d1;
  (void)side;  // dihedral invariance: all sides share the same rows
  Matrix out = Matrix::Zero(n * d, Q.d2);
  Matrix pw = Matrix::Identity(Q.d2, Q.d2) + W.WL;
  for (int k = 0; k < n; ++k) {
    out.block(k * d, 0, d, Q.d2) = U * pw;
    pw = pw * W.WL;
  }
  return out;
}

Matrix HalfStripForm::assembled() const {
  const int nl = n * dline;
  const int nc = w * dcut;
  Matrix out(2 * nl + nc, 2 * nl + nc);
  out.block(0, 0, nl, nl) = line_ff.matrix;
  out.block(0, nl, nl, nl) = line_fs.matrix;
  out.block(nl, 0, nl, nl) = line_sf.matrix;
  out.block(nl, nl, nl, nl) = line_ss.matrix;
  out.block(0, 2 * nl, nl, nc) = first_cut;
  out.block(nl, 2 * nl, nl, nc) = second_cut;
  out.block(2 * nl, 0, nc, nl) = first_cut.adjoint();
  out.block(2 * nl, nl, nc, nl) = second_cut.adjoint();
  out.block(2 * nl, 2 * nl, nc, nc) = cut_cut;
  return out;
}

namespace {

// West-side fixed point for a face-like weight on (Ha, Ha, Hb, Hb) with
// block sizes (da, da, db, db) and labels (S, N, W, E). Works for true face
// weights and for p = 1 rectangle forms whose cut space is H2^q.
HalfStripForm build_west(const Matrix& Wm, int da, int db, Side side, int n, int grid,
                         int wcut, int dcut) {
  auto blk = [&](int a, int b) {
    const int off[4] = {0, da, 2 * da, 2 * da + db};
    const int len[4] = {da, da, db, db};
    return Wm.block(off[a], off[b], len[a], len[b]).eval();
  };

  // strip symbol of the weight seen along the infinite axis
  auto sample = [&](Complex u) {
    Matrix phi = blk(2, 2) + blk(3, 3) + u * blk(2, 3) + blk(3, 2) / u;
    Matrix col(2 * da, db), row(db, 2 * da);
    col.block(0, 0, da, db) = blk(0, 2) + u * blk(0, 3);
    col.block(da, 0, da, db) = blk(1, 2) + u * blk(1, 3);
    row.block(0, 0, db, da) = blk(2, 0) + blk(3, 0) / u;
    row.block(0, da, db, da) = blk(2, 1) + blk(3, 1) / u;
    Matrix top(2 * da, 2 * da);
    top.block(0, 0, da, da) = blk(0, 0);
    top.block(0, da, da, da) = blk(0, 1);
    top.block(da, 0, da, da) = blk(1, 0);
    top.block(da, da, da, da) = blk(1, 1);
    return (top - col * phi.inverse() * row).eval();
  };
  SymbolFunction sym = SymbolFunction::from_function(sample, grid);
  if (!sym.even_on_grid(1e-10))
    throw NotEven("halfstrip fixed point: strip symbol is not even (weight lacks reflection symmetry)");

  HalfStripForm hs;
  hs.side = side;
  hs.n = n;
  hs.dline = da;
  hs.w = wcut;
  hs.dcut = dcut;

  auto comp = [&](int a, int b) {
    return sym.map([&](const Matrix& s) { return s.block(a * da, b * da, da, da).eval(); });
  };
  hs.line_ff = fold(comp(0, 0), side, n);
  hs.line_fs = fold(comp(0, 1), side, n);
  hs.line_sf = fold(comp(1, 0), side, n);
  hs.line_ss = fold(comp(1, 1), side, n);

  // 1D invariant boundary of the transverse chain
  Matrix Kc(2 * db, 2 * db);
  Kc.block(0, 0, db, db) = blk(2, 2);
  Kc.block(0, db, db, db) = blk(2, 3);
  Kc.block(db, 0, db, db) = blk(3, 2);
  Kc.block(db, db, db, db) = blk(3, 3);
  const EdgeCoupling K1d = EdgeCoupling::from_matrix(db, Kc);
  const Matrix GL = invariant_boundaries(K1d).GL;
  hs.cut_cut = GL;

  const Matrix KW = GL + blk(2, 2);
  Eigen::FullPivLU<Matrix> lu(KW);
  if (!lu.isInvertible()) throw SingularPivot("halfstrip fixed point: cut pivot singular");
  const Matrix Wp = (-lu.inverse() * blk(2, 3)).eval();
  if (spectral_radius(Wp) >= 1.0 - 1e-8)
    throw AssumptionViolated("halfstrip fixed point: transverse contraction has radius >= 1");

  const Matrix rowS = blk(0, 3) - blk(0, 2) * lu.inverse() * blk(2, 3);
  const Matrix rowN = blk(1, 3) - blk(1, 2) * lu.inverse() * blk(2, 3);
  hs.first_cut = Matrix::Zero(n * da, db);
  hs.second_cut = Matrix::Zero(n * da, db);
  Matrix pw = Matrix::Identity(db, db);
  for (int k = 0; k < n; ++k) {
    hs.first_cut.block(k * da, 0, da, db) = rowS * pw;
    hs.second_cut.block(k * da, 0, da, db) = rowN * pw;
    pw = Wp * pw;
  }
  return hs;
}

}  // namespace

HalfStripForm halfstrip_fixed_point(const FaceOperator& Q, Side side, int n, int grid_size) {
  if (!Q.is_dihedral())
    throw NotDihedral("halfstrip_fixed_point: theorem requires a dihedral face weight");
  // Dihedral invariance makes the four sides share one set of matrices in
  // nearest-to-cut-first storage; only the labels differ.
  HalfStripForm hs = build_west(Q.matrix.mat(), Q.d1, Q.d2, side, n, grid_size, 1, Q.d2);
  hs.side = side;
  return hs;
}

HalfStripForm halfstrip_fixed_point_rect(const RectQuadForm& R, Side side, int n,
                                         int grid_size) {
  if (side != Side::W && side != Side::E)
    throw ShapeMismatch("halfstrip_fixed_point_rect: W/E sides take a (1,q) form");
  if (R.p != 1) throw ShapeMismatch("halfstrip_fixed_point_rect: need p = 1");
  HalfStripForm hs = build_west(R.matrix.mat(), R.d1, R.q * R.d2, side, n, grid_size, R.q, R.d2);
  hs.side = side;
  return hs;
}

Matrix shift_absorb(const Matrix& extended, int n, int d, int p) {
  if (extended.rows() != (n + p) * d)
    throw TruncationExceeded("shift_absorb: extended block has unexpected size");
  return extended.topLeftCorner(n * d, n * d);
}

Matrix shift_absorb_rows(const Matrix& extended_rows, int n, int d, int p) {
  if (extended_rows.rows() != (n + p) * d)
    throw TruncationExceeded("shift_absorb_rows: extended block has unexpected size");
  return extended_rows.topRows(n * d);
}

namespace {

std::vector<int> iota_from(int start, int count) {
  std::vector<int> out(count);
  for (int i = 0; i < count; ++i) out[i] = start + i;
  return out;
}

}  // namespace

HalfStripForm glue_halfstrips_vertical(const HalfStripForm& A, const HalfStripForm& B) {
  if (A.side != B.side || A.n != B.n || A.dline != B.dline || A.dcut != B.dcut)
    throw ShapeMismatch("glue_halfstrips_vertical: incompatible operands");
  const int nl = A.n * A.dline;
  const int ncA = A.w * A.dcut, ncB = B.w * B.dcut;
  // joint: A.first, shared(=A.second=B.first), B.second, A.cut, B.cut
  const int N = 3 * nl + ncA + ncB;
  Matrix M = Matrix::Zero(N, N);
  auto scatter = [&](const Matrix& src, const std::vector<int>& map) {
    for (size_t i = 0; i < map.size(); ++i)
      for (size_t j = 0; j < map.size(); ++j)
        M(map[i], map[j]) += src(static_cast<int>(i), static_cast<int>(j));
  };
  auto cat = [](std::initializer_list<std::vector<int>> parts) {
    std::vector<int> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
  };
  const auto first = iota_from(0, nl), shared = iota_from(nl, nl), second = iota_from(2 * nl, nl);
  const auto cutA = iota_from(3 * nl, ncA), cutB = iota_from(3 * nl + ncA, ncB);
  scatter(A.assembled(), cat({first, shared, cutA}));
  scatter(B.assembled(), cat({shared, second, cutB}));

  std::vector<int> keep = cat({first, second, cutA, cutB});
  const Matrix red = schur_complement_indices(M, keep, shared);

  HalfStripForm out;
  out.side = A.side;
  out.n = A.n;
  out.dline = A.dline;
  out.w = A.w + B.w;
  out.dcut = A.dcut;
  auto hl = [&](const Matrix& m) {
    HalfLineOperator h;
    h.side = A.side;
    h.d = A.dline;
    h.n = A.n;
    h.matrix = m;
    return h;
  };
  out.line_ff = hl(red.block(0, 0, nl, nl));
  out.line_fs = hl(red.block(0, nl, nl, nl));
  out.line_sf = hl(red.block(nl, 0, nl, nl));
  out.line_ss = hl(red.block(nl, nl, nl, nl));
  out.first_cut = red.block(0, 2 * nl, nl, ncA + ncB);
  out.second_cut = red.block(nl, 2 * nl, nl, ncA + ncB);
  out.cut_cut = red.block(2 * nl, 2 * nl, ncA + ncB, ncA + ncB);
  return out;
}

HalfStripForm glue_halfstrip_rect(const HalfStripForm& A, const RectQuadForm& R) {
  const bool horizontal = (A.side == Side::W || A.side == Side::E);
  const int rw = horizontal ? R.q : R.p;   // width along the cut
  const int rp = horizontal ? R.p : R.q;   // extension length absorbed into lines
  const int dre = horizontal ? R.d1 : R.d2;  // dimension of absorbed edges
  if (rw != A.w || dre != A.dline || (horizontal ? R.d2 : R.d1) != A.dcut)
    throw ShapeMismatch("glue_halfstrip_rect: rectangle does not fit the half-strip cut");
  if (rp > A.n - 8) throw TruncationExceeded("glue_halfstrip_rect: extension exceeds truncation margin");

  const int nl = A.n * A.dline;
  const int nc = A.w * A.dcut;
  const int ne = rp * dre;
  // joint: A.first, A.second, R.first-ext, R.second-ext, R.far-cut, shared cut
  const int N = 2 * nl + 2 * ne + 2 * nc;
  Matrix M = Matrix::Zero(N, N);
  const auto aF = iota_from(0, nl), aS = iota_from(nl, nl);
  const auto rF = iota_from(2 * nl, ne), rS = iota_from(2 * nl + ne, ne);
  const auto rFar = iota_from(2 * nl + 2 * ne, nc), shared = iota_from(2 * nl + 2 * ne + nc, nc);
  auto scatter = [&](const Matrix& src, const std::vector<int>& map) {
    for (size_t i = 0; i < map.size(); ++i)
      for (size_t j = 0; j < map.size(); ++j)
        M(map[i], map[j]) += src(static_cast<int>(i), static_cast<int>(j));
  };
  auto cat = [](std::initializer_list<std::vector<int>> parts) {
    std::vector<int> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
  };
  scatter(A.assembled(), cat({aF, aS, shared}));
  // rectangle in canonical layout (S, N, W, E); for a W half-strip the W
  // block is the shared cut and E the new far cut. S/N half-strips use the
  // reflected reading (W/E lines, S or N as cuts).
  if (horizontal) {
    if (A.side == Side::W)
      scatter(R.matrix.mat(), cat({rF, rS, shared, rFar}));
    else
      scatter(R.matrix.mat(), cat({rF, rS, rFar, shared}));
  } else {
    if (A.side == Side::S)
      scatter(R.matrix.mat(), cat({shared, rFar, rF, rS}));
    else
      scatter(R.matrix.mat(), cat({rFar, shared, rF, rS}));
  }

  const Matrix red = schur_complement_indices(M, cat({aF, aS, rF, rS, rFar}), shared);

  // extended lines ordered nearest-cut-first: the new edges reversed, then
  // the old half-line
  const int next = nl + ne;
  std::vector<int> extF(next / A.dline), extS(next / A.dline);
  for (int i = 0; i < rp; ++i) {
    extF[i] = 2 * nl / A.dline + (rp - 1 - i);  // block ids inside `red`
    extS[i] = (2 * nl + ne) / A.dline + (rp - 1 - i);
  }
  for (int i = 0; i < A.n; ++i) {
    extF[rp + i] = i;
    extS[rp + i] = nl / A.dline + i;
  }
  auto expand = [&](const std::vector<int>& blocks) {
    std::vector<int> out;
    for (int b : blocks)
      for (int c = 0; c < A.dline; ++c) out.push_back(b * A.dline + c);
    return out;
  };
  const auto eF = expand(extF), eS = expand(extS);
  const auto far = iota_from(2 * nl + 2 * ne, 0);  // placeholder
  std::vector<int> farIdx = iota_from(2 * (nl + ne), nc);

  auto gather = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix out(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) out(i, j) = red(rows[i], cols[j]);
    return out;
  };

  HalfStripForm out = A;
  auto hl = [&](Matrix m) {
    HalfLineOperator h;
    h.side = A.side;
    h.d = A.dline;
    h.n = A.n;
    h.matrix = std::move(m);
    return h;
  };
  out.line_ff = hl(shift_absorb(gather(eF, eF), A.n, A.dline, rp));
  out.line_fs = hl(shift_absorb(gather(eF, eS), A.n, A.dline, rp));
  out.line_sf = hl(shift_absorb(gather(eS, eF), A.n, A.dline, rp));
  out.line_ss = hl(shift_absorb(gather(eS, eS), A.n, A.dline, rp));
  out.first_cut = shift_absorb_rows(gather(eF, farIdx), A.n, A.dline, rp);
  out.second_cut = shift_absorb_rows(gather(eS, farIdx), A.n, A.dline, rp);
  out.cut_cut = gather(farIdx, farIdx);
  return out;
}

StripComparison glue_opposite_halfstrips(const HalfStripForm& Wf, const HalfStripForm& Ef,
                                         const StripSymbol& sym, int window) {
  if (Wf.n != Ef.n || Wf.dline != Ef.dline || Wf.w != Ef.w || Wf.dcut != Ef.dcut)
    throw ShapeMismatch("glue_opposite_halfstrips: incompatible operands");
  const int nl = Wf.n * Wf.dline;
  const int nc = Wf.w * Wf.dcut;
  const int N = 4 * nl + nc;
  Matrix M = Matrix::Zero(N, N);
  const auto wF = iota_from(0, nl), wS = iota_from(nl, nl);
  const auto eF = iota_from(2 * nl, nl), eS = iota_from(3 * nl, nl);
  const auto cut = iota_from(4 * nl, nc);
  auto scatter = [&](const Matrix& src, const std::vector<int>& map) {
    for (size_t i = 0; i < map.size(); ++i)
      for (size_t j = 0; j < map.size(); ++j)
        M(map[i], map[j]) += src(static_cast<int>(i), static_cast<int>(j));
  };
  auto cat = [](std::initializer_list<std::vector<int>> parts) {
    std::vector<int> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
  };
  scatter(Wf.assembled(), cat({wF, wS, cut}));
  scatter(Ef.assembled(), cat({eF, eS, cut}));

  StripComparison out;
  out.assembled = schur_complement_indices(M, cat({wF, wS, eF, eS}), cut);

  const int d = Wf.dline;
  const int n = Wf.n;
  out.expected = Matrix::Zero(4 * nl, 4 * nl);
  // groups: 0 = (W line, component S), 1 = (W, N), 2 = (E, S), 3 = (E, N)
  auto comp_coeff = [&](int a, int b, int k) {
    return sym.symbol.fourier(k).block(a * d, b * d, d, d).eval();
  };
  auto site = [&](int group, int i) { return group < 2 ? -1 - i : i; };
  auto compo = [&](int group) { return group % 2; };
  double worst = 0.0;
  for (int gr = 0; gr < 4; ++gr) {
    for (int gc = 0; gc < 4; ++gc) {
      const int gro = (gr < 2 ? gr : gr) * 0;  // silence unused warning path
      (void)gro;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const Matrix exp_blk = comp_coeff(compo(gr), compo(gc), site(gr, i) - site(gc, j));
          out.expected.block(gr * nl + i * d, gc * nl + j * d, d, d) = exp_blk;
          if (i <= window && j <= window) {
            const Matrix got = out.assembled.block(gr * nl + i * d, gc * nl + j * d, d, d);
            worst = std::max(worst, (got - exp_blk).cwiseAbs().maxCoeff());
          }
        }
      }
    }
  }
  out.near_cut_residual = worst;
  return out;
}

HalfStripResiduals halfstrip_residuals(const FaceOperator& Q, const HalfStripForm& hs,
                                       int margin) {
  if (!Q.is_dihedral())
    throw NotDihedral("halfstrip_residuals: block equations are stated for dihedral weights");
  const int d = hs.dline;
  const int n = hs.n;
  const int m = n - margin;
  const Matrix QWW = Q.block(Side::W, Side::W), QWE = Q.block(Side::W, Side::E);
  const Matrix QEW = Q.block(Side::E, Side::W), QEE = Q.block(Side::E, Side::E);
  const Matrix KW = hs.cut_cut + QWW;
  const Matrix KWi = KW.inverse();

  HalfStripResiduals r;
  r.cut_block = (hs.cut_cut - (QEE - QEW * KWi * QWE)).cwiseAbs().maxCoeff();

  const std::array<Side, 2> line_sides = {Side::S, Side::N};
  const std::array<const Matrix*, 2> ucols = {&hs.first_cut, &hs.second_cut};
  const std::array<const HalfLineOperator*, 4> lines = {&hs.line_ff, &hs.line_fs, &hs.line_sf,
                                                        &hs.line_ss};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const Matrix& B = lines[2 * a + b]->matrix;
      const Matrix& Ua = *ucols[a];
      const Matrix& Ub = *ucols[b];
      const Matrix Qab = Q.block(line_sides[a], line_sides[b]);
      const Matrix QaW = Q.block(line_sides[a], Side::W);
      const Matrix QWb = Q.block(Side::W, line_sides[b]);
      // D1-conjugated right-hand side of the shift-invariant line equation
      Matrix R = Matrix::Zero(n * d, n * d);
      R.block(0, 0, d, d) = Qab - QaW * KWi * QWb;
      R.block(0, d, d, (n - 1) * d) =
          (-QaW * KWi * Ub.adjoint()).block(0, 0, d, (n - 1) * d);
      R.block(d, 0, (n - 1) * d, d) = (-Ua * KWi * QWb).block(0, 0, (n - 1) * d, d);
      R.block(d, d, (n - 1) * d, (n - 1) * d) =
          (B - Ua * KWi * Ub.adjoint()).block(0, 0, (n - 1) * d, (n - 1) * d);
      r.line_block = std::max(
          r.line_block, (R - B).block(0, 0, m * d, m * d).cwiseAbs().maxCoeff());
    }
    // transverse column equation
    const Matrix& Ua = *ucols[a];
    const Matrix QaE = Q.block(line_sides[a], Side::E);
    const Matrix QaW = Q.block(line_sides[a], Side::W);
    Matrix col = Matrix::Zero(n * d, hs.w * hs.dcut);
    col.block(0, 0, d, hs.w * hs.dcut) = QaE - QaW * KWi * QWE;
    col.block(d, 0, (n - 1) * d, hs.w * hs.dcut) =
        (-Ua * KWi * QWE).block(0, 0, (n - 1) * d, hs.w * hs.dcut);
    r.transverse =
        std::max(r.transverse, (col - Ua).block(0, 0, m * d, hs.w * hs.dcut).cwiseAbs().maxCoeff());
  }
  return r;
}

}  // namespace gmrf
