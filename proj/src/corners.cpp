#include "gmrf/corners.hpp"

#include <cmath>

namespace gmrf {

const char* corner_name(Corner c) {
  switch (c) {
    case Corner::SW: return "SW";
    case Corner::SE: return "SE";
    case Corner::NW: return "NW";
    case Corner::NE: return "NE";
  }
  return "?";
}

Matrix CornerForm::assembled() const {
  const int nv = n * dv, nh = n * dh;
  Matrix out(nv + nh, nv + nh);
  out.block(0, 0, nv, nv) = vv.matrix;
  out.block(0, nv, nv, nh) = v_from_h;
  out.block(nv, 0, nh, nv) = v_from_h.adjoint();
  out.block(nv, nv, nh, nh) = hh.matrix;
  return out;
}

CornerForm corner_fixed_point(const FaceOperator& Q, Corner corner, int n, int grid_size) {
  if (!Q.is_dihedral())
    throw NotDihedral("corner_fixed_point: theorem requires a dihedral face weight");
  // Dihedral invariance gives all four corners the same matrices in
  // nearest-to-cut-first storage; build the SW content.
  const HalfPlaneSymbol hpS = halfplane_symbol(Q, Side::S, grid_size);

  CornerForm C;
  C.corner = corner;
  C.n = n;
  C.dv = Q.d2;
  C.dh = Q.d1;
  C.hh = fold(hpS.symbol, Side::W, n);
  C.vv = C.hh;  // dihedral: the W half-plane symbol coincides with the S one
  C.vv.side = Side::S;
  C.vv.d = Q.d2;

  const HalfLineOperator FW = fold(hpS.w_symbol, Side::W, n);
  const Matrix U = u_transverse(Q, Side::W, n);
  C.v_from_h = Matrix::Zero(n * Q.d2, n * Q.d1);
  Matrix acc = Matrix::Identity(n * Q.d1, n * Q.d1) + FW.matrix;
  Matrix pw = Matrix::Identity(n * Q.d1, n * Q.d1);
  for (int k = 0; k < n; ++k) {
    C.v_from_h.block(k * Q.d2, 0, Q.d2, n * Q.d1) = U.adjoint() * (acc * pw);
    pw = pw * FW.matrix;
  }
  return C;
}

namespace {

// D1-conjugation of a block two-by-two [(old line), (new edge)] operator:
// the new edge becomes block 0 and old block i moves to i+1, dropping the
// far block. Mhh: (n d) x (n d); Mhe: (n d) x e; Meh: e x (n d); Mee: e x e.
Matrix d1_conj(const Matrix& Mhh, const Matrix& Mhe, const Matrix& Meh, const Matrix& Mee,
               int n, int dr, int dc) {
  const int e_r = static_cast<int>(Mee.rows());
  const int e_c = static_cast<int>(Mee.cols());
  Matrix R = Matrix::Zero(n * dr, n * dc);
  R.block(0, 0, e_r, e_c) = Mee;
  R.block(0, e_c, e_r, (n - 1) * dc) = Meh.block(0, 0, e_r, (n - 1) * dc);
  R.block(e_r, 0, (n - 1) * dr, e_c) = Mhe.block(0, 0, (n - 1) * dr, e_c);
  R.block(e_r, e_c, (n - 1) * dr, (n - 1) * dc) = Mhh.block(0, 0, (n - 1) * dr, (n - 1) * dc);
  return R;
}

std::vector<int> iota_from(int start, int count) {
  std::vector<int> out(count);
  for (int i = 0; i < count; ++i) out[i] = start + i;
  return out;
}

std::vector<int> cat(std::initializer_list<std::vector<int>> parts) {
  std::vector<int> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

void scatter(Matrix& M, const Matrix& src, const std::vector<int>& map) {
  for (size_t i = 0; i < map.size(); ++i)
    for (size_t j = 0; j < map.size(); ++j)
      M(map[i], map[j]) += src(static_cast<int>(i), static_cast<int>(j));
}

}  // namespace

std::array<double, 6> corner_residuals(const FaceOperator& Q, const CornerForm& C,
                                       const HalfStripForm& hsH, const HalfStripForm& hsV,
                                       int margin) {
  (void)Q;
  const int n = C.n;
  const int dv = C.dv, dh = C.dh;
  const int m = n - margin;
  // South half-strip blocks (lines in W_S, cut edge H1): W/E line blocks,
  // transverse columns, cut block.
  const Matrix& BS_ww = hsV.line_ff.matrix;
  const Matrix& BS_we = hsV.line_fs.matrix;
  const Matrix& BS_ew = hsV.line_sf.matrix;
  const Matrix& BS_ee = hsV.line_ss.matrix;
  const Matrix& US_w = hsV.first_cut;   // B^S_{W,N}
  const Matrix& US_e = hsV.second_cut;  // B^S_{E,N}
  const Matrix& BS_cut = hsV.cut_cut;   // B^S_{N,N}
  // West half-strip blocks (lines in W_W, cut edge H2)
  const Matrix& BW_ss = hsH.line_ff.matrix;
  const Matrix& BW_sn = hsH.line_fs.matrix;
  const Matrix& BW_ns = hsH.line_sf.matrix;
  const Matrix& BW_nn = hsH.line_ss.matrix;
  const Matrix& UW_s = hsH.first_cut;
  const Matrix& UW_n = hsH.second_cut;
  const Matrix& BW_cut = hsH.cut_cut;

  const Matrix& Cee = C.vv.matrix;       // vertical-line diagonal
  const Matrix& Cnn = C.hh.matrix;       // horizontal-line diagonal
  const Matrix Cne = C.v_from_h.adjoint();  // W_S -> W_W
  const Matrix& Cen = C.v_from_h;           // W_W -> W_S

  std::array<double, 6> out{};
  auto lead = [&](const Matrix& X, int dr, int dc) {
    return X.block(0, 0, m * dr, m * dc).cwiseAbs().maxCoeff();
  };

  // --- action of the South half-strip (cut L2 on the shared W_S line) ---
  const Matrix L2 = Cee + BS_ww;
  const Matrix L2i = L2.inverse();
  out[0] = lead(Cee - (BS_ee - BS_ew * L2i * BS_we), dv, dv);
  {
    const Matrix top = -Cne * L2i * BS_we;                       // W_S -> W_W (old)
    const Matrix bot = US_e.adjoint() - US_w.adjoint() * L2i * BS_we;  // W_S -> H1
    Matrix R = Matrix::Zero(n * dh, n * dv);
    R.block(0, 0, dh, n * dv) = bot;
    R.block(dh, 0, (n - 1) * dh, n * dv) = top.block(0, 0, (n - 1) * dh, n * dv);
    out[1] = lead(R - Cne, dh, dv);
  }
  {
    const Matrix Mhh = Cnn - Cne * L2i * Cen;
    const Matrix Mhe = -Cne * L2i * US_w;            // (n dh) x dh ... cut of hsV is H1
    const Matrix Meh = -US_w.adjoint() * L2i * Cen;  // dh x (n dh)
    const Matrix Mee = BS_cut - US_w.adjoint() * L2i * US_w;
    out[2] = lead(d1_conj(Mhh, Mhe, Meh, Mee, n, dh, dh) - Cnn, dh, dh);
  }

  // --- action of the West half-strip (cut L1 on the shared W_W line) ---
  const Matrix L1 = Cnn + BW_ss;
  const Matrix L1i = L1.inverse();
  out[3] = lead(Cnn - (BW_nn - BW_ns * L1i * BW_sn), dh, dh);
  {
    const Matrix top = -Cen * L1i * BW_sn;
    const Matrix bot = UW_n.adjoint() - UW_s.adjoint() * L1i * BW_sn;
    Matrix R = Matrix::Zero(n * dv, n * dh);
    R.block(0, 0, dv, n * dh) = bot;
    R.block(dv, 0, (n - 1) * dv, n * dh) = top.block(0, 0, (n - 1) * dv, n * dh);
    out[4] = lead(R - Cen, dv, dh);
  }
  {
    const Matrix Mhh = Cee - Cen * L1i * Cne;
    const Matrix Mhe = -Cen * L1i * UW_s;
    const Matrix Meh = -UW_s.adjoint() * L1i * Cne;
    const Matrix Mee = BW_cut - UW_s.adjoint() * L1i * UW_s;
    out[5] = lead(d1_conj(Mhh, Mhe, Meh, Mee, n, dv, dv) - Cee, dv, dv);
  }
  return out;
}

CornerForm glue_corner_halfstrip(const CornerForm& C, const HalfStripForm& A) {
  // Shared line: the corner's vertical line with a S/N half-strip, or its
  // horizontal line with a W/E half-strip.
  const bool vertical_shared = (A.side == Side::S || A.side == Side::N);
  const int n = C.n;
  if (A.n != n) throw ShapeMismatch("glue_corner_halfstrip: truncation mismatch");
  const int dShared = vertical_shared ? C.dv : C.dh;
  const int dOther = vertical_shared ? C.dh : C.dv;
  if (A.dline != dShared || A.dcut != dOther)
    throw ShapeMismatch("glue_corner_halfstrip: dimensions do not match the corner");
  const int p = A.w;
  if (p > n - 8) throw TruncationExceeded("glue_corner_halfstrip: extension exceeds margin");

  const int nS = n * dShared, nO = n * dOther, nc = p * dOther;
  // joint: other line, shared line, A.second line, A.cut
  const int N = nO + 2 * nS + nc;
  Matrix M = Matrix::Zero(N, N);
  const auto other = iota_from(0, nO), shared = iota_from(nO, nS);
  const auto second = iota_from(nO + nS, nS), cut = iota_from(nO + 2 * nS, nc);
  // corner assembled order: (vertical, horizontal)
  scatter(M, C.assembled(), vertical_shared ? cat({shared, other}) : cat({other, shared}));
  scatter(M, A.assembled(), cat({shared, second, cut}));
  const Matrix red = schur_complement_indices(M, cat({other, second, cut}), shared);

  // extended other line: the freed cut edges nearest-first, then the old
  // line; `red` is ordered (other n, second n, cut p)
  std::vector<int> ext;  // scalar indices in `red`, nearest-cut-first
  for (int i = p - 1; i >= 0; --i)
    for (int c = 0; c < dOther; ++c) ext.push_back(nO + nS + i * dOther + c);
  for (int i = 0; i < nO; ++i) ext.push_back(i);
  std::vector<int> sec;  // A.second inside `red`
  for (int i = 0; i < nS; ++i) sec.push_back(nO + i);

  auto gather = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix out(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) out(i, j) = red(rows[i], cols[j]);
    return out;
  };

  CornerForm out = C;
  const Matrix oo = gather(ext, ext).topLeftCorner(nO, nO);
  const Matrix ss = gather(sec, sec);
  const Matrix os = gather(ext, sec).topRows(nO);
  if (vertical_shared) {
    out.vv.matrix = ss;
    out.hh.matrix = oo;
    out.v_from_h = os.adjoint();
  } else {
    out.hh.matrix = ss;
    out.vv.matrix = oo;
    out.v_from_h = os;
  }
  return out;
}

HalfPlaneComparison glue_corners_to_halfplane(const CornerForm& A, const CornerForm& B,
                                              const HalfPlaneSymbol& hp, int window) {
  if (A.n != B.n || A.dv != B.dv || A.dh != B.dh)
    throw ShapeMismatch("glue_corners_to_halfplane: incompatible corners");
  const int n = A.n;
  const int nv = n * A.dv, nh = n * A.dh;
  const int N = 2 * nh + nv;
  Matrix M = Matrix::Zero(N, N);
  const auto hW = iota_from(0, nh), hE = iota_from(nh, nh), shared = iota_from(2 * nh, nv);
  scatter(M, A.assembled(), cat({shared, hW}));
  scatter(M, B.assembled(), cat({shared, hE}));

  HalfPlaneComparison out;
  out.assembled = schur_complement_indices(M, cat({hW, hE}), shared);
  const int d = A.dh;
  out.expected = Matrix::Zero(2 * nh, 2 * nh);
  double worst = 0.0;
  auto site = [&](int group, int i) { return group == 0 ? -1 - i : i; };
  for (int gr = 0; gr < 2; ++gr)
    for (int gc = 0; gc < 2; ++gc)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Matrix e = hp.symbol.fourier(site(gr, i) - site(gc, j));
          out.expected.block(gr * nh + i * d, gc * nh + j * d, d, d) = e;
          if (i <= window && j <= window) {
            const Matrix got = out.assembled.block(gr * nh + i * d, gc * nh + j * d, d, d);
            worst = std::max(worst, (got - e).cwiseAbs().maxCoeff());
          }
        }
  out.near_cut_residual = worst;
  return out;
}

BoundaryWeight assemble_boundary_weight(const FaceOperator& Q, int p, int q, int n,
                                        int grid_size) {
  if (p > n - 8 || q > n - 8)
    throw TruncationExceeded("assemble_boundary_weight: need n >= max(p, q) + 8");
  const HalfStripForm hs = halfstrip_fixed_point(Q, Side::S, n, grid_size);
  const CornerForm cn = corner_fixed_point(Q, Corner::SW, n, grid_size);
  const int d = Q.d1;  // dihedral: d1 == d2
  const int nb = 2 * p * d + 2 * q * d;
  const int nl = n * d;
  const int lines = 2 * (p + 1) + 2 * (q + 1);
  const int N = nb + lines * nl;

  auto vs = [&](int i) { return nb + i * nl; };
  auto vn = [&](int i) { return nb + (p + 1 + i) * nl; };
  auto hw = [&](int j) { return nb + (2 * (p + 1) + j) * nl; };
  auto he = [&](int j) { return nb + (2 * (p + 1) + (q + 1) + j) * nl; };

  Matrix M = Matrix::Zero(N, N);
  const Matrix HS = hs.assembled();   // (line, line, cut-edge)
  const Matrix CN = cn.assembled();   // (vertical line, horizontal line)
  auto add_hs = [&](int lineA, int lineB, int edge_scalar) {
    scatter(M, HS, cat({iota_from(lineA, nl), iota_from(lineB, nl),
                        iota_from(edge_scalar, d)}));
  };
  for (int i = 0; i < p; ++i) add_hs(vs(i), vs(i + 1), i * d);                 // south
  for (int i = 0; i < p; ++i) add_hs(vn(i), vn(i + 1), (p + i) * d);           // north
  for (int j = 0; j < q; ++j) add_hs(hw(j), hw(j + 1), (2 * p + j) * d);       // west
  for (int j = 0; j < q; ++j) add_hs(he(j), he(j + 1), (2 * p + q + j) * d);   // east
  auto add_corner = [&](int vline, int hline) {
    scatter(M, CN, cat({iota_from(vline, nl), iota_from(hline, nl)}));
  };
  add_corner(vs(0), hw(0));
  add_corner(vs(p), he(0));
  add_corner(vn(0), hw(q));
  add_corner(vn(p), he(q));

  // Corner-adjacent half-lines first, then the remaining ones jointly
  // (order-free by the Schur chain rule; this keeps intermediates small).
  std::vector<int> first_wave, second_wave;
  auto push_line = [&](std::vector<int>& dst, int base) {
    for (int c = 0; c < nl; ++c) dst.push_back(base + c);
  };
  push_line(first_wave, vs(0));
  push_line(first_wave, vs(p));
  push_line(first_wave, vn(0));
  push_line(first_wave, vn(p));
  push_line(first_wave, hw(0));
  push_line(first_wave, hw(q));
  push_line(first_wave, he(0));
  push_line(first_wave, he(q));
  for (int i = 1; i < p; ++i) {
    push_line(second_wave, vs(i));
    push_line(second_wave, vn(i));
  }
  for (int j = 1; j < q; ++j) {
    push_line(second_wave, hw(j));
    push_line(second_wave, he(j));
  }

  std::vector<int> keep1 = iota_from(0, nb);
  keep1.insert(keep1.end(), second_wave.begin(), second_wave.end());
  const Matrix stage1 = schur_complement_indices(M, keep1, first_wave);
  const Matrix final_m = schur_complement_indices(
      stage1, iota_from(0, nb), iota_from(nb, static_cast<int>(second_wave.size())));

  BoundaryWeight out;
  out.p = p;
  out.q = q;
  out.n = n;
  out.grid = grid_size;
  out.form.p = p;
  out.form.q = q;
  out.form.d1 = Q.d1;
  out.form.d2 = Q.d2;
  out.form.matrix = HermitianMatrix(final_m);
  return out;
}

double restriction_consistency_check(const FaceOperator& Q, int p, int q, int pp, int qq, int n,
                                     int grid_size, int ox, int oy) {
  if (pp >= p || qq >= q)
    throw ShapeMismatch("restriction_consistency_check: inner rectangle must be smaller");
  if (ox < 0) ox = (p - pp) / 2;
  if (oy < 0) oy = (q - qq) / 2;
  if (ox + pp > p || oy + qq > q)
    throw ShapeMismatch("restriction_consistency_check: inner rectangle out of range");

  const BoundaryWeight outer = assemble_boundary_weight(Q, p, q, n, grid_size);
  auto [P, idx] = domain_precision(Q, p, q);
  Matrix full = P.mat();
  const auto b = idx.boundary_scalar_indices();
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      full(b[i], b[j]) += outer.form.matrix.mat()(static_cast<int>(i), static_cast<int>(j));

  // inner boundary in the canonical layout of the (pp, qq) rectangle
  std::vector<int> keep;
  auto push_edge = [&](int e) {
    const int off = idx.scalar_offset(e);
    for (int c = 0; c < idx.edge_dim(e); ++c) keep.push_back(off + c);
  };
  for (int k = 0; k < pp; ++k) push_edge(idx.horizontal_edge(ox + k, oy));
  for (int k = 0; k < pp; ++k) push_edge(idx.horizontal_edge(ox + k, oy + qq));
  for (int l = 0; l < qq; ++l) push_edge(idx.vertical_edge(ox, oy + l));
  for (int l = 0; l < qq; ++l) push_edge(idx.vertical_edge(ox + pp, oy + l));
  std::vector<int> elim;
  {
    std::vector<char> keepmask(full.rows(), 0);
    for (int i : keep) keepmask[i] = 1;
    for (int i = 0; i < full.rows(); ++i)
      if (!keepmask[i]) elim.push_back(i);
  }
  const Matrix induced = schur_complement_indices(full, keep, elim);

  const BoundaryWeight inner = assemble_boundary_weight(Q, pp, qq, n, grid_size);
  const ScaledQuadForm bulk = oracle_surface_power(Q, pp, qq);
  const Matrix expected = inner.form.matrix.mat() + bulk.form.matrix.mat();
  return (induced - expected).cwiseAbs().maxCoeff();
}

CovarianceCheck covariance_check(const FaceOperator& Q, int p, int q, int n, int grid_size) {
  const BoundaryWeight bw = assemble_boundary_weight(Q, p, q, n, grid_size);
  auto [P, idx] = domain_precision(Q, p, q);
  Matrix full = P.mat();
  const auto b = idx.boundary_scalar_indices();
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      full(b[i], b[j]) += bw.form.matrix.mat()(static_cast<int>(i), static_cast<int>(j));

  CovarianceCheck out;
  out.covariance = full.inverse();
  const FourierTable table = fourier_table(Q, p, q, grid_size);

  struct EdgePos {
    int i;  // 0 horizontal, 1 vertical
    int k, l;
    int offset, dim;
  };
  std::vector<EdgePos> edges;
  for (int l = 0; l <= q; ++l)
    for (int k = 0; k < p; ++k) {
      const int e = idx.horizontal_edge(k, l);
      edges.push_back({0, k, l, idx.scalar_offset(e), idx.d1});
    }
  for (int l = 0; l < q; ++l)
    for (int k = 0; k <= p; ++k) {
      const int e = idx.vertical_edge(k, l);
      edges.push_back({1, k, l, idx.scalar_offset(e), idx.d2});
    }

  out.expected = Matrix::Zero(full.rows(), full.cols());
  out.residual = Matrix::Zero(full.rows(), full.cols());
  for (const auto& e1 : edges) {
    for (const auto& e2 : edges) {
      // cov(X^{(i)}_{k,l}, X^{(j)}_{k',l'}) = C^{i,j}_{k'-k, l'-l}
      const Matrix expect =
          table.block(e2.k - e1.k, e2.l - e1.l, e1.i, e2.i, Q.d1, Q.d2);
      out.expected.block(e1.offset, e2.offset, e1.dim, e2.dim) = expect;
      const Matrix got = out.covariance.block(e1.offset, e2.offset, e1.dim, e2.dim);
      const Eigen::MatrixXd res = (got - expect).cwiseAbs();
      out.residual.block(e1.offset, e2.offset, e1.dim, e2.dim) = res.cast<Complex>();
      out.max_residual = std::max(out.max_residual, res.maxCoeff());
    }
  }
  return out;
}

}  // namespace gmrf
