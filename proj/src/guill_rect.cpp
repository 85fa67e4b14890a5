#include "gmrf/guill_rect.hpp"

#include <cmath>

namespace gmrf {

namespace {

// Expands rectangle-layout block indices into scalar index lists.
struct RectSlices {
  std::vector<int> S, N, W, E;
};

RectSlices slices(const RectQuadForm& f) {
  RectSlices s;
  for (int i = 0; i < f.p * f.d1; ++i) s.S.push_back(i);
  for (int i = 0; i < f.p * f.d1; ++i) s.N.push_back(f.p * f.d1 + i);
  for (int i = 0; i < f.q * f.d2; ++i) s.W.push_back(2 * f.p * f.d1 + i);
  for (int i = 0; i < f.q * f.d2; ++i) s.E.push_back(2 * f.p * f.d1 + f.q * f.d2 + i);
  return s;
}

void scatter_add(Matrix& M, const Matrix& src, const std::vector<int>& map) {
  for (size_t i = 0; i < map.size(); ++i)
    for (size_t j = 0; j < map.size(); ++j)
      M(map[i], map[j]) += src(static_cast<int>(i), static_cast<int>(j));
}

std::vector<int> concat(std::initializer_list<const std::vector<int>*> parts) {
  std::vector<int> out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

std::vector<int> iota_from(int start, int count) {
  std::vector<int> out(count);
  for (int i = 0; i < count; ++i) out[i] = start + i;
  return out;
}

}  // namespace

ScaledQuadForm glue_we(const ScaledQuadForm& A, const ScaledQuadForm& B) {
  const auto& a = A.form;
  const auto& b = B.form;
  if (a.q != b.q || a.d1 != b.d1 || a.d2 != b.d2)
    throw ShapeMismatch("glue_we: operands must share q, d1, d2");
  const int p = a.p + b.p, q = a.q, d1 = a.d1, d2 = a.d2;
  const int nb = 2 * p * d1 + 2 * q * d2;
  const int nc = q * d2;  // shared cut
  Matrix M = Matrix::Zero(nb + nc, nb + nc);

  // joint scalar layout: S_A S_B N_A N_B W E cut
  const auto SA = iota_from(0, a.p * d1);
  const auto SB = iota_from(a.p * d1, b.p * d1);
  const auto NA = iota_from(p * d1, a.p * d1);
  const auto NB = iota_from(p * d1 + a.p * d1, b.p * d1);
  const auto W = iota_from(2 * p * d1, q * d2);
  const auto E = iota_from(2 * p * d1 + q * d2, q * d2);
  const auto cut = iota_from(nb, nc);

  scatter_add(M, a.matrix.mat(), concat({&SA, &NA, &W, &cut}));
  scatter_add(M, b.matrix.mat(), concat({&SB, &NB, &cut, &E}));

  Matrix cutblk(nc, nc);
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j) cutblk(i, j) = M(cut[i], cut[j]);

  ScaledQuadForm out;
  out.form.p = p;
  out.form.q = q;
  out.form.d1 = d1;
  out.form.d2 = d2;
  out.form.matrix =
      HermitianMatrix(schur_complement_indices(M, iota_from(0, nb), cut));
  out.log_scale = A.log_scale + B.log_scale + nc * std::log(2.0 * M_PI) - log_det(cutblk);
  return out;
}

ScaledQuadForm glue_sn(const ScaledQuadForm& A, const ScaledQuadForm& B) {
  const auto& a = A.form;
  const auto& b = B.form;
  if (a.p != b.p || a.d1 != b.d1 || a.d2 != b.d2)
    throw ShapeMismatch("glue_sn: operands must share p, d1, d2");
  const int p = a.p, q = a.q + b.q, d1 = a.d1, d2 = a.d2;
  const int nb = 2 * p * d1 + 2 * q * d2;
  const int nc = p * d1;
  Matrix M = Matrix::Zero(nb + nc, nb + nc);

  const auto S = iota_from(0, p * d1);
  const auto N = iota_from(p * d1, p * d1);
  const auto WA = iota_from(2 * p * d1, a.q * d2);
  const auto WB = iota_from(2 * p * d1 + a.q * d2, b.q * d2);
  const auto EA = iota_from(2 * p * d1 + q * d2, a.q * d2);
  const auto EB = iota_from(2 * p * d1 + q * d2 + a.q * d2, b.q * d2);
  const auto cut = iota_from(nb, nc);

  scatter_add(M, a.matrix.mat(), concat({&S, &cut, &WA, &EA}));
  scatter_add(M, b.matrix.mat(), concat({&cut, &N, &WB, &EB}));

  Matrix cutblk(nc, nc);
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j) cutblk(i, j) = M(cut[i], cut[j]);

  ScaledQuadForm out;
  out.form.p = p;
  out.form.q = q;
  out.form.d1 = d1;
  out.form.d2 = d2;
  out.form.matrix =
      HermitianMatrix(schur_complement_indices(M, iota_from(0, nb), cut));
  out.log_scale = A.log_scale + B.log_scale + nc * std::log(2.0 * M_PI) - log_det(cutblk);
  return out;
}

ScaledQuadForm to_scaled(const FaceOperator& Q) {
  ScaledQuadForm s;
  s.form.p = 1;
  s.form.q = 1;
  s.form.d1 = Q.d1;
  s.form.d2 = Q.d2;
  s.form.matrix = Q.matrix;
  return s;
}

ScaledQuadForm surface_power(const FaceOperator& Q, int p, int q) {
  if (p < 1 || q < 1) throw ShapeMismatch("surface_power: need p, q >= 1");
  const ScaledQuadForm face = to_scaled(Q);
  ScaledQuadForm row = face;
  for (int i = 1; i < p; ++i) row = glue_we(row, face);
  ScaledQuadForm out = row;
  for (int j = 1; j < q; ++j) out = glue_sn(out, row);
  return out;
}

}  // namespace gmrf
