#include "gmrf/face_weight.hpp"

#include <array>
#include <cmath>

namespace gmrf {

const char* side_name(Side s) {
  switch (s) {
    case Side::S: return "S";
    case Side::N: return "N";
    case Side::W: return "W";
    case Side::E: return "E";
  }
  return "?";
}

Side side_from_name(const std::string& name) {
  if (name == "S") return Side::S;
  if (name == "N") return Side::N;
  if (name == "W") return Side::W;
  if (name == "E") return Side::E;
  throw ParseError("unknown side '" + name + "'");
}

FaceOperator FaceOperator::from_matrix(int d1, int d2, Matrix m) {
  if (m.rows() != 2 * d1 + 2 * d2)
    throw DimensionMismatch("FaceOperator: matrix dim != 2*d1 + 2*d2");
  FaceOperator Q;
  Q.d1 = d1;
  Q.d2 = d2;
  Q.matrix = HermitianMatrix(std::move(m));
  if (!is_positive_definite(Q.matrix))
    throw NotPositiveDefinite("FaceOperator: face weight must be positive definite");
  return Q;
}

namespace {

int side_offset(const FaceOperator& Q, Side s) {
  switch (s) {
    case Side::S: return 0;
    case Side::N: return Q.d1;
    case Side::W: return 2 * Q.d1;
    case Side::E: return 2 * Q.d1 + Q.d2;
  }
  return 0;
}

int side_dim(const FaceOperator& Q, Side s) {
  return (s == Side::S || s == Side::N) ? Q.d1 : Q.d2;
}

}  // namespace

Matrix FaceOperator::block(Side a, Side b) const {
  return matrix.mat().block(side_offset(*this, a), side_offset(*this, b), side_dim(*this, a),
                            side_dim(*this, b));
}

bool FaceOperator::is_dihedral(double tol) const {
  if (d1 != d2) return false;
  const double scale = std::max(1.0, matrix.mat().cwiseAbs().maxCoeff());
  for (const DihedralElement g : {DihedralElement{1, false}, DihedralElement{0, true}}) {
    const FaceOperator gQ = apply_dihedral(g, *this);
    if ((gQ.matrix.mat() - matrix.mat()).cwiseAbs().maxCoeff() > tol * scale) return false;
  }
  return true;
}

DihedralParams DihedralParams::scalar(double t, double a, double u) {
  DihedralParams p;
  p.T = Matrix::Constant(1, 1, t);
  p.A = Matrix::Constant(1, 1, a);
  p.U = Matrix::Constant(1, 1, u);
  return p;
}

FaceOperator dihedral_face(const DihedralParams& params) {
  const int d = static_cast<int>(params.T.rows());
  if (params.A.rows() != d || params.U.rows() != d)
    throw DimensionMismatch("dihedral_face: T, A, U must share one dimension");
  Matrix m(4 * d, 4 * d);
  auto put = [&](int bi, int bj, const Matrix& blk) { m.block(bi * d, bj * d, d, d) = blk; };
  put(0, 0, params.T); put(0, 1, params.A); put(0, 2, params.U); put(0, 3, params.U);
  put(1, 0, params.A); put(1, 1, params.T); put(1, 2, params.U); put(1, 3, params.U);
  put(2, 0, params.U); put(2, 1, params.U); put(2, 2, params.T); put(2, 3, params.A);
  put(3, 0, params.U); put(3, 1, params.U); put(3, 2, params.A); put(3, 3, params.T);
  return FaceOperator::from_matrix(d, d, std::move(m));
}

namespace {

// Side permutations of the two generators: (g Q)_{ab} = Q_{g(a) g(b)}.
// Rotation r: S->W, N->E, W->N, E->S.  Reflection s_diag: S->W, N->E, W->S, E->N.
Side act_rotation(Side s) {
  switch (s) {
    case Side::S: return Side::W;
    case Side::N: return Side::E;
    case Side::W: return Side::N;
    case Side::E: return Side::S;
  }
  return s;
}

Side act_reflection(Side s) {
  switch (s) {
    case Side::S: return Side::W;
    case Side::N: return Side::E;
    case Side::W: return Side::S;
    case Side::E: return Side::N;
  }
  return s;
}

FaceOperator permute_blocks(const FaceOperator& Q, Side (*act)(Side)) {
  if (Q.d1 != Q.d2)
    throw DimensionMismatch("apply_dihedral: generators mixing H1/H2 need d1 == d2");
  const std::array<Side, 4> sides = {Side::S, Side::N, Side::W, Side::E};
  Matrix m(Q.dim(), Q.dim());
  const int d = Q.d1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m.block(i * d, j * d, d, d) = Q.block(act(sides[i]), act(sides[j]));
  return FaceOperator::from_matrix(Q.d1, Q.d2, std::move(m));
}

}  // namespace

FaceOperator apply_dihedral(const DihedralElement& g, const FaceOperator& Q) {
  FaceOperator out = Q;
  if (g.reflect) out = permute_blocks(out, act_reflection);
  for (int r = 0; r < ((g.rotations % 4) + 4) % 4; ++r) out = permute_blocks(out, act_rotation);
  return out;
}

int EdgeIndexing::horizontal_edge(int k, int l) const { return l * p + k; }

int EdgeIndexing::vertical_edge(int k, int l) const {
  return horizontal_count() + l * (p + 1) + k;
}

int EdgeIndexing::edge_dim(int edge) const { return edge < horizontal_count() ? d1 : d2; }

int EdgeIndexing::scalar_offset(int edge) const {
  if (edge < horizontal_count()) return edge * d1;
  return horizontal_count() * d1 + (edge - horizontal_count()) * d2;
}

bool EdgeIndexing::is_boundary(int edge) const {
  if (edge < horizontal_count()) {
    const int l = edge / p;
    return l == 0 || l == q;
  }
  const int k = (edge - horizontal_count()) % (p + 1);
  return k == 0 || k == p;
}

std::vector<int> EdgeIndexing::boundary_scalar_indices() const {
  std::vector<int> out;
  auto push_edge = [&](int e) {
    const int off = scalar_offset(e);
    for (int i = 0; i < edge_dim(e); ++i) out.push_back(off + i);
  };
  for (int k = 0; k < p; ++k) push_edge(horizontal_edge(k, 0));
  for (int k = 0; k < p; ++k) push_edge(horizontal_edge(k, q));
  for (int l = 0; l < q; ++l) push_edge(vertical_edge(0, l));
  for (int l = 0; l < q; ++l) push_edge(vertical_edge(p, l));
  return out;
}

std::vector<int> EdgeIndexing::interior_scalar_indices() const {
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e) {
    if (is_boundary(e)) continue;
    const int off = scalar_offset(e);
    for (int i = 0; i < edge_dim(e); ++i) out.push_back(off + i);
  }
  return out;
}

std::pair<HermitianMatrix, EdgeIndexing> domain_precision(const FaceOperator& Q, int p, int q) {
  if (p < 1 || q < 1) throw ShapeMismatch("domain_precision: need p, q >= 1");
  EdgeIndexing idx{p, q, Q.d1, Q.d2};
  Matrix M = Matrix::Zero(idx.scalar_dim(), idx.scalar_dim());
  for (int k = 0; k < p; ++k) {
    for (int l = 0; l < q; ++l) {
      const std::array<int, 4> edges = {idx.horizontal_edge(k, l), idx.horizontal_edge(k, l + 1),
                                        idx.vertical_edge(k, l), idx.vertical_edge(k + 1, l)};
      std::vector<int> map;
      for (int e : edges) {
        const int off = idx.scalar_offset(e);
        for (int i = 0; i < idx.edge_dim(e); ++i) map.push_back(off + i);
      }
      for (size_t i = 0; i < map.size(); ++i)
        for (size_t j = 0; j < map.size(); ++j)
          M(map[i], map[j]) += Q.matrix.mat()(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return {HermitianMatrix(std::move(M)), idx};
}

ScaledQuadForm oracle_surface_power(const FaceOperator& Q, int p, int q) {
  auto [M, idx] = domain_precision(Q, p, q);
  const auto boundary = idx.boundary_scalar_indices();
  const auto interior = idx.interior_scalar_indices();

  ScaledQuadForm out;
  out.form.p = p;
  out.form.q = q;
  out.form.d1 = Q.d1;
  out.form.d2 = Q.d2;
  out.form.matrix = HermitianMatrix(schur_complement_indices(M.mat(), boundary, interior));
  if (!interior.empty()) {
    Matrix Mint(interior.size(), interior.size());
    for (size_t i = 0; i < interior.size(); ++i)
      for (size_t j = 0; j < interior.size(); ++j) Mint(i, j) = M.mat()(interior[i], interior[j]);
    out.log_scale =
        static_cast<double>(interior.size()) * std::log(2.0 * M_PI) - log_det(Mint);
  }
  return out;
}

}  // namespace gmrf
