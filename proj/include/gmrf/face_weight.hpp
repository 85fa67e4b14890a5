#pragma once

#include <utility>
#include <vector>

#include "gmrf/linalg.hpp"
#include "gmrf/quad_form.hpp"

namespace gmrf {

enum class Side { S = 0, N = 1, W = 2, E = 3 };

const char* side_name(Side s);
Side side_from_name(const std::string& name);

/// Hermitian positive definite face weight on H1 + H1 + H2 + H2 with
/// block order (S, N, W, E).
struct FaceOperator {
  int d1 = 0, d2 = 0;
  HermitianMatrix matrix;

  static FaceOperator from_matrix(int d1, int d2, Matrix m);

  int dim() const { return 2 * d1 + 2 * d2; }
  /// Block (a,b) of the face weight, e.g. block(Side::S, Side::E).
  Matrix block(Side a, Side b) const;
  bool is_dihedral(double tol = 1e-12) const;
};

/// The three self-adjoint operators (T, A, U) of a dihedral-invariant face
/// weight: T on diagonals, A across opposite edges, U across adjacent ones.
struct DihedralParams {
  Matrix T, A, U;

  static DihedralParams scalar(double t, double a, double u);
};

FaceOperator dihedral_face(const DihedralParams& params);

/// Element r^k s^j of the square's symmetry group (s = reflection in the
/// first diagonal, applied first; r = quarter turn).
struct DihedralElement {
  int rotations = 0;      // 0..3
  bool reflect = false;
};

FaceOperator apply_dihedral(const DihedralElement& g, const FaceOperator& Q);

/// Enumeration of the edges of [0,p] x [0,q]: horizontal edge h(k,l) joins
/// (k,l)-(k+1,l) for 0<=k<p, 0<=l<=q; vertical edge v(k,l) joins
/// (k,l)-(k,l+1) for 0<=k<=p, 0<=l<q. Horizontal edges are enumerated
/// first (row by row), then vertical ones.
struct EdgeIndexing {
  int p = 0, q = 0;
  int d1 = 1, d2 = 1;

  int horizontal_count() const { return p * (q + 1); }
  int vertical_count() const { return q * (p + 1); }
  int edge_count() const { return horizontal_count() + vertical_count(); }
  int scalar_dim() const { return horizontal_count() * d1 + vertical_count() * d2; }

  int horizontal_edge(int k, int l) const;          // edge id
  int vertical_edge(int k, int l) const;            // edge id
  int scalar_offset(int edge) const;                // first scalar index of the edge
  int edge_dim(int edge) const;                     // d1 or d2
  bool is_boundary(int edge) const;

  /// Scalar indices of the boundary in the canonical rectangle layout.
  std::vector<int> boundary_scalar_indices() const;
  /// Scalar indices of all interior edges (enumeration order).
  std::vector<int> interior_scalar_indices() const;
};

/// Assembles the domain quadratic form sum over faces of the embedded face
/// weight.
std::pair<HermitianMatrix, EdgeIndexing> domain_precision(const FaceOperator& Q, int p, int q);

/// Brute-force surface power: one joint Schur complement of the domain form
/// over all interior edges, with the complex-Gaussian cocycle accumulated as
/// log alpha. This is the oracle the recursive and harmonic routes are
/// checked against.
ScaledQuadForm oracle_surface_power(const FaceOperator& Q, int p, int q);

}  // namespace gmrf
