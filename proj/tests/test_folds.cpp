#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmrf/folds.hpp"
#include "gmrf/guill_rect.hpp"
#include "test_support.hpp"

using namespace gmrf;
using gmrf::testing::identity_weight;
using gmrf::testing::max_abs;
using gmrf::testing::reference_weight;

namespace {

SymbolFunction constant_symbol(const Matrix& c, int grid) {
  return SymbolFunction::from_function([&](Complex) { return c; }, grid);
}

SymbolFunction phase_symbol(int grid) {
  return SymbolFunction::from_function(
      [&](Complex u) { return (Matrix(1, 1) << u).finished(); }, grid);
}

}  // namespace

TEST_CASE("toeplitz and hankel entries") {
  SUBCASE("constant symbol: Toeplitz is c I, Hankel is 0") {
    const Matrix c = 2.5 * Matrix::Identity(2, 2);
    const auto T = toeplitz(constant_symbol(c, 32), Side::W, 5);
    const auto H = hankel(constant_symbol(c, 32), Side::W, 5);
    CHECK(max_abs(T.matrix - 2.5 * Matrix::Identity(10, 10)) < 1e-13);
    CHECK(max_abs(H.matrix) < 1e-13);
  }
  SUBCASE("symbol e^{i theta} is the one-step shift") {
    // W side: entry (i,j) = F_{j-i}(e^{i.}) = delta_{j-i,1}
    const auto T = toeplitz(phase_symbol(64), Side::W, 4);
    Matrix expect = Matrix::Zero(4, 4);
    for (int i = 0; i + 1 < 4; ++i) expect(i, i + 1) = 1.0;
    CHECK(max_abs(T.matrix - expect) < 1e-13);
    // E side: entry (i,j) = F_{i-j}
    const auto TE = toeplitz(phase_symbol(64), Side::E, 4);
    CHECK(max_abs(TE.matrix - expect.transpose()) < 1e-13);
  }
  SUBCASE("Hermitian even symbols give Hermitian Toeplitz and Hankel") {
    const auto Q = reference_weight();
    const auto s = strip_symbol(Q, Direction::WE, 128);
    const auto T = toeplitz(s.symbol, Side::W, 12);
    const auto H = hankel(s.symbol, Side::W, 12);
    CHECK(max_abs(T.matrix - T.matrix.adjoint().eval()) < 1e-12);
    CHECK(max_abs(H.matrix - H.matrix.adjoint().eval()) < 1e-12);
  }
}

TEST_CASE("fold operators") {
  const auto Q = reference_weight();
  SUBCASE("constant symbol folds to itself") {
    const Matrix c = 1.5 * Matrix::Identity(1, 1);
    const auto F = fold(constant_symbol(c, 32), Side::W, 6);
    CHECK(max_abs(F.matrix - 1.5 * Matrix::Identity(6, 6)) < 1e-13);
  }
  SUBCASE("fold of the identity strip symbol is the identity") {
    const auto s = strip_symbol(identity_weight(), Direction::WE, 32);
    const auto F = fold(s.symbol, Side::W, 4);
    CHECK(max_abs(F.matrix - Matrix::Identity(8, 8)) < 1e-13);
  }
  SUBCASE("odd symbols are rejected when positivity is required") {
    CHECK_THROWS_AS(fold(phase_symbol(64), Side::W, 4), NotEven);
    CHECK_THROWS_AS(fold_plus(phase_symbol(64), Side::W, 4), NotEven);
  }
  SUBCASE("folds of PD even symbols are PD") {
    const auto s = strip_symbol(Q, Direction::WE, 256);
    for (Side side : {Side::W, Side::E}) {
      CHECK(min_eigenvalue(fold(s.symbol, side, 24).matrix) > 0);
      CHECK(min_eigenvalue(fold_plus(s.symbol, side, 24).matrix) > 0);
    }
  }
  SUBCASE("fold multiplicativity on interior blocks") {
    const int n = 48, m = 8;
    const auto s = strip_symbol(Q, Direction::WE, 256);
    // product symbol a*a
    const auto prod = s.symbol.map([&](const Matrix& x) { return (x * x).eval(); });
    Matrix lhs = fold(prod, Side::W, n).matrix.topLeftCorner(2 * m, 2 * m);
    const Matrix ff = fold(s.symbol, Side::W, n).matrix;
    Matrix rhs = (ff * ff).topLeftCorner(2 * m, 2 * m);
    CHECK(max_abs(lhs - rhs) < 1e-9);
  }
  SUBCASE("decay ratio of folded strip blocks is below one") {
    const auto s = strip_symbol(Q, Direction::WE, 256);
    const auto F = fold(s.symbol, Side::W, 24);
    CHECK(F.fitted_decay() < 0.5);
  }
}

TEST_CASE("u_transverse") {
  const auto Q = reference_weight();
  SUBCASE("zero U gives the zero block") {
    const auto Qa = dihedral_face(DihedralParams::scalar(1.25, -0.5, 0.0));
    CHECK(max_abs(u_transverse(Qa, Side::W, 16)) < 1e-12);
  }
  SUBCASE("row norms decay geometrically with ratio = spectral radius of W^L") {
    const auto U = u_transverse(Q, Side::W, 24);
    const double wl = 4.0 - std::sqrt(15.0);  // root of the (2, -0.5) chain
    for (int k = 0; k + 1 < 24; ++k) {
      const double r0 = std::abs(U(k, 0)), r1 = std::abs(U(k + 1, 0));
      if (r0 > 1e-12) CHECK(std::abs(r1 / r0 - wl) < 1e-9);
    }
  }
  SUBCASE("rows satisfy the transverse recursion") {
    const int n = 24;
    const auto U = u_transverse(Q, Side::W, n);
    const auto hs = halfstrip_fixed_point(Q, Side::W, n, 256);
    const Matrix KW = hs.cut_cut + Q.block(Side::W, Side::W);
    // row_{k+1} = -row_k K_W^{-1} Q_WE
    for (int k = 0; k + 1 < n; ++k) {
      const Matrix expect = -U.row(k) * KW.inverse() * Q.block(Side::W, Side::E);
      CHECK(max_abs(U.row(k + 1) - expect) < 1e-10);
    }
  }
}

TEST_CASE("halfstrip fixed point") {
  const auto Q = reference_weight();
  SUBCASE("identity weight: identity line blocks, zero transverse, unit cut") {
    const auto hs = halfstrip_fixed_point(identity_weight(), Side::W, 12, 64);
    CHECK(max_abs(hs.line_ff.matrix - Matrix::Identity(12, 12)) < 1e-12);
    CHECK(max_abs(hs.line_fs.matrix) < 1e-12);
    CHECK(max_abs(hs.first_cut) < 1e-12);
    CHECK(std::abs(hs.cut_cut(0, 0) - Complex(1.0)) < 1e-12);
  }
  SUBCASE("non-dihedral weights are rejected") {
    const auto G = FaceOperator::from_matrix(1, 1, gmrf::testing::random_hermitian_pd(4, 2));
    CHECK_THROWS_AS(halfstrip_fixed_point(G, Side::W, 8, 32), NotDihedral);
  }
  SUBCASE("fixed point residuals at n = 48") {
    const auto hs = halfstrip_fixed_point(Q, Side::W, 48, 256);
    const auto r = halfstrip_residuals(Q, hs, 8);
    CHECK(r.cut_block < 1e-10);
    CHECK(r.line_block < 1e-7);
    CHECK(r.transverse < 1e-10);
  }
  SUBCASE("cut block equals the 1D invariant boundary") {
    const auto hs = halfstrip_fixed_point(Q, Side::W, 16, 256);
    Matrix Kc(2, 2);
    Kc << Q.block(Side::W, Side::W)(0, 0), Q.block(Side::W, Side::E)(0, 0),
        Q.block(Side::E, Side::W)(0, 0), Q.block(Side::E, Side::E)(0, 0);
    const auto g = invariant_boundaries(EdgeCoupling::from_matrix(1, Kc));
    CHECK(max_abs(hs.cut_cut - g.GL) < 1e-10);
  }
  SUBCASE("assembled form is Hermitian with a positive margin") {
    const auto hs = halfstrip_fixed_point(Q, Side::W, 24, 256);
    const Matrix A = hs.assembled();
    CHECK(max_abs(A - A.adjoint().eval()) < 1e-12);
    CHECK(min_eigenvalue(A) > 0.1);
  }
  SUBCASE("fold-based Schur identity: cut elimination gives fold_plus") {
    const int n = 32, m = 8;
    const auto hs = halfstrip_fixed_point(Q, Side::W, n, 256);
    const Matrix A = hs.assembled();
    const int nl = 2 * n;
    std::vector<int> keep(nl), elim{nl};
    for (int i = 0; i < nl; ++i) keep[i] = i;
    const Matrix comp = schur_complement_indices(A, keep, elim);
    const auto s = strip_symbol(Q, Direction::WE, 256);
    // per-component comparison (the assembled form keeps the two lines
    // separated while the fold of the matrix symbol interleaves them)
    auto compo = [&](int a, int b) {
      return s.symbol.map([&](const Matrix& x) { return x.block(a, b, 1, 1).eval(); });
    };
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const Matrix fp = fold_plus(compo(a, b), Side::W, n).matrix;
        CHECK(max_abs(comp.block(a * n, b * n, m, m) - fp.block(0, 0, m, m)) < 1e-8);
      }
  }
}

TEST_CASE("shift morphisms") {
  SUBCASE("p = 0 is the identity") {
    const Matrix M = gmrf::testing::random_hermitian_pd(8, 3);
    CHECK(max_abs(shift_absorb(M, 8, 1, 0) - M) == 0.0);
  }
  SUBCASE("composition D1 o D1 = D2 on retained indices") {
    const int n = 6;
    const Matrix M = gmrf::testing::random_hermitian_pd(n + 2, 9);
    const Matrix once = shift_absorb(M.topLeftCorner(n + 1, n + 1), n, 1, 1);
    // applying D1 twice with consistent extensions equals D2 directly
    const Matrix twice_direct = shift_absorb(M, n, 1, 2);
    // build the intermediate: first absorb the nearest new block, keeping
    // n+1 entries, then absorb the second
    const Matrix inter = shift_absorb(M, n + 1, 1, 1);
    const Matrix two_step = shift_absorb(inter, n, 1, 1);
    CHECK(max_abs(two_step - twice_direct) == 0.0);
  }
  SUBCASE("shift of a Toeplitz block reproduces the phase-symbol composition") {
    const auto Q = reference_weight();
    const auto s = strip_symbol(Q, Direction::WE, 256);
    const auto comp00 = s.symbol.map([](const Matrix& x) { return x.block(0, 0, 1, 1).eval(); });
    const int n = 16;
    const Matrix T = toeplitz(comp00, Side::W, n + 1).matrix;
    const Matrix shifted = shift_absorb(T, n, 1, 1);  // entries F_{j-i} again
    const Matrix Tn = toeplitz(comp00, Side::W, n).matrix;
    CHECK(max_abs(shifted - Tn) < 1e-12);
  }
}

TEST_CASE("gluing half-strips") {
  const auto Q = reference_weight();
  SUBCASE("two identity fixed points glue to the width-2 identity fixed point") {
    const auto hs = halfstrip_fixed_point(identity_weight(), Side::W, 12, 64);
    const auto g = glue_halfstrips_vertical(hs, hs);
    CHECK(g.w == 2);
    CHECK(max_abs(g.line_ff.matrix - Matrix::Identity(12, 12)) < 1e-12);
    CHECK(max_abs(g.cut_cut - Matrix::Identity(2, 2)) < 1e-12);
    CHECK(max_abs(g.first_cut) < 1e-12);
  }
  SUBCASE("gluing agrees with the half-strip of the vertically glued weight") {
    const int n = 48, m = 8;
    const auto hs = halfstrip_fixed_point(Q, Side::W, n, 256);
    const auto g = glue_halfstrips_vertical(hs, hs);
    const auto R2 = glue_sn(to_scaled(Q), to_scaled(Q)).form;
    const auto direct = halfstrip_fixed_point_rect(R2, Side::W, n, 256);
    CHECK(max_abs(g.line_ff.matrix.topLeftCorner(m, m) -
                  direct.line_ff.matrix.topLeftCorner(m, m)) < 1e-6);
    CHECK(max_abs(g.cut_cut - direct.cut_cut) < 1e-6);
    CHECK(max_abs(g.first_cut.topRows(m) - direct.first_cut.topRows(m)) < 1e-6);
    const Matrix A = g.assembled();
    CHECK(max_abs(A - A.adjoint().eval()) < 1e-10);
    CHECK(min_eigenvalue(A) > 0);
  }
  SUBCASE("gluing a rectangle is a fixed point up to the shift morphism") {
    const int n = 32, m = n - 8;
    const auto hs = halfstrip_fixed_point(Q, Side::W, n, 256);
    const auto R = surface_power(Q, 1, 1).form;
    const auto g = glue_halfstrip_rect(hs, R);
    CHECK(max_abs(g.line_ff.matrix.topLeftCorner(m, m) -
                  hs.line_ff.matrix.topLeftCorner(m, m)) < 1e-7);
    CHECK(max_abs(g.line_fs.matrix.topLeftCorner(m, m) -
                  hs.line_fs.matrix.topLeftCorner(m, m)) < 1e-7);
    CHECK(max_abs(g.first_cut.topRows(m) - hs.first_cut.topRows(m)) < 1e-7);
    CHECK(max_abs(g.cut_cut - hs.cut_cut) < 1e-7);
  }
  SUBCASE("identity forms glued to the identity fixed point stay unchanged") {
    const auto hs = halfstrip_fixed_point(identity_weight(), Side::W, 12, 64);
    const auto R = surface_power(identity_weight(), 2, 1).form;
    const auto g = glue_halfstrip_rect(hs, R);
    CHECK(max_abs(g.line_ff.matrix - hs.line_ff.matrix) < 1e-12);
    CHECK(max_abs(g.cut_cut - hs.cut_cut) < 1e-12);
  }
  SUBCASE("two successive rectangles associate with the pre-glued rectangle") {
    const int n = 32, m = n - 10;
    const auto hs = halfstrip_fixed_point(Q, Side::W, n, 256);
    const auto R1 = surface_power(Q, 1, 1).form;
    const auto R2 = surface_power(Q, 2, 1).form;
    const auto twice = glue_halfstrip_rect(glue_halfstrip_rect(hs, R1), R1);
    const auto once = glue_halfstrip_rect(hs, R2);
    CHECK(max_abs(twice.line_ff.matrix.topLeftCorner(m, m) -
                  once.line_ff.matrix.topLeftCorner(m, m)) < 1e-8);
    CHECK(max_abs(twice.cut_cut - once.cut_cut) < 1e-8);
  }
  SUBCASE("truncation guard") {
    const auto hs = halfstrip_fixed_point(Q, Side::W, 10, 64);
    const auto R = surface_power(Q, 4, 1).form;
    CHECK_THROWS_AS(glue_halfstrip_rect(hs, R), TruncationExceeded);
  }
}

TEST_CASE("opposite half-strips reproduce the strip") {
  const auto Q = reference_weight();
  SUBCASE("identity weight is exact") {
    const auto hs = halfstrip_fixed_point(identity_weight(), Side::W, 10, 64);
    auto hsE = hs;
    hsE.side = Side::E;
    const auto s = strip_symbol(identity_weight(), Direction::WE, 64);
    const auto cmp = glue_opposite_halfstrips(hs, hsE, s, 4);
    CHECK(cmp.near_cut_residual < 1e-12);
  }
  SUBCASE("reference weight: residual at the rounding floor for every n") {
    // for dihedral fixed points the gluing identity is exact at any
    // truncation (T - H plus the Hankel restored by the cut elimination),
    // so the spec'd geometric decay saturates at machine precision
    const auto s = strip_symbol(Q, Direction::WE, 256);
    double prev = 1.0;
    for (int n : {24, 32, 48, 64}) {
      const auto hsW = halfstrip_fixed_point(Q, Side::W, n, 256);
      auto hsE = halfstrip_fixed_point(Q, Side::E, n, 256);
      const auto cmp = glue_opposite_halfstrips(hsW, hsE, s, 8);
      if (n == 48) CHECK(cmp.near_cut_residual < 1e-6);
      CHECK(cmp.near_cut_residual <= prev + 1e-14);
      CHECK(cmp.near_cut_residual < 1e-12);
      prev = cmp.near_cut_residual;
    }
  }
  SUBCASE("technical identity: cross block equals -U K^{-1} U*") {
    const int n = 24;
    const auto hs = halfstrip_fixed_point(Q, Side::W, n, 256);
    const auto s = strip_symbol(Q, Direction::WE, 256);
    const Matrix U = u_transverse(Q, Side::W, n);
    const Matrix K2 = 2.0 * hs.cut_cut;  // G_L + G_R
    const Matrix cross = -U * K2.inverse() * U.adjoint();
    for (int i = 0; i + i <= 12; ++i)
      for (int j = 0; j + j <= 12; ++j) {
        const Complex expect = s.symbol.fourier(-1 - i - j)(0, 0);
        CHECK(std::abs(cross(i, j) - expect) < 1e-8);
      }
  }
  SUBCASE("intertwining U W^L = T(e^{i theta}) U on retained rows") {
    const int n = 24;
    const Matrix U = u_transverse(Q, Side::W, n);
    Matrix Kc(2, 2);
    Kc << 2.0, -0.5, -0.5, 2.0;
    const auto W = w_via_fourier(EdgeCoupling::from_matrix(1, Kc));
    const auto T = toeplitz(phase_symbol(64), Side::W, n);
    const Matrix lhs = U * W.WL;
    const Matrix rhs = T.matrix * U;
    CHECK(max_abs((lhs - rhs).topRows(n - 1)) < 1e-9);
  }
}
