#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmrf/guill_rect.hpp"
#include "gmrf/harmonic.hpp"
#include "test_support.hpp"

using namespace gmrf;
using gmrf::testing::identity_weight;
using gmrf::testing::max_abs;
using gmrf::testing::random_real_vector;
using gmrf::testing::reference_weight;

TEST_CASE("dihedral_face basics") {
  const auto I = identity_weight();
  CHECK(max_abs(I.matrix.mat() - Matrix::Identity(4, 4)) < 1e-15);

  const auto Q = reference_weight();
  Eigen::SelfAdjointEigenSolver<Matrix> es(Q.matrix.mat(), Eigen::EigenvaluesOnly);
  Vector expect(4);
  const Eigen::VectorXd ev = es.eigenvalues();
  CHECK(std::abs(ev(0) - 1.0) < 1e-14);
  CHECK(std::abs(ev(1) - 2.0) < 1e-14);
  CHECK(std::abs(ev(2) - 2.5) < 1e-14);
  CHECK(std::abs(ev(3) - 2.5) < 1e-14);

  // (1, 0.6, 0.3): smallest eigenvalue t + a - 2u = 1.0 > 0? compute densely:
  // eigenvalues {t+a+2u, t+a-2u, t-a, t-a} = {2.2, 1.0, 0.4, 0.4} -> accepted
  CHECK_NOTHROW(dihedral_face(DihedralParams::scalar(1.0, 0.6, 0.3)));
  // and a genuinely indefinite one is rejected
  CHECK_THROWS_AS(dihedral_face(DihedralParams::scalar(1.0, 1.2, 0.3)), NotPositiveDefinite);
}

TEST_CASE("dihedral action") {
  const auto Q = reference_weight();
  SUBCASE("invariant weight is fixed by both generators") {
    for (const DihedralElement g : {DihedralElement{1, false}, DihedralElement{0, true},
                                    DihedralElement{3, true}}) {
      const auto gQ = apply_dihedral(g, Q);
      CHECK(max_abs(gQ.matrix.mat() - Q.matrix.mat()) < 1e-14);
    }
    CHECK(Q.is_dihedral());
  }
  SUBCASE("r applied four times is the identity on a generic weight") {
    const Matrix m = gmrf::testing::random_hermitian_pd(4, 42);
    const auto G = FaceOperator::from_matrix(1, 1, m);
    auto cur = G;
    for (int i = 0; i < 4; ++i) cur = apply_dihedral(DihedralElement{1, false}, cur);
    CHECK(max_abs(cur.matrix.mat() - G.matrix.mat()) < 1e-14);
    CHECK_FALSE(G.is_dihedral());
  }
  SUBCASE("rotation permutes blocks by the displayed table") {
    const Matrix m = gmrf::testing::random_hermitian_pd(4, 43);
    const auto G = FaceOperator::from_matrix(1, 1, m);
    const auto rG = apply_dihedral(DihedralElement{1, false}, G);
    // first row of r |> Q is (Q_WW, Q_WE, Q_WN, Q_WS)
    CHECK(std::abs(rG.matrix.mat()(0, 0) - G.block(Side::W, Side::W)(0, 0)) < 1e-15);
    CHECK(std::abs(rG.matrix.mat()(0, 1) - G.block(Side::W, Side::E)(0, 0)) < 1e-15);
    CHECK(std::abs(rG.matrix.mat()(0, 2) - G.block(Side::W, Side::N)(0, 0)) < 1e-15);
    CHECK(std::abs(rG.matrix.mat()(0, 3) - G.block(Side::W, Side::S)(0, 0)) < 1e-15);
    // reflection row three is (Q_SW, Q_SE, Q_SS, Q_SN)
    const auto sG = apply_dihedral(DihedralElement{0, true}, G);
    CHECK(std::abs(sG.matrix.mat()(2, 2) - G.block(Side::S, Side::S)(0, 0)) < 1e-15);
    CHECK(std::abs(sG.matrix.mat()(2, 3) - G.block(Side::S, Side::N)(0, 0)) < 1e-15);
  }
}

TEST_CASE("edge indexing counts") {
  EdgeIndexing idx{3, 2, 1, 1};
  CHECK(idx.horizontal_count() == 9);
  CHECK(idx.vertical_count() == 8);
  CHECK(idx.boundary_scalar_indices().size() == 10);
  CHECK(idx.interior_scalar_indices().size() == 7);
}

TEST_CASE("domain_precision") {
  SUBCASE("identity face on a single face") {
    auto [M, idx] = domain_precision(identity_weight(), 1, 1);
    CHECK(max_abs(M.mat() - Matrix::Identity(4, 4)) < 1e-15);
  }
  SUBCASE("identity face, 2x1: shared vertical edge has coefficient 2") {
    auto [M, idx] = domain_precision(identity_weight(), 2, 1);
    Matrix expect = Matrix::Identity(idx.scalar_dim(), idx.scalar_dim());
    const int shared = idx.scalar_offset(idx.vertical_edge(1, 0));
    expect(shared, shared) = 2.0;
    CHECK(max_abs(M.mat() - expect) < 1e-15);
  }
  SUBCASE("reference weight 2x2 is Hermitian PD") {
    auto [M, idx] = domain_precision(reference_weight(), 2, 2);
    CHECK(idx.scalar_dim() == 12);
    CHECK(is_positive_definite(M));
  }
}

TEST_CASE("Markov factorization across a guillotine cut") {
  const auto Q = reference_weight();
  const int p = 3, q = 2, p1 = 2;
  auto [M, idx] = domain_precision(Q, p, q);
  auto [Ml, il] = domain_precision(Q, p1, q);
  auto [Mr, ir] = domain_precision(Q, p - p1, q);
  // map sub-rectangle edges into the host rectangle and add
  Matrix sum = Matrix::Zero(idx.scalar_dim(), idx.scalar_dim());
  auto embed = [&](const Matrix& src, const EdgeIndexing& sub, int xoff) {
    std::vector<int> map(sub.scalar_dim());
    for (int l = 0; l <= sub.q; ++l)
      for (int k = 0; k < sub.p; ++k)
        map[sub.scalar_offset(sub.horizontal_edge(k, l))] =
            idx.scalar_offset(idx.horizontal_edge(k + xoff, l));
    for (int l = 0; l < sub.q; ++l)
      for (int k = 0; k <= sub.p; ++k)
        map[sub.scalar_offset(sub.vertical_edge(k, l))] =
            idx.scalar_offset(idx.vertical_edge(k + xoff, l));
    for (int i = 0; i < sub.scalar_dim(); ++i)
      for (int j = 0; j < sub.scalar_dim(); ++j) sum(map[i], map[j]) += src(i, j);
  };
  embed(Ml.mat(), il, 0);
  embed(Mr.mat(), ir, p1);
  CHECK(max_abs(sum - M.mat()) == 0.0);  // exact by construction
}

TEST_CASE("oracle surface power") {
  SUBCASE("identity weight 2x1") {
    const auto s = oracle_surface_power(identity_weight(), 2, 1);
    CHECK(max_abs(s.form.matrix.mat() - Matrix::Identity(6, 6)) < 1e-15);
    CHECK(std::abs(s.log_scale - std::log(M_PI)) < 1e-14);
  }
  SUBCASE("identity weight stays the identity form") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {3, 2}, {4, 4}}) {
      const auto s = oracle_surface_power(identity_weight(), p, q);
      CHECK(max_abs(s.form.matrix.mat() - Matrix::Identity(s.form.dim(), s.form.dim())) <
            1e-14);
    }
  }
  SUBCASE("reference weight is Hermitian PD for all tested sizes") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 2}, {3, 3}, {4, 2}}) {
      const auto s = oracle_surface_power(reference_weight(), p, q);
      CHECK(is_positive_definite(s.form.matrix));
    }
  }
}

TEST_CASE("Stokes cut identity across a vertical cut") {
  const auto Q = reference_weight();
  const int p = 3, q = 2, p1 = 1;
  const auto full = oracle_surface_power(Q, p, q).form;
  const auto left = oracle_surface_power(Q, p1, q).form;
  const auto right = oracle_surface_power(Q, p - p1, q).form;
  for (unsigned seed = 0; seed < 20; ++seed) {
    const Vector x = random_real_vector(full.dim(), 900 + seed);
    const Vector cut = harmonic_cut_values(Q, p, q, p1, x);
    // restrictions in canonical layouts
    Vector xl(left.dim()), xr(right.dim());
    for (int k = 0; k < p1; ++k) xl(k) = x(k);                    // S
    for (int k = 0; k < p1; ++k) xl(p1 + k) = x(p + k);           // N
    for (int l = 0; l < q; ++l) xl(2 * p1 + l) = x(2 * p + l);    // W
    for (int l = 0; l < q; ++l) xl(2 * p1 + q + l) = cut(l);      // E = cut
    const int p2 = p - p1;
    for (int k = 0; k < p2; ++k) xr(k) = x(p1 + k);
    for (int k = 0; k < p2; ++k) xr(p2 + k) = x(p + p1 + k);
    for (int l = 0; l < q; ++l) xr(2 * p2 + l) = cut(l);
    for (int l = 0; l < q; ++l) xr(2 * p2 + q + l) = x(2 * p + q + l);
    const double lhs = (x.adjoint() * full.matrix.mat() * x)(0).real();
    const double rhs = (xl.adjoint() * left.matrix.mat() * xl)(0).real() +
                       (xr.adjoint() * right.matrix.mat() * xr)(0).real();
    CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("face file round trip preserves dihedral detection") {
  const auto Q = reference_weight();
  CHECK(Q.is_dihedral());
  const auto G = FaceOperator::from_matrix(1, 1, gmrf::testing::random_hermitian_pd(4, 77));
  CHECK_FALSE(G.is_dihedral());
}
