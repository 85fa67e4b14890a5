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

TEST_CASE("decoupled weight has zero interior") {
  const auto I = identity_weight();
  const Vector b = random_real_vector(2 * 3 + 2 * 3, 1);
  const auto f = solve_harmonic(I, 3, 3, b);
  for (int k = 0; k < 3; ++k)
    for (int l = 1; l < 3; ++l) CHECK(std::abs(f.horizontal(k, l)(0)) < 1e-14);
}

TEST_CASE("harmonic residual is small relative to the boundary") {
  const auto Q = reference_weight();
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 2}, {4, 3}, {5, 5}}) {
    const Vector b = random_real_vector(2 * p + 2 * q, 10 + p + q);
    const auto f = solve_harmonic(Q, p, q, b);
    CHECK(harmonic_residual(Q, f) < 1e-10 * b.norm());
  }
}

TEST_CASE("constant boundary solves the one-face stationarity") {
  const auto Q = reference_weight();
  const int p = 2, q = 2;
  Vector b = Vector::Ones(2 * p + 2 * q);
  const auto f = solve_harmonic(Q, p, q, b);
  CHECK(harmonic_residual(Q, f) < 1e-10 * b.norm());
  // interior stays constant by symmetry of the boundary data
  CHECK(std::abs(f.horizontal(0, 1)(0) - f.horizontal(1, 1)(0)) < 1e-12);
}

TEST_CASE("stokes surface power agrees with both other routes") {
  const auto Q = reference_weight();
  SUBCASE("identity is immediate") {
    const auto s = stokes_surface_power(identity_weight(), 2, 2);
    CHECK(max_abs(s.matrix.mat() - Matrix::Identity(s.dim(), s.dim())) < 1e-14);
  }
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 2}, {3, 1}, {4, 4}}) {
    const auto st = stokes_surface_power(Q, p, q);
    const auto orc = oracle_surface_power(Q, p, q).form;
    const auto rec = surface_power(Q, p, q).form;
    const double scale = max_abs(orc.matrix.mat());
    CHECK(max_abs(st.matrix.mat() - orc.matrix.mat()) / scale < 1e-8);
    CHECK(max_abs(st.matrix.mat() - rec.matrix.mat()) / scale < 1e-8);
  }
}

TEST_CASE("zeta modes") {
  SUBCASE("u = 0 decouples into the quadratic 2t + a(z + 1/z) = 0") {
    const auto modes = zeta_modes(1.25, -1.0, 0.0, 3);
    for (const auto& m : modes) CHECK(std::abs(m.zeta - 2.0) < 1e-12);
  }
  SUBCASE("thin strip q = 1") {
    const auto modes = zeta_modes(1.25, -1.0, 0.0, 1);
    REQUIRE(modes.size() == 1);
    CHECK(std::abs(modes[0].zeta - 2.0) < 1e-12);
  }
  SUBCASE("reference weight q = 3: residuals and root product") {
    const auto modes = zeta_modes(2.0, -0.5, -0.25, 3);
    REQUIRE(modes.size() == 3);
    for (const auto& m : modes) {
      CHECK(std::abs(m.zeta) > 1.0);
      CHECK(zeta_mode_residual(2.0, -0.5, -0.25, 3, m) < 1e-10);
      const double other = 1.0 / m.zeta;  // the companion root
      CHECK(std::abs(m.zeta * other - 1.0) < 1e-12);
    }
  }
  SUBCASE("a = 0 degenerates") {
    CHECK_THROWS_AS(zeta_modes(1.0, 0.0, 0.1, 2), DegenerateMode);
  }
  SUBCASE("critical weight with colliding roots rejected") {
    CHECK_THROWS_AS(zeta_modes(1.0, -1.0, 0.0, 2), DegenerateMode);
  }
}

TEST_CASE("sine orthogonality with the corrected top-mode normalization") {
  for (int q = 2; q <= 16; ++q) {
    for (int r = 1; r <= q; ++r) {
      for (int rp = 1; rp <= q; ++rp) {
        double s = 0.0;
        for (int l = 0; l < q; ++l)
          s += std::sin(M_PI * r * (l + 0.5) / q) * std::sin(M_PI * rp * (l + 0.5) / q);
        const double expect = (r != rp) ? 0.0 : (r == q ? q : q / 2.0);
        CHECK(std::abs(s - expect) < 1e-12);
      }
    }
  }
}

TEST_CASE("sine mode solution matches the dense solver") {
  const double t = 2.0, a = -0.5, u = -0.25;
  const auto Q = reference_weight();
  SUBCASE("zero side values give the zero field") {
    const auto f = sine_mode_solution(t, a, u, 3, 3, Side::W, Vector::Zero(3));
    CHECK(f.values.cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("thin strip follows zeta^{+-k}") {
    Vector w(1);
    w << 1.0;
    const auto f = sine_mode_solution(1.25, -1.0, 0.0, 6, 1, Side::W, w);
    const double z = 2.0;
    const double det = std::pow(z, 6) - std::pow(z, -6);
    for (int k = 0; k <= 6; ++k) {
      const double expect = (0.0 - std::pow(z, -6)) / det * std::pow(z, k) +
                            (std::pow(z, 6) - 0.0) / det * std::pow(z, -k);
      CHECK(std::abs(f.vertical(k, 0)(0).real() - expect) < 1e-12);
    }
  }
  for (Side side : {Side::W, Side::E, Side::S, Side::N}) {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{4, 4}, {8, 8}, {3, 5}}) {
      const int len = (side == Side::W || side == Side::E) ? q : p;
      const Vector vals = random_real_vector(len, 70 + len);
      const auto f = sine_mode_solution(t, a, u, p, q, side, vals);
      Vector b = Vector::Zero(2 * p + 2 * q);
      const int off =
          side == Side::S ? 0 : side == Side::N ? p : side == Side::W ? 2 * p : 2 * p + q;
      for (int i = 0; i < len; ++i) b(off + i) = vals(i);
      const auto dense = solve_harmonic(Q, p, q, b);
      CHECK((f.values - dense.values).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("split surface power") {
  SUBCASE("identity weight has only the four self terms") {
    const auto blocks = split_surface_power(identity_weight(), 2, 2);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        if (a == b)
          CHECK(max_abs(blocks[a][b] -
                        Matrix::Identity(blocks[a][b].rows(), blocks[a][b].cols())) < 1e-14);
        else
          CHECK(max_abs(blocks[a][b]) < 1e-14);
      }
  }
  SUBCASE("blocks sum to the surface power and pair adjointly") {
    const auto Q = reference_weight();
    const int p = 2, q = 2;
    const auto blocks = split_surface_power(Q, p, q);
    const auto full = stokes_surface_power(Q, p, q);
    const int nb = full.dim();
    Matrix sum = Matrix::Zero(nb, nb);
    const std::array<int, 4> offs = {0, p, 2 * p, 2 * p + q};
    const std::array<int, 4> lens = {p, p, q, q};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        sum.block(offs[a], offs[b], lens[a], lens[b]) += blocks[a][b];
    CHECK(max_abs(sum - full.matrix.mat()) < 1e-10);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        CHECK(max_abs(blocks[a][b] - blocks[b][a].adjoint()) < 1e-10);
  }
}
