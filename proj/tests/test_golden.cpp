// Frozen reference values for the (2, -0.5, -0.25) dihedral weight. Each
// number was cross-validated between independent routes (joint elimination
// vs recursion vs harmonic assembly; quadrature vs determinant identities
// vs torus asymptotics) before being frozen here.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmrf/corners.hpp"
#include "gmrf/eigenvalue.hpp"
#include "gmrf/guill_rect.hpp"
#include "test_support.hpp"

using namespace gmrf;
using gmrf::testing::reference_weight;

TEST_CASE("surface power 3x3 golden values") {
  const auto s = oracle_surface_power(reference_weight(), 3, 3);
  CHECK(std::abs(s.log_scale - 5.5875322223213253) < 1e-11);
  CHECK(std::abs(s.form.matrix.mat()(0, 0).real() - 1.9157654927359131) < 1e-12);
  CHECK(std::abs(s.form.matrix.mat()(0, 1).real() + 0.023474297836452336) < 1e-12);
  CHECK(std::abs(s.form.matrix.mat()(0, 11).real() + 0.00018712800800905539) < 1e-12);
  // the recursion reproduces the frozen values too
  const auto r = surface_power(reference_weight(), 3, 3);
  CHECK(std::abs(r.log_scale - 5.5875322223213253) < 1e-10);
}

TEST_CASE("eigenvalue golden values") {
  const auto Q = reference_weight();
  CHECK(std::abs(free_energy(Q, 256) - 0.95698246804640785) < 1e-12);
  CHECK(std::abs(lambda_1d_we(Q) - 0.46758717807373018) < 1e-12);
  CHECK(std::abs(lambda_prime_integral(Q, 256) - 0.4893952899725651) < 1e-12);
}

TEST_CASE("boundary weight golden values at (2,2)") {
  const auto bw = assemble_boundary_weight(reference_weight(), 2, 2, 32, 256);
  CHECK(std::abs(bw.form.matrix.mat()(0, 0).real() - 1.8883482864307517) < 1e-10);
  CHECK(std::abs(bw.form.matrix.mat()(0, 3).real() + 9.7197580223835429e-07) < 1e-10);
  CHECK(std::abs(bw.form.matrix.mat()(0, 7).real() + 4.2118369591723049e-05) < 1e-10);
}
