#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "gmrf/guill_rect.hpp"
#include "gmrf/io.hpp"
#include "test_support.hpp"

using namespace gmrf;
using gmrf::testing::max_abs;
using gmrf::testing::reference_weight;

TEST_CASE("matrix text format round trip") {
  const Matrix M = gmrf::testing::random_hermitian_pd(5, 3) +
                   Complex(0, 1) * Matrix::Identity(5, 5) * 0.0;
  std::ostringstream os;
  write_matrix(os, M);
  std::istringstream is(os.str());
  const Matrix back = read_matrix(is);
  CHECK(max_abs(back - M) == 0.0);  // 17 significant digits round-trip doubles
}

TEST_CASE("comment lines are ignored") {
  std::istringstream is("# a comment\ncomplex 1 2\n# another\n1 0 2 -1\n");
  const Matrix m = read_matrix(is);
  CHECK(m(0, 0) == Complex(1, 0));
  CHECK(m(0, 1) == Complex(2, -1));
}

TEST_CASE("malformed input raises ParseError") {
  std::istringstream a("notaheader 2 2\n");
  CHECK_THROWS_AS(read_matrix(a), ParseError);
  std::istringstream b("complex 2 2\n1 0 2 0\n");
  CHECK_THROWS_AS(read_matrix(b), ParseError);
  std::istringstream c("face 0 1\n");
  CHECK_THROWS_AS(read_face(c), ParseError);
}

TEST_CASE("face and dihedral files") {
  const auto Q = reference_weight();
  std::ostringstream os;
  write_face(os, Q);
  std::istringstream is(os.str());
  const auto back = read_face(is);
  CHECK(max_abs(back.matrix.mat() - Q.matrix.mat()) == 0.0);

  std::ostringstream ds;
  ds << "dihedral 1\n";
  write_matrix(ds, Matrix::Constant(1, 1, 2.0));
  write_matrix(ds, Matrix::Constant(1, 1, -0.5));
  write_matrix(ds, Matrix::Constant(1, 1, -0.25));
  std::istringstream dis(ds.str());
  const auto dq = read_face(dis);
  CHECK(max_abs(dq.matrix.mat() - Q.matrix.mat()) == 0.0);
}

TEST_CASE("rect export round trip") {
  const auto f = surface_power(reference_weight(), 2, 2);
  std::ostringstream os;
  write_rect(os, f);
  std::istringstream is(os.str());
  const auto back = read_rect(is);
  CHECK(back.form.p == 2);
  CHECK(back.form.q == 2);
  CHECK(std::abs(back.log_scale - f.log_scale) == 0.0);
  CHECK(max_abs(back.form.matrix.mat() - f.form.matrix.mat()) == 0.0);
}

TEST_CASE("symbol csv has a header and one row per grid point") {
  const auto s = strip_symbol(reference_weight(), Direction::WE, 8);
  std::ostringstream os;
  write_symbol_csv(os, s.symbol);
  int lines = 0;
  std::istringstream is(os.str());
  std::string line;
  while (std::getline(is, line)) ++lines;
  CHECK(lines == 9);
}

TEST_CASE("eigen report csv") {
  EigenReport r;
  r.log_lambda_fourier = 1.0;
  r.torus_per_face = {{8, 0.5}};
  r.szego_sequence = {{16, 0.25}};
  std::ostringstream os;
  write_eigen_report_csv(os, r);
  CHECK(os.str().find("route,parameter,value") == 0);
  CHECK(os.str().find("torus_per_face,8,") != std::string::npos);
}
