#include "gmrf/io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace gmrf {

namespace {

// next content line, comments stripped
bool next_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_matrix(std::ostream& os, const Matrix& m) {
  os << "complex " << m.rows() << " " << m.cols() << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      os << format_double(m(i, j).real()) << " " << format_double(m(i, j).imag());
    }
    os << "\n";
  }
}

Matrix read_matrix(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw ParseError("matrix: missing header line");
  std::istringstream hs(line);
  std::string tag;
  int rows = 0, cols = 0;
  hs >> tag >> rows >> cols;
  if (tag != "complex" || rows <= 0 || cols <= 0)
    throw ParseError("matrix: bad header '" + line + "'");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!next_line(is, line)) throw ParseError("matrix: truncated data");
    std::istringstream ls(line);
    for (int j = 0; j < cols; ++j) {
      double re, im;
      if (!(ls >> re >> im)) throw ParseError("matrix: bad row " + std::to_string(i));
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

void write_face(std::ostream& os, const FaceOperator& Q) {
  os << "face " << Q.d1 << " " << Q.d2 << "\n";
  write_matrix(os, Q.matrix.mat());
}

FaceOperator read_face(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw ParseError("face: empty file");
  std::istringstream hs(line);
  std::string tag;
  hs >> tag;
  if (tag == "face") {
    int d1 = 0, d2 = 0;
    hs >> d1 >> d2;
    if (d1 <= 0 || d2 <= 0) throw ParseError("face: bad dimensions");
    return FaceOperator::from_matrix(d1, d2, read_matrix(is));
  }
  if (tag == "dihedral") {
    int d = 0;
    hs >> d;
    if (d <= 0) throw ParseError("dihedral: bad dimension");
    DihedralParams p;
    p.T = read_matrix(is);
    p.A = read_matrix(is);
    p.U = read_matrix(is);
    if (p.T.rows() != d || p.A.rows() != d || p.U.rows() != d)
      throw ParseError("dihedral: matrix dimensions disagree with header");
    return dihedral_face(p);
  }
  throw ParseError("face: unknown header '" + line + "'");
}

void write_rect(std::ostream& os, const ScaledQuadForm& f) {
  os << "rect " << f.form.p << " " << f.form.q << " " << f.form.d1 << " " << f.form.d2 << " "
     << format_double(f.log_scale) << "\n";
  write_matrix(os, f.form.matrix.mat());
}

ScaledQuadForm read_rect(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw ParseError("rect: empty file");
  std::istringstream hs(line);
  std::string tag;
  ScaledQuadForm f;
  hs >> tag >> f.form.p >> f.form.q >> f.form.d1 >> f.form.d2 >> f.log_scale;
  if (tag != "rect") throw ParseError("rect: bad header");
  f.form.matrix = HermitianMatrix(read_matrix(is));
  if (f.form.matrix.dim() != f.form.dim()) throw ParseError("rect: dimensions disagree");
  return f;
}

void write_halfstrip(std::ostream& os, const HalfStripForm& hs) {
  os << "halfstrip " << side_name(hs.side) << " " << hs.n << " "
     << (hs.side == Side::W || hs.side == Side::E ? hs.dline : hs.dcut) << " "
     << (hs.side == Side::W || hs.side == Side::E ? hs.dcut : hs.dline) << "\n";
  write_matrix(os, hs.assembled());
}

void write_boundary(std::ostream& os, const BoundaryWeight& bw) {
  os << "boundary " << bw.p << " " << bw.q << " " << bw.form.d1 << " " << bw.form.d2 << " "
     << bw.n << " " << bw.grid << "\n";
  write_matrix(os, bw.form.matrix.mat());
}

void write_symbol_csv(std::ostream& os, const SymbolFunction& sym) {
  os << "theta";
  for (int i = 0; i < sym.rows(); ++i)
    for (int j = 0; j < sym.cols(); ++j)
      os << ", entry_" << i << j << "_re, entry_" << i << j << "_im";
  os << "\n";
  for (int m = 0; m < sym.grid_size(); ++m) {
    os << format_double(2.0 * M_PI * m / sym.grid_size());
    for (int i = 0; i < sym.rows(); ++i)
      for (int j = 0; j < sym.cols(); ++j)
        os << ", " << format_double(sym.sample(m)(i, j).real()) << ", "
           << format_double(sym.sample(m)(i, j).imag());
    os << "\n";
  }
}

void write_eigen_report_csv(std::ostream& os, const EigenReport& r) {
  os << "route,parameter,value\n";
  os << "fourier,0," << format_double(r.log_lambda_fourier) << "\n";
  os << "one_dim_we,0," << format_double(r.log_lambda_1d_we) << "\n";
  os << "prime_integral,0," << format_double(r.log_lambda_prime_integral) << "\n";
  os << "factorization_residual,0," << format_double(r.factorization_residual) << "\n";
  for (const auto& [p, v] : r.torus_per_face) os << "torus_per_face," << p << "," << format_double(v) << "\n";
  for (const auto& [n, v] : r.szego_sequence) os << "szego," << n << "," << format_double(v) << "\n";
}

}  // namespace gmrf
