#pragma once

#include <iosfwd>
#include <string>

#include "gmrf/corners.hpp"
#include "gmrf/eigenvalue.hpp"

namespace gmrf {

// Repo-wide matrix text format: line 1 "complex <rows> <cols>", then
// row-major "re im" pairs, '#'-prefixed comment lines ignored.
void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);

// Face-weight file: "face <d1> <d2>" then the (2d1+2d2)^2 matrix.
// Dihedral shorthand: "dihedral <d>" then T, A, U matrices in sequence.
void write_face(std::ostream& os, const FaceOperator& Q);
FaceOperator read_face(std::istream& is);

// "rect <p> <q> <d1> <d2> <log_scale>" followed by the matrix.
void write_rect(std::ostream& os, const ScaledQuadForm& f);
ScaledQuadForm read_rect(std::istream& is);

// "halfstrip <side> <n> <d1> <d2>" followed by the assembled matrix.
void write_halfstrip(std::ostream& os, const HalfStripForm& hs);

// "boundary <p> <q> <d1> <d2> <n> <M>" followed by the matrix.
void write_boundary(std::ostream& os, const BoundaryWeight& bw);

// Symbol CSV: "theta, entry_00_re, entry_00_im, ..." row-major entries.
void write_symbol_csv(std::ostream& os, const SymbolFunction& sym);

// EigenReport CSV of (route, parameter, value).
void write_eigen_report_csv(std::ostream& os, const EigenReport& r);

std::string format_double(double v);

}  // namespace gmrf
