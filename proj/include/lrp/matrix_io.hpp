#pragma once

#include <string>

#include "lrp/matrix.hpp"

namespace lrp {

// Matrix CSV format: first line "# rows=R cols=C complex=0|1", then one row
// per line with comma-separated entries; complex entries are "re:im", real
// matrices omit the ":im" part. Doubles are written with 17 significant
// digits so files round-trip exactly.

struct MatrixCsv {
  bool complex = false;
  RealMatrix real;     // populated when !complex
  ComplexMatrix cplx;  // populated when complex
};

MatrixCsv read_matrix_csv(const std::string& path);

/// Reads a real matrix; a complex file is lowered to its real expansion.
RealMatrix read_real_matrix_csv(const std::string& path);

void write_matrix_csv(const std::string& path, const RealMatrix& m);
void write_matrix_csv(const std::string& path, const ComplexMatrix& m);
void write_matrix_csv(const std::string& path, const IntMatrix& m);

/// Shortest representation that parses back to the identical double.
std::string format_double(double v);

}  // namespace lrp
