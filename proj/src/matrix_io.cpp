#include "lrp/matrix_io.hpp"

#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace lrp {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

double parse_number(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("bad numeric entry '" + text + "' " + where);
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used != text.size()) {
    throw ParseError("trailing characters in entry '" + text + "' " + where);
  }
  if (!std::isfinite(v)) {
    throw ParseError("non-finite entry '" + text + "' " + where);
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

MatrixCsv read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file: " + path);

  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty matrix file: " + path);
  long rows = 0, cols = 0;
  int complex_flag = -1;
  if (std::sscanf(header.c_str(), " # rows=%ld cols=%ld complex=%d", &rows, &cols,
                  &complex_flag) != 3 ||
      rows < 1 || cols < 1 || (complex_flag != 0 && complex_flag != 1)) {
    throw ParseError("bad matrix header '" + header + "' in " + path);
  }

  MatrixCsv out;
  out.complex = complex_flag == 1;
  if (out.complex) {
    out.cplx.resize(rows, cols);
  } else {
    out.real.resize(rows, cols);
  }

  std::string line;
  for (long r = 0; r < rows; ++r) {
    if (!std::getline(in, line)) {
      throw ParseError("unexpected end of file at row " + std::to_string(r) + " in " + path);
    }
    const std::vector<std::string> cells = split(line, ',');
    if (static_cast<long>(cells.size()) != cols) {
      throw ParseError("row " + std::to_string(r) + " has " + std::to_string(cells.size()) +
                       " entries, expected " + std::to_string(cols) + " in " + path);
    }
    for (long c = 0; c < cols; ++c) {
      const std::string where = "at (" + std::to_string(r) + "," + std::to_string(c) + ") in " + path;
      const std::size_t colon = cells[c].find(':');
      if (out.complex) {
        if (colon == std::string::npos) {
          throw ParseError("missing ':' in complex entry " + where);
        }
        out.cplx(r, c) = {parse_number(cells[c].substr(0, colon), where),
                          parse_number(cells[c].substr(colon + 1), where)};
      } else {
        if (colon != std::string::npos) {
          throw ParseError("unexpected ':' in real entry " + where);
        }
        out.real(r, c) = parse_number(cells[c], where);
      }
    }
  }
  return out;
}

RealMatrix read_real_matrix_csv(const std::string& path) {
  const MatrixCsv m = read_matrix_csv(path);
  return m.complex ? complex_to_real_matrix(m.cplx) : m.real;
}

namespace {

template <typename Writer>
void write_with(const std::string& path, Eigen::Index rows, Eigen::Index cols,
                bool complex, Writer&& cell) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << "# rows=" << rows << " cols=" << cols << " complex=" << (complex ? 1 : 0) << "\n";
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (c) out << ',';
      out << cell(r, c);
    }
    out << "\n";
  }
  if (!out) throw ParseError("write failed: " + path);
}

}  // namespace

void write_matrix_csv(const std::string& path, const RealMatrix& m) {
  write_with(path, m.rows(), m.cols(), false,
             [&](Eigen::Index r, Eigen::Index c) { return format_double(m(r, c)); });
}

void write_matrix_csv(const std::string& path, const ComplexMatrix& m) {
  write_with(path, m.rows(), m.cols(), true, [&](Eigen::Index r, Eigen::Index c) {
    return format_double(m(r, c).real()) + ":" + format_double(m(r, c).imag());
  });
}

void write_matrix_csv(const std::string& path, const IntMatrix& m) {
  write_with(path, m.rows(), m.cols(), false, [&](Eigen::Index r, Eigen::Index c) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%" PRId64, m(r, c));
    return std::string(buf);
  });
}

}  // namespace lrp
