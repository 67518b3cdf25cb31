#include "bsespec/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bsespec/error.hpp"

namespace bsespec::io {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  return out;
}

void check_written(std::ostream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

Matrix read_coordinate(std::istream& in, const std::string& header, int& line_no) {
  std::istringstream hs(header);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix" || format != "coordinate") {
    parse_fail(line_no, "only 'matrix coordinate' MatrixMarket files are supported");
  }
  const bool complex_field = field == "complex";
  if (!complex_field && field != "real" && field != "integer") {
    parse_fail(line_no, "unsupported field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian") {
    parse_fail(line_no, "unsupported symmetry '" + symmetry + "'");
  }

  std::string line;
  long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[0] == '%') continue;
    std::istringstream ls(line);
    if (!(ls >> rows >> cols >> nnz) || rows < 1 || cols < 1 || nnz < 0) {
      parse_fail(line_no, "bad size line");
    }
    std::string extra;
    if (ls >> extra) parse_fail(line_no, "trailing tokens on size line");
    break;
  }
  if (rows < 0) parse_fail(line_no, "missing size line");

  Matrix m = Matrix::Zero(rows, cols);
  long seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[0] == '%') continue;
    if (seen == nnz) parse_fail(line_no, "more entries than declared");
    std::istringstream ls(line);
    long i = 0, j = 0;
    double re = 0.0, im = 0.0;
    if (!(ls >> i >> j >> re)) parse_fail(line_no, "bad entry");
    if (complex_field && !(ls >> im)) parse_fail(line_no, "missing imaginary part");
    std::string extra;
    if (ls >> extra) parse_fail(line_no, "trailing tokens in entry");
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw Error(ErrorCode::DimensionMismatch,
                  "line " + std::to_string(line_no) + ": index outside the declared size");
    }
    const cplx v(re, im);
    m(i - 1, j - 1) = v;
    if (i != j && symmetry == "symmetric") m(j - 1, i - 1) = v;
    if (i != j && symmetry == "hermitian") m(j - 1, i - 1) = std::conj(v);
    ++seen;
  }
  if (seen != nnz) {
    parse_fail(line_no, "expected " + std::to_string(nnz) + " entries, found " +
                            std::to_string(seen));
  }
  return m;
}

Matrix read_dense(std::istream& in, const std::string& header, int& line_no) {
  std::istringstream hs(header);
  std::string tag, field;
  long rows = -1, cols = -1;
  if (!(hs >> tag >> rows >> cols >> field) || rows < 1 || cols < 1) {
    parse_fail(line_no, "bad dense header, expected 'dense <rows> <cols> complex'");
  }
  field = lower(field);
  if (field != "complex" && field != "real") parse_fail(line_no, "unsupported field");
  const bool complex_field = field == "complex";
  const long per = complex_field ? 2 : 1;
  const long total = rows * cols * per;

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(total));
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[0] == '%' || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (static_cast<long>(values.size()) == total) {
        parse_fail(line_no, "more values than declared");
      }
      try {
        std::size_t used = 0;
        values.push_back(std::stod(tok, &used));
        if (used != tok.size()) parse_fail(line_no, "bad number '" + tok + "'");
      } catch (const std::logic_error&) {
        parse_fail(line_no, "bad number '" + tok + "'");
      }
    }
  }
  if (static_cast<long>(values.size()) != total) {
    parse_fail(line_no, "expected " + std::to_string(total) + " values, found " +
                            std::to_string(values.size()));
  }
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      const std::size_t base = static_cast<std::size_t>((i * cols + j) * per);
      m(i, j) = cplx(values[base], complex_field ? values[base + 1] : 0.0);
    }
  }
  return m;
}

}  // namespace

Matrix read_matrix(std::istream& in) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (line.rfind("%%MatrixMarket", 0) == 0) return read_coordinate(in, line, line_no);
    if (line[0] == '%' || line[0] == '#') continue;
    if (lower(line).rfind("dense", 0) == 0) return read_dense(in, line, line_no);
    parse_fail(line_no, "unrecognized header");
  }
  parse_fail(line_no, "empty input");
}

Matrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  try {
    return read_matrix(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_matrix(std::ostream& out, const Matrix& m, MatrixFormat format) {
  if (format == MatrixFormat::Dense) {
    out << "dense " << m.rows() << ' ' << m.cols() << " complex\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        out << (j == 0 ? "" : " ") << fmt(m(i, j).real(), 17) << ' ' << fmt(m(i, j).imag(), 17);
      }
      out << '\n';
    }
    return;
  }
  long nnz = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) nnz += m(i, j) != cplx(0.0, 0.0);
  }
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == cplx(0.0, 0.0)) continue;
      out << i + 1 << ' ' << j + 1 << ' ' << fmt(m(i, j).real(), 17) << ' '
          << fmt(m(i, j).imag(), 17) << '\n';
    }
  }
}

void write_matrix(const std::filesystem::path& path, const Matrix& m, MatrixFormat format) {
  std::ofstream out = open_out(path);
  write_matrix(out, m, format);
  check_written(out, path);
}

Vector read_vector(const std::filesystem::path& path) {
  const Matrix m = read_matrix(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw Error(ErrorCode::DimensionMismatch, path.string() + ": expected a vector (n x 1)");
}

void write_vector(const std::filesystem::path& path, const Vector& v) {
  std::ofstream out = open_out(path);
  write_matrix(out, Matrix(v), MatrixFormat::Dense);
  check_written(out, path);
}

void write_spectrum(std::ostream& out, const Spectrum& s, TableFormat format) {
  const char sep = format == TableFormat::Csv ? ',' : '\t';
  if (s.is_complex()) {
    out << "# omega" << sep << "re" << sep << "im\n";
  } else {
    out << "# omega" << sep << "epsilon\n";
  }
  for (std::size_t i = 0; i < s.omegas.size(); ++i) {
    out << fmt(s.omegas[i], 12) << sep << fmt(s.values[i], 12);
    if (s.is_complex()) out << sep << fmt((*s.imag)[i], 12);
    out << '\n';
  }
}

void write_spectrum(const std::filesystem::path& path, const Spectrum& s, TableFormat format) {
  std::ofstream out = open_out(path);
  write_spectrum(out, s, format);
  check_written(out, path);
}

Spectrum read_spectrum(std::istream& in) {
  Spectrum s;
  std::string line;
  int line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (line[0] == '#') {
      if (columns == 0) {
        columns = 1;
        for (char c : line) columns += (c == ',' || c == '\t');
      }
      continue;
    }
    for (char& c : line) {
      if (c == ',' || c == '\t') c = ' ';
    }
    std::istringstream ls(line);
    double w = 0.0, re = 0.0, im = 0.0;
    if (!(ls >> w >> re)) parse_fail(line_no, "bad spectrum row");
    const bool has_im = static_cast<bool>(ls >> im);
    if (columns == 0) columns = has_im ? 3 : 2;
    if (has_im != (columns == 3)) parse_fail(line_no, "inconsistent column count");
    s.omegas.push_back(w);
    s.values.push_back(re);
    if (has_im) {
      if (!s.imag) s.imag.emplace();
      s.imag->push_back(im);
    }
  }
  return s;
}

Spectrum read_spectrum(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_spectrum(in);
}

void write_history(std::ostream& out, const std::vector<HistoryRow>& rows, TableFormat format) {
  const char sep = format == TableFormat::Csv ? ',' : '\t';
  out << "k" << sep << "angle\n";
  for (const HistoryRow& r : rows) out << r.k << sep << fmt(r.angle, 12) << '\n';
}

}  // namespace bsespec::io
