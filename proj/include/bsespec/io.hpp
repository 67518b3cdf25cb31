#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bsespec/metrics.hpp"
#include "bsespec/spectrum.hpp"
#include "bsespec/types.hpp"

namespace bsespec::io {

enum class MatrixFormat { Coordinate, Dense };
enum class TableFormat { Csv, Tsv };

// Accepts either
//   %%MatrixMarket matrix coordinate {complex|real} {general|symmetric|hermitian}
//   % comments
//   rows cols nnz
//   i j re [im]            (1-based, one entry per line)
// or
//   dense rows cols complex
//   re im                  (rows * cols pairs, row-major)
// Throws ParseError (with line number) or DimensionMismatch.
Matrix read_matrix(std::istream& in);
Matrix read_matrix(const std::filesystem::path& path);

// 17 significant digits, so reading back is exact.
void write_matrix(std::ostream& out, const Matrix& m, MatrixFormat format = MatrixFormat::Coordinate);
void write_matrix(const std::filesystem::path& path, const Matrix& m,
                  MatrixFormat format = MatrixFormat::Coordinate);

// Vectors use the dense format with one column (or a coordinate n x 1 file).
Vector read_vector(const std::filesystem::path& path);
void write_vector(const std::filesystem::path& path, const Vector& v);

// "# omega,epsilon" then one row per sample at 12 significant digits; complex
// spectra write "# omega,re,im". TSV differs only in the delimiter.
void write_spectrum(std::ostream& out, const Spectrum& s, TableFormat format = TableFormat::Csv);
void write_spectrum(const std::filesystem::path& path, const Spectrum& s,
                    TableFormat format = TableFormat::Csv);

Spectrum read_spectrum(std::istream& in);
Spectrum read_spectrum(const std::filesystem::path& path);

// "k,angle" table.
void write_history(std::ostream& out, const std::vector<HistoryRow>& rows,
                   TableFormat format = TableFormat::Csv);

}  // namespace bsespec::io
