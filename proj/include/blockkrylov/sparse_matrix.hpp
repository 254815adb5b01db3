#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "blockkrylov/errors.hpp"

namespace blockkrylov {

/// Symmetric sparse matrix in compressed sparse row form.
///
/// Column indices are strictly ascending within each row. Construction
/// validates the CSR structure and checks that the stored values are
/// symmetric to 1e-14 relative accuracy; positive definiteness is assumed,
/// not checked.
class SparseMatrix {
public:
  SparseMatrix(std::size_t n, std::vector<std::size_t> row_offsets,
               std::vector<std::size_t> col_indices, std::vector<double> values)
      : n_(n),
        row_offsets_(std::move(row_offsets)),
        col_indices_(std::move(col_indices)),
        values_(std::move(values)) {
    validate();
  }

  /// Assembles from (row, col, value) triplets; duplicates are summed.
  static SparseMatrix from_triplets(
      std::size_t n, std::vector<std::tuple<std::size_t, std::size_t, double>> triplets) {
    std::sort(triplets.begin(), triplets.end(),
              [](const auto& a, const auto& b) {
                return std::tie(std::get<0>(a), std::get<1>(a)) <
                       std::tie(std::get<0>(b), std::get<1>(b));
              });
    std::vector<std::size_t> counts(n, 0);
    std::vector<std::size_t> cols;
    std::vector<double> vals;
    cols.reserve(triplets.size());
    vals.reserve(triplets.size());
    for (const auto& [r, c, v] : triplets) {
      if (r >= n || c >= n) throw ConfigError("triplet index out of range");
      if (counts[r] > 0 && cols.back() == c) {
        vals.back() += v; // duplicate entry
        continue;
      }
      ++counts[r];
      cols.push_back(c);
      vals.push_back(v);
    }
    std::vector<std::size_t> offsets(n + 1, 0);
    for (std::size_t r = 0; r < n; ++r) offsets[r + 1] = offsets[r] + counts[r];
    return {n, std::move(offsets), std::move(cols), std::move(vals)};
  }

  std::size_t n() const noexcept { return n_; }
  /// Number of stored nonzeros (z in the kernel cost formulas).
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::size_t> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Stored value at (row, col), or 0 if the position is not in the pattern.
  double at(std::size_t row, std::size_t col) const {
    const std::size_t* lo = col_indices_.data() + row_offsets_[row];
    const std::size_t* hi = col_indices_.data() + row_offsets_[row + 1];
    const std::size_t* it = std::lower_bound(lo, hi, col);
    if (it == hi || *it != col) return 0.0;
    return values_[static_cast<std::size_t>(it - col_indices_.data())];
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.n_ == b.n_ && a.row_offsets_ == b.row_offsets_ &&
           a.col_indices_ == b.col_indices_ && a.values_ == b.values_;
  }

private:
  void validate() const {
    if (n_ == 0) throw ConfigError("sparse matrix: dimension must be positive");
    if (row_offsets_.size() != n_ + 1)
      throw ConfigError("sparse matrix: row_offsets must have n+1 entries");
    if (row_offsets_.front() != 0 || row_offsets_.back() != values_.size() ||
        col_indices_.size() != values_.size())
      throw ConfigError("sparse matrix: offsets inconsistent with stored entries");
    for (std::size_t r = 0; r < n_; ++r) {
      if (row_offsets_[r] > row_offsets_[r + 1])
        throw ConfigError("sparse matrix: row_offsets must be non-decreasing");
      for (std::size_t i = row_offsets_[r]; i < row_offsets_[r + 1]; ++i) {
        if (col_indices_[i] >= n_)
          throw ConfigError("sparse matrix: column index out of range");
        if (i > row_offsets_[r] && col_indices_[i] <= col_indices_[i - 1])
          throw ConfigError("sparse matrix: columns must be strictly ascending per row");
      }
    }
    // Structural and value symmetry, 1e-14 relative.
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t i = row_offsets_[r]; i < row_offsets_[r + 1]; ++i) {
        const std::size_t c = col_indices_[i];
        if (c == r) continue;
        const std::size_t* lo = col_indices_.data() + row_offsets_[c];
        const std::size_t* hi = col_indices_.data() + row_offsets_[c + 1];
        const std::size_t* it = std::lower_bound(lo, hi, r);
        if (it == hi || *it != r)
          throw ConfigError("sparse matrix: entry (" + std::to_string(r) + "," +
                            std::to_string(c) + ") has no symmetric counterpart");
        const double v = values_[i];
        const double w = values_[static_cast<std::size_t>(it - col_indices_.data())];
        const double scale = std::max(std::abs(v), std::abs(w));
        if (std::abs(v - w) > 1e-14 * scale)
          throw ConfigError("sparse matrix: values not symmetric at (" +
                            std::to_string(r) + "," + std::to_string(c) + ")");
      }
    }
  }

  std::size_t n_;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

/// Writes Matrix Market coordinate format (real, symmetric); only the lower
/// triangle is stored, 1-based indices, full round-trip precision.
inline void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  std::size_t stored = 0;
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  for (std::size_t r = 0; r < a.n(); ++r)
    for (std::size_t i = offsets[r]; i < offsets[r + 1]; ++i)
      if (cols[i] <= r) ++stored;
  out << a.n() << ' ' << a.n() << ' ' << stored << '\n';
  char buf[32];
  const auto vals = a.values();
  for (std::size_t r = 0; r < a.n(); ++r) {
    for (std::size_t i = offsets[r]; i < offsets[r + 1]; ++i) {
      if (cols[i] > r) continue;
      std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
      out << (r + 1) << ' ' << (cols[i] + 1) << ' ' << buf << '\n';
    }
  }
}

/// Reads Matrix Market coordinate format. Accepts symmetric (mirrored on
/// read) and general headers; the result must pass symmetry validation.
inline SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("matrix market: empty file");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
    throw IoError("matrix market: expected '%%MatrixMarket matrix coordinate' header");
  if (field != "real")
    throw IoError("matrix market: only real matrices are supported");
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general")
    throw IoError("matrix market: unsupported symmetry '" + symmetry + "'");

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream sizes(line);
  std::size_t rows = 0, cols = 0, entries = 0;
  if (!(sizes >> rows >> cols >> entries))
    throw IoError("matrix market: missing size line");
  if (rows != cols) throw IoError("matrix market: matrix must be square");

  std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
  triplets.reserve(symmetric ? 2 * entries : entries);
  for (std::size_t e = 0; e < entries; ++e) {
    std::size_t r = 0, c = 0;
    double v = 0.0;
    if (!(in >> r >> c >> v)) throw IoError("matrix market: truncated entry list");
    if (r == 0 || c == 0 || r > rows || c > cols)
      throw IoError("matrix market: entry index out of range");
    triplets.emplace_back(r - 1, c - 1, v);
    if (symmetric && r != c) triplets.emplace_back(c - 1, r - 1, v);
  }
  return SparseMatrix::from_triplets(rows, std::move(triplets));
}

inline void save_matrix_market(const std::string& path, const SparseMatrix& a) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_matrix_market(out, a);
  if (!out) throw IoError("error while writing '" + path + "'");
}

inline SparseMatrix load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_matrix_market(in);
}

} // namespace blockkrylov
