#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "blockkrylov/errors.hpp"

namespace blockkrylov {

/// A tall-skinny block of k column vectors of length n.
///
/// Storage is lane-interleaved: entry (row, col) lives at data[row * k + col],
/// so the k right-hand sides of one matrix row are contiguous. All kernels
/// iterate lanes innermost to keep this access pattern.
class BlockVector {
public:
  BlockVector() = default;

  BlockVector(std::size_t n, std::size_t k, double value = 0.0)
      : n_(n), k_(k), data_(n * k, value) {
    if (k == 0) throw ConfigError("BlockVector: column count must be positive");
  }

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return k_; }

  double& operator()(std::size_t row, std::size_t col) { return data_[row * k_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * k_ + col]; }

  /// The k lanes of one matrix row.
  std::span<double> row(std::size_t r) { return {data_.data() + r * k_, k_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * k_, k_}; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  std::size_t size() const noexcept { return data_.size(); }

  void fill(double value) { std::fill(data_.begin(), data_.end(), value); }

  friend bool operator==(const BlockVector& a, const BlockVector& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.data_ == b.data_;
  }

private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<double> data_;
};

/// Euclidean norm of each column (the per-column defect norms).
inline std::vector<double> column_norms(const BlockVector& x) {
  const std::size_t n = x.rows();
  const std::size_t k = x.cols();
  std::vector<double> sums(k, 0.0);
  const double* d = x.data();
  for (std::size_t r = 0; r < n; ++r) {
    const double* xr = d + r * k;
    for (std::size_t c = 0; c < k; ++c) sums[c] += xr[c] * xr[c];
  }
  for (double& s : sums) s = std::sqrt(s);
  return sums;
}

/// Writes the dense array text format: a header line "n k" followed by
/// n lines of k decimals. Values are printed with enough digits to
/// round-trip exactly.
inline void write_block_vector(std::ostream& out, const BlockVector& x) {
  out << x.rows() << ' ' << x.cols() << '\n';
  char buf[32];
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", x(r, c));
      out << (c ? " " : "") << buf;
    }
    out << '\n';
  }
}

inline BlockVector read_block_vector(std::istream& in) {
  std::size_t n = 0;
  std::size_t k = 0;
  if (!(in >> n >> k)) throw IoError("block vector file: missing 'n k' header");
  if (k == 0) throw IoError("block vector file: column count must be positive");
  BlockVector x(n, k);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < k; ++c)
      if (!(in >> x(r, c)))
        throw IoError("block vector file: expected " + std::to_string(n * k) +
                      " entries, file ended early");
  return x;
}

inline void save_block_vector(const std::string& path, const BlockVector& x) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_block_vector(out, x);
  if (!out) throw IoError("error while writing '" + path + "'");
}

inline BlockVector load_block_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_block_vector(in);
}

} // namespace blockkrylov
