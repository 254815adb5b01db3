#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "blockkrylov/block_vector.hpp"
#include "blockkrylov/errors.hpp"
#include "blockkrylov/kernels.hpp"
#include "blockkrylov/sparse_matrix.hpp"

namespace blockkrylov {

enum class PreconditionerKind { identity, jacobi, ilu0 };

inline const char* to_string(PreconditionerKind kind) {
  switch (kind) {
    case PreconditionerKind::identity: return "identity";
    case PreconditionerKind::jacobi: return "jacobi";
    default: return "ilu0";
  }
}

inline PreconditionerKind parse_preconditioner_kind(std::string_view name) {
  if (name == "identity") return PreconditionerKind::identity;
  if (name == "jacobi") return PreconditionerKind::jacobi;
  if (name == "ilu0") return PreconditionerKind::ilu0;
  throw ConfigError("unknown preconditioner '" + std::string(name) +
                    "' (expected identity, jacobi or ilu0)");
}

/// Column-wise preconditioner M^{-1} for block vectors: identity, Jacobi
/// (inverse diagonal scaling), or ILU(0) with L and U stored on the matrix
/// pattern. Immutable once constructed.
class Preconditioner {
public:
  static Preconditioner identity(std::size_t n) {
    Preconditioner m;
    m.kind_ = PreconditionerKind::identity;
    m.n_ = n;
    return m;
  }

  /// Jacobi scaling; the matrix diagonal must be strictly positive.
  static Preconditioner jacobi(const SparseMatrix& a) {
    Preconditioner m;
    m.kind_ = PreconditionerKind::jacobi;
    m.n_ = a.n();
    m.inv_diag_.resize(a.n());
    for (std::size_t r = 0; r < a.n(); ++r) {
      const double d = a.at(r, r);
      if (!(d > 0.0))
        throw FactorizationError(r, "jacobi: diagonal entry " + std::to_string(r) +
                                        " is not strictly positive");
      m.inv_diag_[r] = 1.0 / d;
    }
    return m;
  }

  PreconditionerKind kind() const noexcept { return kind_; }
  std::size_t n() const noexcept { return n_; }

  /// Combined L\U values on the matrix pattern (unit lower diagonal implied).
  std::span<const double> ilu_values() const noexcept { return lu_values_; }
  std::span<const std::size_t> ilu_row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::size_t> ilu_col_indices() const noexcept { return col_indices_; }

  /// Z = M^{-1} R, all k lanes swept together per row.
  void apply(const BlockVector& r, BlockVector& z, FlopCounter* flops = nullptr) const {
    if (r.rows() != n_)
      throw DimensionError("preconditioner: expected " + std::to_string(n_) +
                           " rows, got " + std::to_string(r.rows()));
    const std::size_t k = r.cols();
    if (z.rows() != r.rows() || z.cols() != k) z = BlockVector(r.rows(), k);

    switch (kind_) {
      case PreconditionerKind::identity: {
        std::copy(r.data(), r.data() + r.size(), z.data());
        return;
      }
      case PreconditionerKind::jacobi: {
        const double* rd = r.data();
        double* zd = z.data();
        for (std::size_t row = 0; row < n_; ++row) {
          const double d = inv_diag_[row];
          for (std::size_t c = 0; c < k; ++c) zd[row * k + c] = d * rd[row * k + c];
        }
        if (flops) flops->multiply_adds_precond += static_cast<std::uint64_t>(n_) * k;
        return;
      }
      case PreconditionerKind::ilu0: {
        std::copy(r.data(), r.data() + r.size(), z.data());
        double* zd = z.data();
        std::uint64_t madds = 0;
        // Forward sweep L y = r (unit diagonal).
        for (std::size_t row = 0; row < n_; ++row) {
          double* zr = zd + row * k;
          std::size_t i = row_offsets_[row];
          for (; i < row_offsets_[row + 1] && col_indices_[i] < row; ++i) {
            const double v = lu_values_[i];
            const double* zc = zd + col_indices_[i] * k;
            for (std::size_t c = 0; c < k; ++c) zr[c] -= v * zc[c];
            madds += k;
          }
        }
        // Backward sweep U z = y.
        for (std::size_t row = n_; row-- > 0;) {
          double* zr = zd + row * k;
          for (std::size_t i = row_offsets_[row + 1]; i-- > row_offsets_[row];) {
            const std::size_t c = col_indices_[i];
            if (c <= row) break;
            const double v = lu_values_[i];
            const double* zc = zd + c * k;
            for (std::size_t lane = 0; lane < k; ++lane) zr[lane] -= v * zc[lane];
            madds += k;
          }
          const double inv = inv_diag_[row];
          for (std::size_t lane = 0; lane < k; ++lane) zr[lane] *= inv;
        }
        if (flops)
          flops->multiply_adds_precond += 2 * madds + static_cast<std::uint64_t>(n_) * k;
        return;
      }
    }
  }

  BlockVector apply(const BlockVector& r, FlopCounter* flops = nullptr) const {
    BlockVector z(r.rows(), r.cols());
    apply(r, z, flops);
    return z;
  }

private:
  friend Preconditioner ilu0_factor(const SparseMatrix& a);

  Preconditioner() = default;

  PreconditionerKind kind_ = PreconditionerKind::identity;
  std::size_t n_ = 0;
  std::vector<double> inv_diag_;            // jacobi scaling, or 1/U(r,r) for ilu0
  std::vector<std::size_t> row_offsets_;    // ilu0 pattern (copy of A's)
  std::vector<std::size_t> col_indices_;
  std::vector<double> lu_values_;
};

/// Incomplete LU factorization with zero fill-in: computes unit-lower L and
/// upper U on exactly the pattern of A such that (L*U) agrees with A on every
/// stored position. Throws FactorizationError on a zero (or missing) pivot.
inline Preconditioner ilu0_factor(const SparseMatrix& a) {
  const std::size_t n = a.n();
  Preconditioner m;
  m.kind_ = PreconditionerKind::ilu0;
  m.n_ = n;
  m.row_offsets_.assign(a.row_offsets().begin(), a.row_offsets().end());
  m.col_indices_.assign(a.col_indices().begin(), a.col_indices().end());
  m.lu_values_.assign(a.values().begin(), a.values().end());
  m.inv_diag_.assign(n, 0.0);

  std::vector<std::size_t> diag_pos(n);
  const auto& offsets = m.row_offsets_;
  const auto& cols = m.col_indices_;
  auto& lu = m.lu_values_;

  for (std::size_t row = 0; row < n; ++row) {
    // Eliminate with every factored row j < row present in this row's pattern.
    for (std::size_t i = offsets[row]; i < offsets[row + 1] && cols[i] < row; ++i) {
      const std::size_t j = cols[i];
      const double factor = lu[i] * m.inv_diag_[j];
      lu[i] = factor;
      // Subtract factor * U(j, *) from the remaining entries of this row.
      std::size_t target = i + 1;
      for (std::size_t ju = diag_pos[j] + 1; ju < offsets[j + 1]; ++ju) {
        const std::size_t c = cols[ju];
        while (target < offsets[row + 1] && cols[target] < c) ++target;
        if (target == offsets[row + 1]) break;
        if (cols[target] == c) lu[target] -= factor * lu[ju];
      }
    }
    const std::size_t* lo = cols.data() + offsets[row];
    const std::size_t* hi = cols.data() + offsets[row + 1];
    const std::size_t* it = std::lower_bound(lo, hi, row);
    if (it == hi || *it != row)
      throw FactorizationError(row, "ilu0: row " + std::to_string(row) +
                                        " has no diagonal entry");
    diag_pos[row] = static_cast<std::size_t>(it - cols.data());
    const double pivot = lu[diag_pos[row]];
    if (pivot == 0.0)
      throw FactorizationError(row, "ilu0: zero pivot in row " + std::to_string(row));
    m.inv_diag_[row] = 1.0 / pivot;
  }
  return m;
}

/// Applies M^{-1} to a block vector (Algorithm line Z = M^{-1} R).
inline BlockVector precond_apply(const Preconditioner& m, const BlockVector& r,
                                 FlopCounter* flops = nullptr) {
  return m.apply(r, flops);
}

} // namespace blockkrylov
