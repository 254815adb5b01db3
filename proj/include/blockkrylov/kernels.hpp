#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "blockkrylov/block_vector.hpp"
#include "blockkrylov/errors.hpp"
#include "blockkrylov/sparse_matrix.hpp"
#include "blockkrylov/subalgebra.hpp"

namespace blockkrylov {

/// Cumulative floating point operation counts, one bucket per kernel.
/// Every scalar multiply and every scalar add counts as one: a BDOT or
/// BAXPY call adds 2*n*p^2*q, a BOP call adds 2*k*z, a preconditioner
/// application adds whatever its sweep executes.
struct FlopCounter {
  std::uint64_t multiply_adds_bdot = 0;
  std::uint64_t multiply_adds_baxpy = 0;
  std::uint64_t multiply_adds_bop = 0;
  std::uint64_t multiply_adds_precond = 0;

  std::uint64_t total() const noexcept {
    return multiply_adds_bdot + multiply_adds_baxpy + multiply_adds_bop +
           multiply_adds_precond;
  }
};

namespace detail {

inline void require_same_shape(const BlockVector& x, const BlockVector& y,
                               const char* kernel) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionError(std::string(kernel) + ": block vectors have shapes " +
                         std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                         " and " + std::to_string(y.rows()) + "x" +
                         std::to_string(y.cols()));
}

inline void require_config_cols(const BlockVector& x, const SubalgebraConfig& cfg,
                                const char* kernel) {
  if (x.cols() != cfg.k())
    throw DimensionError(std::string(kernel) + ": block vector has k=" +
                         std::to_string(x.cols()) + " but configuration expects k=" +
                         std::to_string(cfg.k()));
}

} // namespace detail

/// BDOT: the block product gamma = <<X, Y>> in the configured subalgebra.
///
/// hybrid: block i is X_i^T Y_i for the i-th contiguous group of p columns.
/// global: the single block is the sum of X_i^T Y_i over all q groups.
inline BlockCoefficient bdot(const BlockVector& x, const BlockVector& y,
                             const SubalgebraConfig& cfg, FlopCounter* flops = nullptr) {
  detail::require_same_shape(x, y, "bdot");
  detail::require_config_cols(x, cfg, "bdot");

  const std::size_t n = x.rows();
  const std::size_t k = cfg.k();
  const std::size_t p = cfg.p();
  const std::size_t q = cfg.q();
  const bool global = cfg.mode() == SubalgebraMode::global;

  BlockCoefficient out(cfg);
  const double* xd = x.data();
  const double* yd = y.data();
  std::uint64_t madds = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const double* xr = xd + r * k;
    const double* yr = yd + r * k;
    for (std::size_t g = 0; g < q; ++g) {
      double* blk = out.block(global ? 0 : g).data();
      const double* xg = xr + g * p;
      const double* yg = yr + g * p;
      for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b) blk[a * p + b] += xg[a] * yg[b];
    }
    madds += static_cast<std::uint64_t>(q) * p * p;
  }
  if (flops) flops->multiply_adds_bdot += 2 * madds;
  return out;
}

/// BAXPY: the in-place update X <- X + Y * Gamma, where Gamma is the k x k
/// embedding of the coefficient (block-diagonal of the q hybrid blocks, or
/// the single global block applied to each contiguous group of p columns).
/// X and Y must be distinct objects.
inline void baxpy(BlockVector& x, const BlockVector& y, const BlockCoefficient& gamma,
                  FlopCounter* flops = nullptr) {
  detail::require_same_shape(x, y, "baxpy");
  detail::require_config_cols(x, gamma.config(), "baxpy");
  if (&x == &y) throw DimensionError("baxpy: X and Y must be distinct");

  const std::size_t n = x.rows();
  const std::size_t k = gamma.config().k();
  const std::size_t p = gamma.config().p();
  const std::size_t q = gamma.config().q();
  const bool global = gamma.config().mode() == SubalgebraMode::global;

  double* xd = x.data();
  const double* yd = y.data();
  std::uint64_t madds = 0;
  for (std::size_t r = 0; r < n; ++r) {
    double* xr = xd + r * k;
    const double* yr = yd + r * k;
    for (std::size_t g = 0; g < q; ++g) {
      const double* blk = gamma.block(global ? 0 : g).data();
      double* xg = xr + g * p;
      const double* yg = yr + g * p;
      for (std::size_t a = 0; a < p; ++a) {
        double acc = xg[a];
        for (std::size_t b = 0; b < p; ++b) acc += yg[b] * blk[b * p + a];
        xg[a] = acc;
      }
    }
    madds += static_cast<std::uint64_t>(q) * p * p;
  }
  if (flops) flops->multiply_adds_baxpy += 2 * madds;
}

/// BOP: operator application Y = A X. All k lanes of a row are updated per
/// visited nonzero, so the matrix is traversed once for all right hand sides.
inline void bop(const SparseMatrix& a, const BlockVector& x, BlockVector& y,
                FlopCounter* flops = nullptr) {
  if (a.n() != x.rows())
    throw DimensionError("bop: matrix is " + std::to_string(a.n()) +
                         "-dimensional but block vector has " +
                         std::to_string(x.rows()) + " rows");
  if (y.rows() != x.rows() || y.cols() != x.cols()) y = BlockVector(x.rows(), x.cols());
  if (&x == &y) throw DimensionError("bop: X and Y must be distinct");

  const std::size_t n = a.n();
  const std::size_t k = x.cols();
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  const double* xd = x.data();
  double* yd = y.data();
  std::uint64_t madds = 0;
  for (std::size_t r = 0; r < n; ++r) {
    double* yr = yd + r * k;
    for (std::size_t c = 0; c < k; ++c) yr[c] = 0.0;
    for (std::size_t i = offsets[r]; i < offsets[r + 1]; ++i) {
      const double v = vals[i];
      const double* xc = xd + cols[i] * k;
      for (std::size_t c = 0; c < k; ++c) yr[c] += v * xc[c];
    }
    madds += (offsets[r + 1] - offsets[r]) * static_cast<std::uint64_t>(k);
  }
  if (flops) flops->multiply_adds_bop += 2 * madds;
}

inline BlockVector bop(const SparseMatrix& a, const BlockVector& x,
                       FlopCounter* flops = nullptr) {
  BlockVector y(x.rows(), x.cols());
  bop(a, x, y, flops);
  return y;
}

namespace detail {

// LU with partial pivoting on one p x p block; solves in place for p
// right-hand-side columns. Throws BreakdownError when a pivot falls below
// 1e-14 of the block's max-norm.
inline void solve_block(std::size_t block_index, std::size_t p, const double* gamma,
                        const double* delta, double* result) {
  std::vector<double> lu(gamma, gamma + p * p);
  std::vector<std::size_t> perm(p);
  for (std::size_t i = 0; i < p; ++i) perm[i] = i;

  double max_norm = 0.0;
  for (std::size_t i = 0; i < p * p; ++i) max_norm = std::max(max_norm, std::abs(lu[i]));
  const double tiny = 1e-14 * max_norm;

  for (std::size_t col = 0; col < p; ++col) {
    std::size_t pivot_row = col;
    double pivot = std::abs(lu[col * p + col]);
    for (std::size_t r = col + 1; r < p; ++r) {
      const double cand = std::abs(lu[r * p + col]);
      if (cand > pivot) {
        pivot = cand;
        pivot_row = r;
      }
    }
    if (pivot < tiny || max_norm == 0.0)
      throw BreakdownError(block_index,
                           "bsolve: block " + std::to_string(block_index) +
                               " is numerically singular (pivot " + std::to_string(pivot) +
                               " at column " + std::to_string(col) + ")");
    if (pivot_row != col) {
      for (std::size_t c = 0; c < p; ++c) std::swap(lu[col * p + c], lu[pivot_row * p + c]);
      std::swap(perm[col], perm[pivot_row]);
    }
    const double inv = 1.0 / lu[col * p + col];
    for (std::size_t r = col + 1; r < p; ++r) {
      const double f = lu[r * p + col] * inv;
      lu[r * p + col] = f;
      for (std::size_t c = col + 1; c < p; ++c) lu[r * p + c] -= f * lu[col * p + c];
    }
  }

  // Permuted forward then backward substitution, all p RHS columns at once.
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c) result[r * p + c] = delta[perm[r] * p + c];
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t j = 0; j < r; ++j) {
      const double f = lu[r * p + j];
      for (std::size_t c = 0; c < p; ++c) result[r * p + c] -= f * result[j * p + c];
    }
  for (std::size_t r = p; r-- > 0;) {
    for (std::size_t j = r + 1; j < p; ++j) {
      const double f = lu[r * p + j];
      for (std::size_t c = 0; c < p; ++c) result[r * p + c] -= f * result[j * p + c];
    }
    const double inv = 1.0 / lu[r * p + r];
    for (std::size_t c = 0; c < p; ++c) result[r * p + c] *= inv;
  }
}

} // namespace detail

/// BSOLVE: gamma^{-1} * delta blockwise inside the subalgebra. Each p x p
/// block is solved by LU with partial pivoting; a numerically singular block
/// raises BreakdownError carrying its index.
inline BlockCoefficient bsolve(const BlockCoefficient& gamma, const BlockCoefficient& delta) {
  if (!(gamma.config() == delta.config()))
    throw DimensionError("bsolve: gamma and delta use different subalgebra configurations");
  const std::size_t p = gamma.config().p();
  BlockCoefficient out(gamma.config());
  for (std::size_t b = 0; b < gamma.block_count(); ++b)
    detail::solve_block(b, p, gamma.block(b).data(), delta.block(b).data(),
                        out.block(b).data());
  return out;
}

} // namespace blockkrylov
