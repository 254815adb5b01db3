#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "blockkrylov/block_vector.hpp"
#include "blockkrylov/errors.hpp"
#include "blockkrylov/sparse_matrix.hpp"

namespace blockkrylov {

/// Seed-reproducible xorshift64* generator. The state transition and output
/// scrambling are fixed by definition, so streams are bit-identical across
/// platforms and compilers.
class Xorshift64Star {
public:
  explicit Xorshift64Star(std::uint64_t seed) {
    // One splitmix64 step decorrelates small consecutive seeds and maps
    // seed 0 away from the forbidden all-zero state.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    state_ = z ^ (z >> 31);
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ull;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in (-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

private:
  std::uint64_t state_;
};

/// 2D Poisson problem on an nx x ny cell grid with a 5-point stencil and a
/// per-cell diffusion coefficient: constant, or log-uniform in
/// [10^-contrast, 10^contrast] drawn from the seed.
struct PoissonSpec {
  std::size_t nx = 32;
  std::size_t ny = 32;
  enum class Coefficients { constant, log_uniform };
  Coefficients coefficients = Coefficients::constant;
  double contrast = 2.0;
  std::uint64_t seed = 0;

  static PoissonSpec constant(std::size_t nx, std::size_t ny) {
    return {nx, ny, Coefficients::constant, 0.0, 0};
  }
  static PoissonSpec heterogeneous(std::size_t nx, std::size_t ny, std::uint64_t seed,
                                   double contrast = 2.0) {
    return {nx, ny, Coefficients::log_uniform, contrast, seed};
  }
};

/// Assembles the SPD finite difference matrix of the heterogeneous Poisson
/// problem. Edge weights between neighboring cells are the harmonic average
/// of the two cell coefficients; Dirichlet boundaries are eliminated, with
/// each boundary edge keeping its full weight on the diagonal. Unknowns are
/// numbered row by row (cell (i, j) -> j * nx + i), which makes the column
/// indices of every row naturally ascending.
inline SparseMatrix poisson2d(const PoissonSpec& spec) {
  if (spec.nx < 2 || spec.ny < 2)
    throw ConfigError("poisson2d: grid must be at least 2 x 2 cells");
  if (spec.coefficients == PoissonSpec::Coefficients::log_uniform && !(spec.contrast >= 0.0))
    throw ConfigError("poisson2d: contrast exponent must be non-negative");

  const std::size_t nx = spec.nx;
  const std::size_t ny = spec.ny;
  const std::size_t n = nx * ny;

  std::vector<double> coeff(n, 1.0);
  if (spec.coefficients == PoissonSpec::Coefficients::log_uniform) {
    Xorshift64Star rng(spec.seed);
    for (double& c : coeff) c = std::pow(10.0, spec.contrast * rng.next_symmetric());
  }

  const auto harmonic = [](double a, double b) { return 2.0 * a * b / (a + b); };

  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(5 * n);
  vals.reserve(5 * n);

  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t row = j * nx + i;
      double diag = 0.0;
      const auto edge = [&](std::size_t other) { return harmonic(coeff[row], coeff[other]); };

      // Columns appended in ascending order: south, west, diagonal, east, north.
      double south = 0.0, west = 0.0, east = 0.0, north = 0.0;
      if (j > 0) diag += south = edge(row - nx);
      else diag += coeff[row];
      if (i > 0) diag += west = edge(row - 1);
      else diag += coeff[row];
      if (i + 1 < nx) diag += east = edge(row + 1);
      else diag += coeff[row];
      if (j + 1 < ny) diag += north = edge(row + nx);
      else diag += coeff[row];

      if (j > 0) { cols.push_back(row - nx); vals.push_back(-south); }
      if (i > 0) { cols.push_back(row - 1); vals.push_back(-west); }
      cols.push_back(row); vals.push_back(diag);
      if (i + 1 < nx) { cols.push_back(row + 1); vals.push_back(-east); }
      if (j + 1 < ny) { cols.push_back(row + nx); vals.push_back(-north); }
      offsets[row + 1] = cols.size();
    }
  }
  return {n, std::move(offsets), std::move(cols), std::move(vals)};
}

/// n x k block of i.i.d. uniform(-1, 1) entries, drawn row by row from a
/// fresh xorshift64* stream, so equal seeds give bit-identical blocks.
inline BlockVector random_block_rhs(std::size_t n, std::size_t k, std::uint64_t seed) {
  BlockVector b(n, k);
  Xorshift64Star rng(seed);
  double* d = b.data();
  for (std::size_t i = 0; i < n * k; ++i) d[i] = rng.next_symmetric();
  return b;
}

} // namespace blockkrylov
