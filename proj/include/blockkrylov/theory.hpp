#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "blockkrylov/errors.hpp"
#include "blockkrylov/sparse_matrix.hpp"

namespace blockkrylov {

/// Ascending, strictly positive eigenvalues of a preconditioned SPD operator.
class Spectrum {
public:
  explicit Spectrum(std::vector<double> eigenvalues) : values_(std::move(eigenvalues)) {
    if (values_.empty()) throw ConfigError("spectrum: no eigenvalues");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!(values_[i] > 0.0))
        throw ConfigError("spectrum: eigenvalue " + std::to_string(i + 1) +
                          " is not strictly positive");
      if (i > 0 && values_[i] < values_[i - 1])
        throw ConfigError("spectrum: eigenvalues must be sorted ascending");
    }
  }

  std::size_t size() const noexcept { return values_.size(); }
  /// 1-based access matching the lambda_1 <= ... <= lambda_N convention.
  double eigenvalue(std::size_t index) const {
    if (index == 0 || index > values_.size())
      throw ConfigError("spectrum: eigenvalue index " + std::to_string(index) +
                        " out of range [1, " + std::to_string(values_.size()) + "]");
    return values_[index - 1];
  }
  double smallest() const noexcept { return values_.front(); }
  double largest() const noexcept { return values_.back(); }
  const std::vector<double>& values() const noexcept { return values_; }

private:
  std::vector<double> values_;
};

namespace detail {

inline double contraction_from_condition(double kappa) {
  const double s = std::sqrt(kappa);
  return (s - 1.0) / (s + 1.0);
}

} // namespace detail

/// Energy-error contraction bound of the classical block method with k right
/// hand sides: mu = (sqrt(kappa_k) - 1) / (sqrt(kappa_k) + 1) with
/// kappa_k = lambda_N / lambda_k. The k - 1 smallest eigenvalues drop out of
/// the effective condition number.
inline double rate_classical(const Spectrum& spec, std::size_t k) {
  if (k == 0 || k > spec.size())
    throw ConfigError("rate_classical: block size k=" + std::to_string(k) +
                      " out of range [1, " + std::to_string(spec.size()) + "]");
  return detail::contraction_from_condition(spec.largest() / spec.eigenvalue(k));
}

/// Contraction bound of the global method with block width p and replication
/// q: the method behaves like a classical p-RHS solve on the q-fold
/// replicated operator, whose p-th smallest eigenvalue is
/// lambda_{ceil(p/q)}, so kappa_hat = lambda_N / lambda_{ceil(p/q)} and
/// mu_hat = (sqrt(kappa_hat) - 1) / (sqrt(kappa_hat) + 1).
inline double rate_global(const Spectrum& spec, std::size_t p, std::size_t q) {
  if (p == 0 || q == 0)
    throw ConfigError("rate_global: p and q must be positive");
  const std::size_t index = (p + q - 1) / q; // ceil(p/q)
  if (index > spec.size())
    throw ConfigError("rate_global: eigenvalue index ceil(p/q)=" + std::to_string(index) +
                      " out of range [1, " + std::to_string(spec.size()) + "]");
  return detail::contraction_from_condition(spec.largest() / spec.eigenvalue(index));
}

/// Dense symmetric eigensolve by cyclic Jacobi rotations; intended for
/// desk-scale validation runs, hence the hard n <= 2048 cap.
inline Spectrum spectrum_of(const SparseMatrix& a) {
  const std::size_t n = a.n();
  if (n > 2048)
    throw SizeError("spectrum_of: n=" + std::to_string(n) +
                    " exceeds the dense eigensolver limit of 2048");

  std::vector<double> m(n * n, 0.0);
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = offsets[r]; i < offsets[r + 1]; ++i) m[r * n + cols[i]] = vals[i];

  double fro2 = 0.0;
  for (const double v : m) fro2 += v * v;
  const double off_tol2 = 1e-28 * fro2;

  for (std::size_t sweep = 0; sweep < 100; ++sweep) {
    double off2 = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) off2 += 2.0 * m[r * n + c] * m[r * n + c];
    if (off2 <= off_tol2) break;

    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r + 1; c < n; ++c) {
        const double arc = m[r * n + c];
        if (arc == 0.0) continue;
        const double theta = (m[c * n + c] - m[r * n + r]) / (2.0 * arc);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        const double tau = sn / (1.0 + cs);

        const double arr = m[r * n + r];
        const double acc = m[c * n + c];
        m[r * n + r] = arr - t * arc;
        m[c * n + c] = acc + t * arc;
        m[r * n + c] = 0.0;
        m[c * n + r] = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == r || j == c) continue;
          const double ajr = m[j * n + r];
          const double ajc = m[j * n + c];
          m[j * n + r] = ajr - sn * (ajc + tau * ajr);
          m[j * n + c] = ajc + sn * (ajr - tau * ajc);
          m[r * n + j] = m[j * n + r];
          m[c * n + j] = m[j * n + c];
        }
      }
    }
  }

  std::vector<double> eigenvalues(n);
  for (std::size_t r = 0; r < n; ++r) eigenvalues[r] = m[r * n + r];
  std::sort(eigenvalues.begin(), eigenvalues.end());
  return Spectrum(std::move(eigenvalues));
}

} // namespace blockkrylov
