#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockkrylov/block_vector.hpp"
#include "blockkrylov/errors.hpp"
#include "blockkrylov/kernels.hpp"
#include "blockkrylov/preconditioners.hpp"
#include "blockkrylov/sparse_matrix.hpp"
#include "blockkrylov/subalgebra.hpp"

namespace blockkrylov {

struct SolveOptions {
  /// Per-column relative defect reduction target. Columns whose right hand
  /// side is exactly zero use this as an absolute threshold instead.
  double tol = 1e-8;
  /// Iteration cap; 0 selects the default of 10 * n.
  std::size_t max_iter = 0;
  /// Record the k column norms of R^i for every iteration (including R^0).
  bool record_history = false;
  /// Optional observer, called with (i, X^i, R^i) after the initial residual
  /// (i = 0) and after every completed iteration.
  std::function<void(std::size_t, const BlockVector&, const BlockVector&)> on_iterate;
};

struct BreakdownInfo {
  std::size_t iteration;   // 1-based iteration in which the singular solve occurred
  std::size_t block_index; // block of the singular alpha or rho coefficient
};

/// Wall-clock seconds spent in each kernel class during one solve.
/// Informational only; never used as a correctness oracle.
struct KernelSeconds {
  double bdot = 0.0;
  double baxpy = 0.0;
  double bop = 0.0;
  double precond = 0.0;
};

struct SolveReport {
  std::size_t iterations = 0;
  bool converged = false;
  /// Per-iteration column norms of R^i; length iterations + 1 when recorded.
  std::vector<std::vector<double>> defect_history;
  FlopCounter flops;
  std::optional<BreakdownInfo> breakdown;
  /// Explicit column norms of B - A X at exit (the recursive residual drives
  /// the stopping test; this is the one-off true-residual check).
  std::vector<double> final_defect_norms;
  KernelSeconds seconds;
};

struct SolveResult {
  BlockVector x;
  SolveReport report;
};

namespace detail {

class KernelClock {
public:
  explicit KernelClock(double& sink) : sink_(sink), start_(clock::now()) {}
  ~KernelClock() {
    sink_ += std::chrono::duration<double>(clock::now() - start_).count();
  }

private:
  using clock = std::chrono::steady_clock;
  double& sink_;
  clock::time_point start_;
};

inline bool all_below(const std::vector<double>& norms, const std::vector<double>& limits) {
  for (std::size_t s = 0; s < norms.size(); ++s)
    if (!(norms[s] <= limits[s])) return false;
  return true;
}

} // namespace detail

/// Preconditioned Block Conjugate Gradients over the configured *-subalgebra,
/// in the stabilized variant: rho^{i-1} is recomputed as <<P^i, R^{i-1}>>
/// every iteration instead of reusing <<Z^i, R^{i-1}>> from the previous one.
///
/// Iteration i performs
///   Q^i     = A P^i
///   alpha^i = <<P^i, Q^i>>          rho^{i-1} = <<P^i, R^{i-1}>>
///   lambda^i = (alpha^i)^{-1} rho^{i-1}
///   X^i = X^{i-1} + P^i lambda^i    R^i = R^{i-1} - Q^i lambda^i
///   Z^{i+1} = M^{-1} R^i            rho^i = <<Z^{i+1}, R^i>>
///   beta^i = (rho^{i-1})^{-1} rho^i
///   P^{i+1} = Z^{i+1} + P^i beta^i
/// i.e. one BOP, one preconditioner application, three BDOTs, three BAXPYs
/// and two BSOLVEs per iteration. The method stops once every column s
/// satisfies ||R^i_s|| <= tol * ||B_s|| (absolute tol for zero columns),
/// reaching max_iter, or on a singular alpha/rho block (reported as a
/// breakdown, not thrown).
inline SolveResult bcg_solve(const SparseMatrix& a, const BlockVector& b,
                             const BlockVector& x0, const Preconditioner& m,
                             const SubalgebraConfig& cfg, const SolveOptions& opts = {}) {
  if (a.n() != b.rows())
    throw DimensionError("bcg_solve: matrix dimension " + std::to_string(a.n()) +
                         " does not match right hand side rows " +
                         std::to_string(b.rows()));
  if (b.cols() != cfg.k())
    throw DimensionError("bcg_solve: right hand side has k=" + std::to_string(b.cols()) +
                         " but configuration expects k=" + std::to_string(cfg.k()));
  if (x0.rows() != b.rows() || x0.cols() != b.cols())
    throw DimensionError("bcg_solve: initial guess shape does not match right hand side");
  if (m.n() != a.n())
    throw DimensionError("bcg_solve: preconditioner dimension does not match matrix");
  if (!(opts.tol > 0.0)) throw ConfigError("bcg_solve: tol must be positive");
  const std::size_t max_iter = opts.max_iter ? opts.max_iter : 10 * a.n();

  SolveResult res{x0, {}};
  SolveReport& rep = res.report;
  BlockVector& x = res.x;

  // R^0 = B - A X^0. A zero initial guess is recognized and costs nothing.
  BlockVector r = b;
  bool x0_zero = true;
  for (std::size_t i = 0; i < x0.size() && x0_zero; ++i) x0_zero = x0.data()[i] == 0.0;
  BlockVector q(b.rows(), b.cols());
  if (!x0_zero) {
    {
      detail::KernelClock t(rep.seconds.bop);
      bop(a, x, q, &rep.flops);
    }
    detail::KernelClock t(rep.seconds.baxpy);
    baxpy(r, q, BlockCoefficient::identity(cfg).negated(), &rep.flops);
  }

  // Per-column stopping thresholds from B.
  std::vector<double> limits = column_norms(b);
  for (double& v : limits) v = v > 0.0 ? opts.tol * v : opts.tol;

  std::vector<double> defect = column_norms(r);
  if (opts.record_history) rep.defect_history.push_back(defect);
  if (opts.on_iterate) opts.on_iterate(0, x, r);
  rep.converged = detail::all_below(defect, limits);

  BlockVector p(b.rows(), b.cols());
  BlockVector z(b.rows(), b.cols());
  if (!rep.converged) {
    detail::KernelClock t(rep.seconds.precond);
    m.apply(r, p, &rep.flops);
  }

  while (!rep.converged && rep.iterations < max_iter) {
    const std::size_t i = rep.iterations + 1;
    try {
      {
        detail::KernelClock t(rep.seconds.bop);
        bop(a, p, q, &rep.flops);
      }
      BlockCoefficient alpha(cfg), rho_prev(cfg);
      {
        detail::KernelClock t(rep.seconds.bdot);
        alpha = bdot(p, q, cfg, &rep.flops);
        rho_prev = bdot(p, r, cfg, &rep.flops); // recompute
      }
      const BlockCoefficient lambda = bsolve(alpha, rho_prev);
      {
        detail::KernelClock t(rep.seconds.baxpy);
        baxpy(x, p, lambda, &rep.flops);
        baxpy(r, q, lambda.negated(), &rep.flops);
      }
      {
        detail::KernelClock t(rep.seconds.precond);
        m.apply(r, z, &rep.flops);
      }
      BlockCoefficient rho(cfg);
      {
        detail::KernelClock t(rep.seconds.bdot);
        rho = bdot(z, r, cfg, &rep.flops);
      }
      const BlockCoefficient beta = bsolve(rho_prev, rho);
      {
        detail::KernelClock t(rep.seconds.baxpy);
        baxpy(z, p, beta, &rep.flops);
      }
      std::swap(p, z); // P^{i+1} now lives in p
    } catch (const BreakdownError& e) {
      rep.breakdown = BreakdownInfo{i, e.block_index()};
      break;
    }

    rep.iterations = i;
    defect = column_norms(r);
    if (opts.record_history) rep.defect_history.push_back(defect);
    if (opts.on_iterate) opts.on_iterate(i, x, r);
    rep.converged = detail::all_below(defect, limits);
  }

  // One-off explicit residual check; not part of the instrumented counts.
  BlockVector ax = bop(a, x);
  for (std::size_t idx = 0; idx < ax.size(); ++idx)
    ax.data()[idx] = b.data()[idx] - ax.data()[idx];
  rep.final_defect_norms = column_norms(ax);
  return res;
}

/// Convenience overload starting from X^0 = 0.
inline SolveResult bcg_solve(const SparseMatrix& a, const BlockVector& b,
                             const Preconditioner& m, const SubalgebraConfig& cfg,
                             const SolveOptions& opts = {}) {
  return bcg_solve(a, b, BlockVector(b.rows(), b.cols()), m, cfg, opts);
}

} // namespace blockkrylov
