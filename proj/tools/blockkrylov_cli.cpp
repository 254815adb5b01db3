// Command line harness: solve (Poisson benchmark runs as CSV), model
// (analytic kernel runtime predictions) and verify (built-in property
// suites). CSV goes to standard output, diagnostics to standard error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blockkrylov/blockkrylov.hpp"

namespace bk = blockkrylov;

namespace {

constexpr int kExitBreakdown = 2;
constexpr int kExitMaxIter = 3;
constexpr int kExitUsage = 64;
constexpr int kExitUnreadable = 66;
constexpr int kExitInternal = 70;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveArgs {
  std::size_t nx = 32;
  std::size_t ny = 32;
  std::size_t k = 8;
  std::size_t p = 0; // 0 -> defaults to k (classical)
  std::string mode = "hybrid";
  std::string precond = "ilu0";
  double tol = 1e-8;
  std::size_t max_iter = 0;
  std::uint64_t seed = 1;
  std::string coeff = "loguniform";
  double contrast = 2.0;
  std::size_t repetitions = 1;
  std::size_t total_rhs = 0;
  std::string rhs_file;
  bool time = false;
  std::size_t reps = 1;
  std::string dump_matrix;
  std::string dump_rhs;
};

int run_solve(const SolveArgs& args) {
  const std::size_t p = args.p == 0 ? args.k : args.p;
  if (args.k == 0 || p == 0 || args.k % p != 0)
    throw bk::ConfigError("block width p=" + std::to_string(p) + " must divide k=" +
                          std::to_string(args.k));
  const bk::SubalgebraConfig cfg(args.k, p, bk::parse_subalgebra_mode(args.mode));
  const bk::PreconditionerKind kind = bk::parse_preconditioner_kind(args.precond);

  const bk::PoissonSpec spec = [&] {
    if (args.coeff == "constant") return bk::PoissonSpec::constant(args.nx, args.ny);
    if (args.coeff == "loguniform")
      return bk::PoissonSpec::heterogeneous(args.nx, args.ny, args.seed, args.contrast);
    throw bk::ConfigError("unknown coefficient field '" + args.coeff +
                          "' (expected constant or loguniform)");
  }();
  const bk::SparseMatrix a = bk::poisson2d(spec);
  const std::size_t n = a.n();

  // All right hand side columns for all runs, file or generator.
  bk::BlockVector all_rhs(1, 1);
  if (args.repetitions == 0) throw bk::ConfigError("--repetitions must be at least 1");
  std::size_t runs = args.repetitions;
  if (!args.rhs_file.empty()) {
    all_rhs = bk::load_block_vector(args.rhs_file);
    if (all_rhs.rows() != n)
      throw bk::ConfigError("rhs file has " + std::to_string(all_rhs.rows()) +
                            " rows but the problem has n=" + std::to_string(n));
    if (all_rhs.cols() % args.k != 0)
      throw bk::ConfigError("rhs file column count " + std::to_string(all_rhs.cols()) +
                            " is not a multiple of k=" + std::to_string(args.k));
    runs = all_rhs.cols() / args.k;
  } else {
    if (args.total_rhs != 0) {
      if (args.total_rhs % args.k != 0)
        throw bk::ConfigError("--total-rhs " + std::to_string(args.total_rhs) +
                              " is not a multiple of k=" + std::to_string(args.k));
      runs = args.total_rhs / args.k;
    }
    all_rhs = bk::random_block_rhs(n, runs * args.k, args.seed);
  }

  if (!args.dump_matrix.empty()) bk::save_matrix_market(args.dump_matrix, a);
  if (!args.dump_rhs.empty()) bk::save_block_vector(args.dump_rhs, all_rhs);

  const bk::Preconditioner m = [&] {
    switch (kind) {
      case bk::PreconditionerKind::identity: return bk::Preconditioner::identity(n);
      case bk::PreconditionerKind::jacobi: return bk::Preconditioner::jacobi(a);
      default: return bk::ilu0_factor(a);
    }
  }();

  bk::SolveOptions opts;
  opts.tol = args.tol;
  opts.max_iter = args.max_iter;

  std::printf("run,nx,ny,k,p,mode,precond,tol,seed,iterations,converged,"
              "breakdown_iteration,breakdown_block,flops_bdot,flops_baxpy,"
              "flops_bop,flops_precond,seconds_bdot,seconds_baxpy,seconds_bop,"
              "seconds_precond\n");

  bool any_breakdown = false;
  bool any_unconverged = false;
  for (std::size_t run = 0; run < runs; ++run) {
    bk::BlockVector b(n, args.k);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < args.k; ++c) b(r, c) = all_rhs(r, run * args.k + c);

    // With --time the solve is repeated --reps times and the median
    // per-kernel seconds are reported; results are identical across reps.
    const std::size_t reps = args.time ? std::max<std::size_t>(args.reps, 1) : 1;
    std::vector<bk::KernelSeconds> timings;
    bk::SolveResult res = bk::bcg_solve(a, b, m, cfg, opts);
    timings.push_back(res.report.seconds);
    for (std::size_t rep = 1; rep < reps; ++rep)
      timings.push_back(bk::bcg_solve(a, b, m, cfg, opts).report.seconds);

    bk::KernelSeconds median{};
    if (args.time) {
      const auto med = [&](auto member) {
        std::vector<double> v;
        for (const auto& t : timings) v.push_back(t.*member);
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
      };
      median = {med(&bk::KernelSeconds::bdot), med(&bk::KernelSeconds::baxpy),
                med(&bk::KernelSeconds::bop), med(&bk::KernelSeconds::precond)};
    }

    const bk::SolveReport& rep = res.report;
    if (rep.breakdown) any_breakdown = true;
    if (!rep.converged && !rep.breakdown) any_unconverged = true;

    std::printf("%zu,%zu,%zu,%zu,%zu,%s,%s,%s,%llu,%zu,%s,%s,%s,%llu,%llu,%llu,%llu,%s,%s,%s,%s\n",
                run, args.nx, args.ny, args.k, p, bk::to_string(cfg.mode()),
                bk::to_string(kind), fmt_double(args.tol).c_str(),
                static_cast<unsigned long long>(args.seed), rep.iterations,
                rep.converged ? "true" : "false",
                rep.breakdown ? std::to_string(rep.breakdown->iteration).c_str() : "",
                rep.breakdown ? std::to_string(rep.breakdown->block_index).c_str() : "",
                static_cast<unsigned long long>(rep.flops.multiply_adds_bdot),
                static_cast<unsigned long long>(rep.flops.multiply_adds_baxpy),
                static_cast<unsigned long long>(rep.flops.multiply_adds_bop),
                static_cast<unsigned long long>(rep.flops.multiply_adds_precond),
                fmt_double(median.bdot).c_str(), fmt_double(median.baxpy).c_str(),
                fmt_double(median.bop).c_str(), fmt_double(median.precond).c_str());
  }

  if (any_breakdown) return kExitBreakdown;
  if (any_unconverged) return kExitMaxIter;
  return 0;
}

// ---------------------------------------------------------------------------
// model
// ---------------------------------------------------------------------------

struct ModelArgs {
  std::string kernel;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string p_list;
  std::size_t z = 0;
  bool z_given = false;
  std::string machine;
};

std::vector<std::size_t> parse_p_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!token.empty()) {
      std::size_t consumed = 0;
      unsigned long long value = 0;
      try {
        value = std::stoull(token, &consumed);
      } catch (const std::exception&) {
        throw bk::ConfigError("--p-list: '" + token + "' is not a positive integer");
      }
      if (consumed != token.size() || value == 0)
        throw bk::ConfigError("--p-list: '" + token + "' is not a positive integer");
      out.push_back(static_cast<std::size_t>(value));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

bk::MachineProfile resolve_machine(const std::string& flag) {
  if (!flag.empty()) return bk::load_machine_profile(flag);
  if (const char* env = std::getenv("BLOCKKRYLOV_MACHINE"); env && *env)
    return bk::load_machine_profile(env);
  return bk::MachineProfile::skylake_gold_6148();
}

int run_model(const ModelArgs& args) {
  const bk::Kernel kernel = bk::parse_kernel(args.kernel);
  if (kernel == bk::Kernel::bop && !args.z_given)
    throw bk::ConfigError("--kernel bop requires --z (number of stored nonzeros)");
  const std::vector<std::size_t> p_list = parse_p_list(args.p_list);
  const bk::MachineProfile machine = resolve_machine(args.machine);

  std::printf("p,t_comp,t_mem,t_reg,t,bound\n");
  for (const auto& row : bk::sweep(kernel, args.n, args.k, p_list, args.z, machine)) {
    const bk::Prediction& pr = row.prediction;
    std::printf("%zu,%s,%s,%s,%s,%s\n", row.p, fmt_double(pr.t_comp).c_str(),
                fmt_double(pr.t_mem).c_str(), fmt_double(pr.t_reg).c_str(),
                fmt_double(pr.t).c_str(), bk::to_string(pr.bound));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct Check {
  const char* suite;
  const char* name;
  std::function<bool()> run;
};

// Plain scalar preconditioned CG used as the reference for the p = 1 mode.
std::vector<std::vector<double>> scalar_cg_iterates(const bk::SparseMatrix& a,
                                                    const std::vector<double>& rhs,
                                                    std::size_t iterations) {
  const std::size_t n = a.n();
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  const auto spmv = [&](const std::vector<double>& v) {
    std::vector<double> out(n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t i = offsets[r]; i < offsets[r + 1]; ++i)
        out[r] += vals[i] * v[cols[i]];
    return out;
  };
  const auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += u[i] * v[i];
    return acc;
  };

  std::vector<std::vector<double>> iterates;
  std::vector<double> x(n, 0.0), r = rhs, p = rhs;
  iterates.push_back(x);
  for (std::size_t i = 0; i < iterations; ++i) {
    const std::vector<double> q = spmv(p);
    const double alpha = dot(p, q);
    const double rho_prev = dot(p, r);
    const double lambda = rho_prev / alpha;
    for (std::size_t j = 0; j < n; ++j) {
      x[j] += lambda * p[j];
      r[j] -= lambda * q[j];
    }
    const double rho = dot(r, r);
    const double beta = rho / rho_prev;
    for (std::size_t j = 0; j < n; ++j) p[j] = r[j] + beta * p[j];
    iterates.push_back(x);
  }
  return iterates;
}

std::vector<bk::BlockVector> solve_iterates(const bk::SparseMatrix& a,
                                            const bk::BlockVector& b,
                                            const bk::Preconditioner& m,
                                            const bk::SubalgebraConfig& cfg,
                                            std::size_t iterations) {
  std::vector<bk::BlockVector> out;
  bk::SolveOptions opts;
  opts.tol = 1e-300;
  opts.max_iter = iterations;
  opts.on_iterate = [&](std::size_t, const bk::BlockVector& x, const bk::BlockVector&) {
    out.push_back(x);
  };
  bk::bcg_solve(a, b, m, cfg, opts);
  return out;
}

bool check_parallel_reduction() {
  const bk::SparseMatrix a = bk::poisson2d(bk::PoissonSpec::heterogeneous(12, 12, 5));
  const std::size_t n = a.n(), k = 4, iters = 15;
  const bk::BlockVector b = bk::random_block_rhs(n, k, 6);
  const auto block = solve_iterates(a, b, bk::Preconditioner::identity(n),
                                    bk::SubalgebraConfig::parallel(k), iters);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> rhs(n);
    for (std::size_t r = 0; r < n; ++r) rhs[r] = b(r, c);
    const auto scalar = scalar_cg_iterates(a, rhs, iters);
    for (std::size_t i = 0; i < block.size(); ++i) {
      double diff = 0.0, ref = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        diff += (block[i](r, c) - scalar[i][r]) * (block[i](r, c) - scalar[i][r]);
        ref += scalar[i][r] * scalar[i][r];
      }
      if (std::sqrt(diff) > 1e-12 * std::max(std::sqrt(ref), 1.0)) return false;
    }
  }
  return true;
}

bool check_hybrid_split() {
  const bk::SparseMatrix a = bk::poisson2d(bk::PoissonSpec::heterogeneous(12, 12, 5));
  const std::size_t n = a.n(), k = 8, p = 4, iters = 15;
  const bk::BlockVector b = bk::random_block_rhs(n, k, 7);
  const bk::Preconditioner m = bk::ilu0_factor(a);
  const auto hybrid =
      solve_iterates(a, b, m, bk::SubalgebraConfig(k, p, bk::SubalgebraMode::hybrid), iters);
  for (std::size_t grp = 0; grp < k / p; ++grp) {
    bk::BlockVector bg(n, p);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < p; ++c) bg(r, c) = b(r, grp * p + c);
    const auto classical =
        solve_iterates(a, bg, m, bk::SubalgebraConfig::classical(p), iters);
    for (std::size_t i = 0; i < hybrid.size(); ++i)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < p; ++c)
          if (std::abs(hybrid[i](r, grp * p + c) - classical[i](r, c)) > 1e-12) return false;
  }
  return true;
}

bool check_global_stacked() {
  const bk::SparseMatrix a = bk::poisson2d(bk::PoissonSpec::heterogeneous(12, 12, 5));
  const std::size_t n = a.n(), k = 8, p = 4, q = k / p, iters = 15;
  const bk::BlockVector b = bk::random_block_rhs(n, k, 8);
  const auto global = solve_iterates(
      a, b, bk::ilu0_factor(a), bk::SubalgebraConfig(k, p, bk::SubalgebraMode::global), iters);

  std::vector<std::tuple<std::size_t, std::size_t, double>> trip;
  const auto offsets = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  for (std::size_t copy = 0; copy < q; ++copy)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t i = offsets[r]; i < offsets[r + 1]; ++i)
        trip.emplace_back(copy * n + r, copy * n + cols[i], vals[i]);
  const bk::SparseMatrix astack = bk::SparseMatrix::from_triplets(q * n, std::move(trip));

  bk::BlockVector bstack(q * n, p);
  for (std::size_t grp = 0; grp < q; ++grp)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < p; ++c) bstack(grp * n + r, c) = b(r, grp * p + c);
  const auto stacked = solve_iterates(astack, bstack, bk::ilu0_factor(astack),
                                      bk::SubalgebraConfig::classical(p), iters);

  for (std::size_t i = 0; i < global.size(); ++i)
    for (std::size_t grp = 0; grp < q; ++grp)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < p; ++c)
          if (std::abs(global[i](r, grp * p + c) - stacked[i](grp * n + r, c)) > 1e-10)
            return false;
  return true;
}

bool check_embedding() {
  const bk::BlockVector x = bk::random_block_rhs(9, 8, 15);
  const bk::BlockVector y = bk::random_block_rhs(9, 8, 16);
  const struct {
    std::size_t p1, p2;
  } cases[] = {{1, 2}, {2, 4}, {4, 8}};
  for (const auto& tc : cases) {
    const bk::BlockCoefficient fine =
        bk::bdot(x, y, bk::SubalgebraConfig(8, tc.p1, bk::SubalgebraMode::hybrid));
    const bk::BlockCoefficient coarse =
        bk::bdot(x, y, bk::SubalgebraConfig(8, tc.p2, bk::SubalgebraMode::hybrid));
    const std::size_t per = tc.p2 / tc.p1;
    for (std::size_t blk = 0; blk < 8 / tc.p1; ++blk)
      for (std::size_t r = 0; r < tc.p1; ++r)
        for (std::size_t c = 0; c < tc.p1; ++c)
          if (fine.entry(blk, r, c) !=
              coarse.entry(blk / per, (blk % per) * tc.p1 + r, (blk % per) * tc.p1 + c))
            return false;
  }
  return true;
}

bool check_classical_coincidence() {
  const bk::BlockVector x = bk::random_block_rhs(10, 4, 17);
  const bk::BlockVector y = bk::random_block_rhs(10, 4, 18);
  const bk::BlockCoefficient hy =
      bk::bdot(x, y, bk::SubalgebraConfig(4, 4, bk::SubalgebraMode::hybrid));
  const bk::BlockCoefficient gl =
      bk::bdot(x, y, bk::SubalgebraConfig(4, 4, bk::SubalgebraMode::global));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      if (hy.entry(0, r, c) != gl.entry(0, r, c)) return false;
  return true;
}

bool check_flop_exactness() {
  for (const std::size_t grid : {8u, 16u}) {
    const bk::SparseMatrix a = bk::poisson2d(bk::PoissonSpec::heterogeneous(grid, grid, 3));
    const std::size_t n = a.n();
    for (const std::size_t k : {4u, 8u}) {
      const bk::BlockVector x = bk::random_block_rhs(n, k, 21);
      bk::BlockVector y = bk::random_block_rhs(n, k, 22);
      for (const std::size_t p : {1u, 2u, 4u, 8u}) {
        if (k % p) continue;
        const bk::SubalgebraConfig cfg(k, p, bk::SubalgebraMode::hybrid);
        bk::FlopCounter f;
        bk::bdot(x, y, cfg, &f);
        bk::baxpy(y, x, bk::BlockCoefficient::identity(cfg), &f);
        if (f.multiply_adds_bdot != bk::characteristics(bk::Kernel::bdot, n, k, p).omega)
          return false;
        if (f.multiply_adds_baxpy != bk::characteristics(bk::Kernel::baxpy, n, k, p).omega)
          return false;
      }
      bk::FlopCounter f;
      bk::bop(a, x, &f);
      if (f.multiply_adds_bop != bk::characteristics(bk::Kernel::bop, n, k, k, a.nnz()).omega)
        return false;
    }
  }
  return true;
}

bool check_rates() {
  std::vector<double> eig(100);
  for (std::size_t i = 0; i < 100; ++i) eig[i] = static_cast<double>(i + 1);
  const bk::Spectrum spec(eig);
  const bk::Spectrum flat({3.0, 3.0, 3.0});

  if (bk::rate_classical(flat, 1) != 0.0) return false;
  if (std::abs(bk::rate_classical(spec, 4) - 2.0 / 3.0) > 1e-15) return false;
  for (const std::size_t p : {1u, 2u, 5u})
    if (bk::rate_global(spec, p, 1) != bk::rate_classical(spec, p)) return false;
  double prev = 1.0;
  for (std::size_t k = 1; k <= 100; ++k) {
    const double mu = bk::rate_classical(spec, k);
    if (mu > prev + 1e-15) return false;
    prev = mu;
  }
  for (const std::size_t p : {2u, 4u})
    for (const std::size_t q : {2u, 4u})
      if (bk::rate_global(spec, p, q) < bk::rate_classical(spec, p) - 1e-15) return false;
  return true;
}

int run_verify(const std::string& suite) {
  if (suite != "all" && suite != "equivalence" && suite != "flops" && suite != "rates")
    throw bk::ConfigError("unknown suite '" + suite +
                          "' (expected equivalence, flops, rates or all)");

  const Check checks[] = {
      {"equivalence", "parallel p=1 matches scalar cg", check_parallel_reduction},
      {"equivalence", "hybrid splits into classical group runs", check_hybrid_split},
      {"equivalence", "global equals classical on stacked system", check_global_stacked},
      {"equivalence", "bdot embedding restriction is exact", check_embedding},
      {"equivalence", "hybrid p=k coincides with global p=k", check_classical_coincidence},
      {"flops", "kernel counters match cost table", check_flop_exactness},
      {"rates", "convergence rate formulas", check_rates},
  };

  bool all_pass = true;
  for (const Check& check : checks) {
    if (suite != "all" && suite != check.suite) continue;
    const bool pass = check.run();
    all_pass = all_pass && pass;
    std::printf("%-12s %-44s %s\n", check.suite, check.name, pass ? "pass" : "FAIL");
  }
  return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block Conjugate Gradients solver and performance model harness"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand(
      "solve", "Run the block solver on a 2D Poisson benchmark; CSV on stdout");
  solve->add_option("--nx", solve_args.nx, "grid cells in x")->capture_default_str();
  solve->add_option("--ny", solve_args.ny, "grid cells in y")->capture_default_str();
  solve->add_option("--k", solve_args.k, "right hand sides per solve")->capture_default_str();
  solve->add_option("--p", solve_args.p, "subalgebra block width (default: k)");
  solve->add_option("--mode", solve_args.mode, "hybrid|global")->capture_default_str();
  solve->add_option("--precond", solve_args.precond, "identity|jacobi|ilu0")
      ->capture_default_str();
  solve->add_option("--tol", solve_args.tol, "per-column defect reduction")
      ->capture_default_str();
  solve->add_option("--max-iter", solve_args.max_iter, "iteration cap (0: 10n)");
  solve->add_option("--seed", solve_args.seed, "seed for coefficients and rhs")
      ->capture_default_str();
  solve->add_option("--coeff", solve_args.coeff, "constant|loguniform")
      ->capture_default_str();
  solve->add_option("--contrast", solve_args.contrast,
                    "coefficient contrast exponent a (range 10^-a..10^a)")
      ->capture_default_str();
  CLI::Option* reps_opt = solve->add_option("--repetitions", solve_args.repetitions,
                                            "number of k-column batches to solve");
  CLI::Option* total_opt =
      solve->add_option("--total-rhs", solve_args.total_rhs,
                        "total right hand sides; batches = total/k");
  CLI::Option* file_opt = solve->add_option("--rhs-file", solve_args.rhs_file,
                                            "read right hand sides from a block vector file");
  total_opt->excludes(reps_opt);
  file_opt->excludes(reps_opt);
  file_opt->excludes(total_opt);
  solve->add_flag("--time", solve_args.time,
                  "measure kernel wall times (off: deterministic zeros)");
  solve->add_option("--reps", solve_args.reps, "timing repetitions, median reported")
      ->capture_default_str();
  solve->add_option("--dump-matrix", solve_args.dump_matrix,
                    "write the matrix in Matrix Market format");
  solve->add_option("--dump-rhs", solve_args.dump_rhs,
                    "write all right hand sides in block vector format");

  ModelArgs model_args;
  CLI::App* model = app.add_subcommand(
      "model", "Analytic kernel runtime predictions; CSV on stdout");
  model->add_option("--kernel", model_args.kernel, "bdot|baxpy|bop")->required();
  model->add_option("--n", model_args.n, "rows")->required();
  model->add_option("--k", model_args.k, "right hand sides")->required();
  model->add_option("--p-list", model_args.p_list, "comma separated block widths")
      ->required();
  CLI::Option* z_opt = model->add_option("--z", model_args.z, "stored nonzeros (bop only)");
  model->add_option("--machine", model_args.machine,
                    "machine profile file (default: $BLOCKKRYLOV_MACHINE, then the "
                    "built-in Skylake reference)");

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "Run a built-in property suite");
  verify->add_option("--suite", suite, "equivalence|flops|rates|all")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(solve_args);
    if (model->parsed()) {
      model_args.z_given = z_opt->count() > 0;
      return run_model(model_args);
    }
    return run_verify(suite);
  } catch (const bk::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUnreadable;
  } catch (const bk::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const bk::DimensionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const bk::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInternal;
  }
}
