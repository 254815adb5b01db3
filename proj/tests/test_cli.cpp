#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "blockkrylov/blockkrylov.hpp"
#include "subprocess.hpp"

namespace fs = std::filesystem;
using testutil::cli_path;
using testutil::run_command;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

std::size_t field_index(const std::string& header, const std::string& name) {
  const auto fields = fields_of(header);
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (fields[i] == name) return i;
  return static_cast<std::size_t>(-1);
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("blockkrylov_cli_test_" + name);
}

} // namespace

TEST(CliSolve, HappyPathEmitsOneConvergedRow) {
  const auto res = run_command(
      cli_path() +
      " solve --nx 16 --ny 16 --k 8 --p 8 --mode hybrid --precond ilu0 --tol 1e-8 --seed 7");
  EXPECT_EQ(res.exit_code, 0);
  const auto lines = lines_of(res.output);
  ASSERT_EQ(lines.size(), 2u);
  const std::size_t conv = field_index(lines[0], "converged");
  const std::size_t iters = field_index(lines[0], "iterations");
  ASSERT_NE(conv, static_cast<std::size_t>(-1));
  const auto row = fields_of(lines[1]);
  EXPECT_EQ(row[conv], "true");
  EXPECT_GT(std::stoul(row[iters]), 0u);
}

TEST(CliSolve, NonDivisorBlockWidthIsUsageError) {
  const auto res = run_command(cli_path() + " solve --k 8 --p 3");
  EXPECT_EQ(res.exit_code, 64);
}

TEST(CliSolve, UnknownFlagIsUsageError) {
  const auto res = run_command(cli_path() + " solve --definitely-not-a-flag 3");
  EXPECT_EQ(res.exit_code, 64);
}

TEST(CliSolve, RankDeficientRhsFileExitsWithBreakdown) {
  const fs::path rhs = temp_file("dup_rhs.txt");
  {
    blockkrylov::BlockVector b = blockkrylov::random_block_rhs(64, 4, 3);
    for (std::size_t r = 0; r < 64; ++r) b(r, 3) = b(r, 0);
    blockkrylov::save_block_vector(rhs.string(), b);
  }
  const auto res = run_command(cli_path() + " solve --nx 8 --ny 8 --k 4 --p 4 --rhs-file " +
                               rhs.string());
  EXPECT_EQ(res.exit_code, 2);
  const auto lines = lines_of(res.output);
  ASSERT_EQ(lines.size(), 2u); // breakdown row still emitted
  const std::size_t bd_iter = field_index(lines[0], "breakdown_iteration");
  EXPECT_EQ(fields_of(lines[1])[bd_iter], "1");
  fs::remove(rhs);
}

TEST(CliSolve, MaxIterExitsWithCode3) {
  const auto res =
      run_command(cli_path() + " solve --nx 8 --ny 8 --k 4 --p 4 --tol 1e-14 --max-iter 2");
  EXPECT_EQ(res.exit_code, 3);
}

TEST(CliSolve, RepetitionsEmitOneRowPerBatch) {
  const auto res = run_command(cli_path() +
                               " solve --nx 8 --ny 8 --k 4 --p 4 --total-rhs 12 --seed 5");
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_EQ(lines_of(res.output).size(), 4u); // header + 3 batches
}

TEST(CliSolve, TotalRhsMustBeMultipleOfK) {
  const auto res = run_command(cli_path() + " solve --k 4 --total-rhs 10");
  EXPECT_EQ(res.exit_code, 64);
}

TEST(CliSolve, ConstantCoefficientsWithJacobi) {
  const auto res = run_command(
      cli_path() + " solve --nx 12 --ny 12 --k 4 --p 2 --coeff constant --precond jacobi");
  EXPECT_EQ(res.exit_code, 0);
  const auto lines = lines_of(res.output);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(fields_of(lines[1])[field_index(lines[0], "converged")], "true");
}

TEST(CliSolve, ByteIdenticalForIdenticalFlags) {
  const std::string cmd = cli_path() +
      " solve --nx 16 --ny 16 --k 8 --p 4 --mode hybrid --precond jacobi --tol 1e-6 --seed 11";
  const auto first = run_command(cmd);
  const auto second = run_command(cmd);
  EXPECT_EQ(first.exit_code, 0);
  EXPECT_EQ(second.exit_code, 0);
  EXPECT_EQ(first.output, second.output);
}

// Recorded flop columns must reproduce the analytic per-iteration totals:
// three BDOTs, three BAXPYs, one BOP and one preconditioner application per
// iteration, plus the setup application.
TEST(CliSolve, FlopColumnsFollowTheCostTable) {
  const std::size_t nx = 16, ny = 16, k = 8, p = 4;
  const auto res = run_command(cli_path() + " solve --nx 16 --ny 16 --k 8 --p 4 --seed 7");
  ASSERT_EQ(res.exit_code, 0);
  const auto lines = lines_of(res.output);
  ASSERT_EQ(lines.size(), 2u);
  const auto row = fields_of(lines[1]);
  const auto value = [&](const char* name) {
    return std::stoull(row[field_index(lines[0], name)]);
  };

  const blockkrylov::SparseMatrix a =
      blockkrylov::poisson2d(blockkrylov::PoissonSpec::heterogeneous(nx, ny, 7));
  const std::size_t n = a.n(), z = a.nnz();
  const std::uint64_t iters = value("iterations");
  ASSERT_GE(iters, 1u);
  using blockkrylov::Kernel;
  using blockkrylov::characteristics;
  EXPECT_EQ(value("flops_bdot"), 3 * iters * characteristics(Kernel::bdot, n, k, p).omega);
  EXPECT_EQ(value("flops_baxpy"), 3 * iters * characteristics(Kernel::baxpy, n, k, p).omega);
  EXPECT_EQ(value("flops_bop"), iters * characteristics(Kernel::bop, n, k, p, z).omega);
  EXPECT_EQ(value("flops_precond"), (iters + 1) * (2ull * k * (z - n) + n * k));
}

// RunRecord fields survive the CSV round trip without loss.
TEST(CliSolve, CsvRowRoundTripsLosslessly) {
  const auto res =
      run_command(cli_path() + " solve --nx 8 --ny 8 --k 4 --p 2 --tol 1.25e-9 --seed 13");
  ASSERT_EQ(res.exit_code, 0);
  const auto lines = lines_of(res.output);
  ASSERT_EQ(lines.size(), 2u);
  const auto header = fields_of(lines[0]);
  const auto row = fields_of(lines[1]);
  ASSERT_EQ(row.size(), header.size());
  EXPECT_EQ(std::stod(row[field_index(lines[0], "tol")]), 1.25e-9); // exact
  EXPECT_EQ(row[field_index(lines[0], "seed")], "13");
  EXPECT_EQ(row[field_index(lines[0], "mode")], "hybrid");
  EXPECT_EQ(row[field_index(lines[0], "precond")], "ilu0");
  EXPECT_EQ(std::stod(row[field_index(lines[0], "seconds_bdot")]), 0.0);
}

TEST(CliSolve, TimingFlagFillsSecondsColumns) {
  const auto res =
      run_command(cli_path() + " solve --nx 16 --ny 16 --k 8 --p 8 --seed 7 --time --reps 3");
  ASSERT_EQ(res.exit_code, 0);
  const auto lines = lines_of(res.output);
  ASSERT_EQ(lines.size(), 2u);
  const auto row = fields_of(lines[1]);
  double total = 0.0;
  for (const char* name : {"seconds_bdot", "seconds_baxpy", "seconds_bop", "seconds_precond"})
    total += std::stod(row[field_index(lines[0], name)]);
  EXPECT_GT(total, 0.0);
}

TEST(CliSolve, DumpsMatrixAndRhsInExchangeFormats) {
  const fs::path mat = temp_file("dump.mtx");
  const fs::path rhs = temp_file("dump_rhs.txt");
  const auto res = run_command(cli_path() + " solve --nx 6 --ny 5 --k 4 --p 4 --seed 9" +
                               " --dump-matrix " + mat.string() + " --dump-rhs " + rhs.string());
  EXPECT_EQ(res.exit_code, 0);

  const blockkrylov::SparseMatrix a = blockkrylov::load_matrix_market(mat.string());
  EXPECT_EQ(a.n(), 30u);
  const blockkrylov::BlockVector b = blockkrylov::load_block_vector(rhs.string());
  EXPECT_EQ(b.rows(), 30u);
  EXPECT_EQ(b.cols(), 4u);
  // same seed, same generator: the dump equals the library-side generation
  EXPECT_TRUE(b == blockkrylov::random_block_rhs(30, 4, 9));
  fs::remove(mat);
  fs::remove(rhs);
}

TEST(CliModel, SweepRowsAndBounds) {
  const auto res = run_command(
      cli_path() +
      " model --kernel bdot --n 1000000 --k 128 --p-list 1,2,4,8,16,32,64,128");
  EXPECT_EQ(res.exit_code, 0);
  const auto lines = lines_of(res.output);
  ASSERT_EQ(lines.size(), 9u);
  EXPECT_EQ(lines[0], "p,t_comp,t_mem,t_reg,t,bound");
  const std::size_t bound = field_index(lines[0], "bound");
  for (std::size_t i = 1; i <= 5; ++i) // p = 1..16
    EXPECT_EQ(fields_of(lines[i])[bound], "memory");
  for (std::size_t i = 6; i <= 8; ++i) // p = 32..128
    EXPECT_EQ(fields_of(lines[i])[bound], "register");
}

TEST(CliModel, EmptyPListGivesHeaderOnly) {
  const auto res =
      run_command(cli_path() + " model --kernel baxpy --n 1000 --k 8 --p-list \"\"");
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_EQ(lines_of(res.output).size(), 1u);
}

TEST(CliModel, BopWithoutNonzerosIsUsageError) {
  const auto res = run_command(cli_path() + " model --kernel bop --n 100 --k 4 --p-list 1,2");
  EXPECT_EQ(res.exit_code, 64);
}

TEST(CliModel, NonDivisorInPListIsUsageError) {
  const auto res = run_command(cli_path() + " model --kernel bdot --n 100 --k 8 --p-list 3");
  EXPECT_EQ(res.exit_code, 64);
}

TEST(CliModel, UnreadableMachineProfileExits66) {
  const auto res = run_command(cli_path() +
                               " model --kernel bdot --n 100 --k 8 --p-list 1 "
                               "--machine /nonexistent/profile.txt");
  EXPECT_EQ(res.exit_code, 66);
}

TEST(CliModel, MachineProfileFileAndEnvironmentVariable) {
  const fs::path profile = temp_file("machine.profile");
  {
    std::ofstream out(profile);
    out << "peak_flops=7.68e10\nmem_bandwidth=1.3345e10\nreg_bandwidth=2.861e11\n";
  }
  const std::string args = " model --kernel bdot --n 1000 --k 128 --p-list 1,16,128";
  const auto builtin = run_command(cli_path() + args);
  const auto from_flag = run_command(cli_path() + args + " --machine " + profile.string());
  const auto from_env =
      run_command("BLOCKKRYLOV_MACHINE=" + profile.string() + " " + cli_path() + args);
  EXPECT_EQ(from_flag.exit_code, 0);
  EXPECT_EQ(from_flag.output, builtin.output); // profile holds the built-in constants
  EXPECT_EQ(from_env.output, builtin.output);
  fs::remove(profile);
}

TEST(CliVerify, SuitesPassAndUnknownSuiteFails) {
  EXPECT_EQ(run_command(cli_path() + " verify --suite equivalence").exit_code, 0);
  EXPECT_EQ(run_command(cli_path() + " verify --suite flops").exit_code, 0);
  EXPECT_EQ(run_command(cli_path() + " verify --suite rates").exit_code, 0);
  EXPECT_EQ(run_command(cli_path() + " verify --suite nosuch").exit_code, 64);

  const auto all = run_command(cli_path() + " verify");
  EXPECT_EQ(all.exit_code, 0);
  EXPECT_EQ(lines_of(all.output).size(), 7u); // one line per check
}

TEST(CliVerify, MissingSubcommandIsUsageError) {
  EXPECT_EQ(run_command(cli_path()).exit_code, 64);
}
