#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "blockkrylov/errors.hpp"

namespace blockkrylov {

enum class Kernel { bdot, baxpy, bop };

inline const char* to_string(Kernel kernel) {
  switch (kernel) {
    case Kernel::bdot: return "bdot";
    case Kernel::baxpy: return "baxpy";
    default: return "bop";
  }
}

inline Kernel parse_kernel(std::string_view name) {
  if (name == "bdot") return Kernel::bdot;
  if (name == "baxpy") return Kernel::baxpy;
  if (name == "bop") return Kernel::bop;
  throw ConfigError("unknown kernel '" + std::string(name) +
                    "' (expected bdot, baxpy or bop)");
}

/// Single-core machine constants for the simplified ECM runtime model
/// T = max(omega / peak_flops, beta / mem_bandwidth, tau / reg_bandwidth).
struct MachineProfile {
  double peak_flops;     // flop/s
  double mem_bandwidth;  // byte/s, main memory to L1
  double reg_bandwidth;  // byte/s, L1 to registers
  double bytes_per_scalar = 8.0;

  void validate() const {
    if (!(peak_flops > 0.0) || !(mem_bandwidth > 0.0) || !(reg_bandwidth > 0.0) ||
        !(bytes_per_scalar > 0.0))
      throw ConfigError("machine profile: all rates must be strictly positive");
  }

  /// The Intel Skylake-SP Xeon Gold 6148 single-core reference machine:
  /// 76.8 Gflop/s peak, 13.345 GB/s memory, 286.1 GB/s register bandwidth.
  static MachineProfile skylake_gold_6148() {
    return {76.8e9, 13.345e9, 286.1e9, 8.0};
  }
};

/// Kernel cost characteristics: flops (omega), scalars moved from main
/// memory (beta), scalars moved between L1 and registers (tau).
struct KernelCharacteristics {
  std::uint64_t omega = 0;
  std::uint64_t beta = 0;
  std::uint64_t tau = 0;
};

/// Exact integer evaluation of the per-kernel cost table, with q = k/p:
///
///   kernel  omega      beta       tau
///   BDOT    2*n*p^2*q  2*n*k      2*n*q*p^2 + 2*n*k
///   BAXPY   2*n*p^2*q  3*n*k      n*q*p^2 + 2*n*k
///   BOP     2*k*z      2*z + 2*k*n  z*(2 + 2*k)
///
/// z (stored nonzeros) is only used for BOP.
inline KernelCharacteristics characteristics(Kernel kernel, std::size_t n, std::size_t k,
                                             std::size_t p, std::size_t z = 0) {
  if (k == 0 || p == 0) throw ConfigError("characteristics: k and p must be positive");
  if (k % p != 0)
    throw ConfigError("characteristics: block width p=" + std::to_string(p) +
                      " does not divide k=" + std::to_string(k));
  const std::uint64_t n64 = n, k64 = k, p64 = p, z64 = z;
  const std::uint64_t q64 = k64 / p64;
  KernelCharacteristics c;
  switch (kernel) {
    case Kernel::bdot:
      c.omega = 2 * n64 * p64 * p64 * q64;
      c.beta = 2 * n64 * k64;
      c.tau = 2 * n64 * q64 * p64 * p64 + 2 * n64 * k64;
      break;
    case Kernel::baxpy:
      c.omega = 2 * n64 * p64 * p64 * q64;
      c.beta = 3 * n64 * k64;
      c.tau = n64 * q64 * p64 * p64 + 2 * n64 * k64;
      break;
    case Kernel::bop:
      c.omega = 2 * k64 * z64;
      c.beta = 2 * z64 + 2 * k64 * n64;
      c.tau = z64 * (2 + 2 * k64);
      break;
  }
  return c;
}

/// The resource a kernel is bound by under the model.
enum class Bound { compute, memory, reg };

inline const char* to_string(Bound bound) {
  switch (bound) {
    case Bound::compute: return "compute";
    case Bound::memory: return "memory";
    default: return "register";
  }
}

struct Prediction {
  double t_comp;
  double t_mem;
  double t_reg;
  double t;      // max of the three
  Bound bound;   // argmax; ties resolve memory > register > compute
};

inline Prediction predict(const KernelCharacteristics& chars, const MachineProfile& m) {
  m.validate();
  Prediction pred{};
  pred.t_comp = static_cast<double>(chars.omega) / m.peak_flops;
  pred.t_mem = static_cast<double>(chars.beta) * m.bytes_per_scalar / m.mem_bandwidth;
  pred.t_reg = static_cast<double>(chars.tau) * m.bytes_per_scalar / m.reg_bandwidth;
  if (pred.t_mem >= pred.t_reg && pred.t_mem >= pred.t_comp) {
    pred.t = pred.t_mem;
    pred.bound = Bound::memory;
  } else if (pred.t_reg >= pred.t_comp) {
    pred.t = pred.t_reg;
    pred.bound = Bound::reg;
  } else {
    pred.t = pred.t_comp;
    pred.bound = Bound::compute;
  }
  return pred;
}

struct SweepRow {
  std::size_t p;
  Prediction prediction;
};

/// One prediction per requested block width (every p must divide k).
inline std::vector<SweepRow> sweep(Kernel kernel, std::size_t n, std::size_t k,
                                   const std::vector<std::size_t>& p_list, std::size_t z,
                                   const MachineProfile& m) {
  std::vector<SweepRow> rows;
  rows.reserve(p_list.size());
  for (const std::size_t p : p_list)
    rows.push_back({p, predict(characteristics(kernel, n, k, p, z), m)});
  return rows;
}

/// Parses a key-value profile file. Recognized keys: peak_flops,
/// mem_bandwidth, reg_bandwidth, bytes_per_scalar (optional). Blank lines
/// and lines starting with '#' are skipped.
inline MachineProfile read_machine_profile(std::istream& in) {
  MachineProfile m{0.0, 0.0, 0.0, 8.0};
  bool have_peak = false, have_mem = false, have_reg = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw IoError("machine profile line " + std::to_string(lineno) +
                    ": expected key=value");
    std::string key = line.substr(first, eq - first);
    key.erase(key.find_last_not_of(" \t") + 1);
    double value = 0.0;
    std::istringstream vs(line.substr(eq + 1));
    if (!(vs >> value))
      throw IoError("machine profile line " + std::to_string(lineno) +
                    ": cannot parse value for '" + key + "'");
    if (key == "peak_flops") {
      m.peak_flops = value;
      have_peak = true;
    } else if (key == "mem_bandwidth") {
      m.mem_bandwidth = value;
      have_mem = true;
    } else if (key == "reg_bandwidth") {
      m.reg_bandwidth = value;
      have_reg = true;
    } else if (key == "bytes_per_scalar") {
      m.bytes_per_scalar = value;
    }
    // unknown keys are ignored
  }
  if (!have_peak || !have_mem || !have_reg)
    throw IoError("machine profile: peak_flops, mem_bandwidth and reg_bandwidth "
                  "are all required");
  m.validate();
  return m;
}

inline MachineProfile load_machine_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open machine profile '" + path + "'");
  return read_machine_profile(in);
}

} // namespace blockkrylov
