#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blockkrylov/errors.hpp"

namespace blockkrylov {

/// Which *-subalgebra of R^{k x k} the block method works in.
///
/// hybrid keeps q = k/p independent dense p x p diagonal blocks, one per
/// contiguous group of p columns; global shares a single p x p block across
/// all q groups. The classical method is hybrid with p = k, the fully
/// data-parallel method is hybrid with p = 1.
enum class SubalgebraMode { hybrid, global };

inline const char* to_string(SubalgebraMode mode) {
  return mode == SubalgebraMode::hybrid ? "hybrid" : "global";
}

inline SubalgebraMode parse_subalgebra_mode(std::string_view name) {
  if (name == "hybrid") return SubalgebraMode::hybrid;
  if (name == "global") return SubalgebraMode::global;
  throw ConfigError("unknown subalgebra mode '" + std::string(name) +
                    "' (expected hybrid or global)");
}

/// (k, p, mode) with q = k/p. p must divide k.
class SubalgebraConfig {
public:
  SubalgebraConfig(std::size_t k, std::size_t p, SubalgebraMode mode)
      : k_(k), p_(p), mode_(mode) {
    if (k == 0 || p == 0)
      throw ConfigError("subalgebra: k and p must be positive");
    if (k % p != 0)
      throw ConfigError("subalgebra: block width p=" + std::to_string(p) +
                        " does not divide k=" + std::to_string(k));
    q_ = k / p;
  }

  /// The full block method over R^{k x k} (hybrid with p = k).
  static SubalgebraConfig classical(std::size_t k) {
    return {k, k, SubalgebraMode::hybrid};
  }

  /// k simultaneous scalar methods (hybrid with p = 1).
  static SubalgebraConfig parallel(std::size_t k) {
    return {k, 1, SubalgebraMode::hybrid};
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t p() const noexcept { return p_; }
  std::size_t q() const noexcept { return q_; }
  SubalgebraMode mode() const noexcept { return mode_; }

  /// Number of stored p x p blocks: q for hybrid, 1 for global.
  std::size_t block_count() const noexcept {
    return mode_ == SubalgebraMode::global ? 1 : q_;
  }

  friend bool operator==(const SubalgebraConfig& a, const SubalgebraConfig& b) {
    return a.k_ == b.k_ && a.p_ == b.p_ && a.mode_ == b.mode_;
  }

private:
  std::size_t k_;
  std::size_t p_;
  std::size_t q_;
  SubalgebraMode mode_;
};

/// An element of the configured *-subalgebra: a sequence of dense p x p
/// blocks, row-major within each block.
class BlockCoefficient {
public:
  explicit BlockCoefficient(const SubalgebraConfig& config)
      : config_(config), data_(config.block_count() * config.p() * config.p(), 0.0) {}

  /// The identity of the subalgebra (every block a p x p identity).
  static BlockCoefficient identity(const SubalgebraConfig& config) {
    BlockCoefficient c(config);
    const std::size_t p = config.p();
    for (std::size_t b = 0; b < config.block_count(); ++b)
      for (std::size_t i = 0; i < p; ++i) c.entry(b, i, i) = 1.0;
    return c;
  }

  const SubalgebraConfig& config() const noexcept { return config_; }
  std::size_t block_count() const noexcept { return config_.block_count(); }

  std::span<double> block(std::size_t b) {
    const std::size_t s = config_.p() * config_.p();
    return {data_.data() + b * s, s};
  }
  std::span<const double> block(std::size_t b) const {
    const std::size_t s = config_.p() * config_.p();
    return {data_.data() + b * s, s};
  }

  double& entry(std::size_t b, std::size_t row, std::size_t col) {
    return data_[(b * config_.p() + row) * config_.p() + col];
  }
  double entry(std::size_t b, std::size_t row, std::size_t col) const {
    return data_[(b * config_.p() + row) * config_.p() + col];
  }

  BlockCoefficient negated() const {
    BlockCoefficient out(config_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = -data_[i];
    return out;
  }

private:
  SubalgebraConfig config_;
  std::vector<double> data_;
};

} // namespace blockkrylov
