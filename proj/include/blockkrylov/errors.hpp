#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blockkrylov {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not match (rows, columns, or subalgebra layout).
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Invalid configuration value (e.g. a block width that does not divide k).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Problem size outside the supported range of a dense routine.
class SizeError : public Error {
public:
  using Error::Error;
};

/// A block coefficient is numerically singular; carries the offending block.
class BreakdownError : public Error {
public:
  BreakdownError(std::size_t block_index, const std::string& what)
      : Error(what), block_index_(block_index) {}

  std::size_t block_index() const noexcept { return block_index_; }

private:
  std::size_t block_index_;
};

/// Zero pivot (or missing diagonal) during an incomplete factorization.
class FactorizationError : public Error {
public:
  FactorizationError(std::size_t row, const std::string& what)
      : Error(what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

private:
  std::size_t row_;
};

/// Malformed or unreadable input file.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace blockkrylov
