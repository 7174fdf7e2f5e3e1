#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pivot {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad index, wrong dimension, parse failure, invalid config.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A block that must be inverted failed the pivot test.
class SingularBlock : public Error {
 public:
  SingularBlock(std::string block, std::string message)
      : Error(std::move(message)), block_(std::move(block)) {}

  /// Human-readable name of the offending block, e.g. "A[{1,3}]".
  const std::string& block() const noexcept { return block_; }

 private:
  std::string block_;
};

/// The requested enumeration exceeds the supported problem size.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ZeroDiagonal : public Error {
 public:
  ZeroDiagonal(std::size_t index, std::string message)
      : Error(std::move(message)), index_(index) {}

  /// 0-based position of the vanishing diagonal entry.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NotOrthogonal : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel hit its iteration cap without deciding.
class NonConvergence : public Error {
 public:
  NonConvergence(std::string message, std::vector<double> best_real,
                 std::vector<double> best_imag)
      : Error(std::move(message)),
        best_real_(std::move(best_real)),
        best_imag_(std::move(best_imag)) {}

  const std::vector<double>& best_real() const noexcept { return best_real_; }
  const std::vector<double>& best_imag() const noexcept { return best_imag_; }

 private:
  std::vector<double> best_real_;
  std::vector<double> best_imag_;
};

/// The feasibility solver could not reach a verdict.
class Indeterminate : public Error {
 public:
  using Error::Error;
};

}  // namespace pivot
