#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "pivot/errors.hpp"

namespace pivot {

using Vector = std::vector<double>;
using Complex = std::complex<double>;

/// Dense row-major matrix of doubles.
///
/// Most operations in the library require a square matrix; rectangular
/// shapes exist only as intermediate blocks (A[alpha, beta] and friends).
/// Entries supplied by the caller are checked to be finite.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  /// Order of a square matrix; throws InputError otherwise.
  std::size_t order() const;

  double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return a_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {a_.data() + i * cols_, cols_};
  }

  Matrix transposed() const;
  double max_abs() const noexcept;

  bool operator==(const Matrix&) const = default;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s) noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(double s, Matrix m);
Vector operator*(const Matrix& m, std::span<const double> x);

double norm_inf(const Matrix& m) noexcept;
double norm_fro(const Matrix& m) noexcept;
double norm_inf(std::span<const double> x) noexcept;

/// Sorted, duplicate-free subset of {0, ..., n-1}.
///
/// Stored 0-based; user-facing text (to_string, parse_alpha) is 1-based.
class IndexSet {
 public:
  IndexSet() = default;
  /// Indices are sorted; duplicates or entries >= n raise InputError.
  IndexSet(std::size_t n, std::vector<std::size_t> indices);

  static IndexSet none(std::size_t n) { return IndexSet(n, {}); }
  static IndexSet all(std::size_t n);
  static IndexSet from_mask(std::size_t n, std::uint64_t mask);
  static IndexSet from_one_based(std::size_t n, std::span<const std::size_t> indices);

  std::size_t ambient() const noexcept { return n_; }
  std::size_t size() const noexcept { return idx_.size(); }
  bool empty() const noexcept { return idx_.empty(); }
  std::span<const std::size_t> indices() const noexcept { return idx_; }
  std::size_t operator[](std::size_t k) const noexcept { return idx_[k]; }
  auto begin() const noexcept { return idx_.begin(); }
  auto end() const noexcept { return idx_.end(); }

  bool contains(std::size_t i) const noexcept;
  IndexSet complement() const;
  /// Bit i set iff i is in the set; requires ambient() <= 64.
  std::uint64_t mask() const;

  /// 1-based text such as "{1,3}"; the empty set prints as "{}".
  std::string to_string() const;

  bool operator==(const IndexSet&) const = default;
  /// Lexicographic on the index lists, then by ambient order.
  std::strong_ordering operator<=>(const IndexSet& other) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> idx_;
};

/// Pivot magnitude below which an LU factorization is declared singular,
/// relative to max(1, largest |entry| of the factored block).
inline constexpr double kPivotTolerance = 1e-12;

/// Capacity guard for 2^n subset enumerations.
inline constexpr std::size_t kMaxEnumerationOrder = 20;

/// LU factorization with partial pivoting of a square matrix.
class LuFactorization {
 public:
  explicit LuFactorization(const Matrix& a);

  std::size_t order() const noexcept { return n_; }
  /// True when some pivot fell below kPivotTolerance * max(1, max|a_ij|).
  bool singular() const noexcept { return singular_; }
  double determinant() const noexcept;

  /// Solve A x = b. Requires !singular().
  Vector solve(std::span<const double> b) const;
  /// Solve A X = B column by column. Requires !singular().
  Matrix solve(const Matrix& b) const;
  Matrix inverse() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  bool singular_ = false;
  bool exact_zero_ = false;
};

/// A[rows, cols] with indices in ascending order.
Matrix submatrix(const Matrix& a, const IndexSet& rows, const IndexSet& cols);
/// A[alpha].
Matrix principal_submatrix(const Matrix& a, const IndexSet& alpha);

/// det(A) by LU with partial pivoting; the 0x0 determinant is 1.
double lu_determinant(const Matrix& a);

/// A^{-1} by LU; throws SingularBlock when the pivot test fails.
Matrix lu_inverse(const Matrix& a);

/// A/A[alpha] = A(alpha) - A(alpha,alpha] A[alpha]^{-1} A[alpha,alpha).
Matrix schur_complement(const Matrix& a, const IndexSet& alpha);

/// Table of principal minors det A[beta], indexed by the bitmask of beta.
class PrincipalMinors {
 public:
  PrincipalMinors(std::size_t n, std::size_t max_order, std::vector<double> values)
      : n_(n), max_order_(max_order), values_(std::move(values)) {}

  std::size_t order() const noexcept { return n_; }
  std::size_t max_order() const noexcept { return max_order_; }

  /// det A[beta] for the subset encoded by mask; |beta| must not exceed max_order().
  double operator[](std::uint64_t mask) const;
  double at(const IndexSet& beta) const;

 private:
  std::size_t n_;
  std::size_t max_order_;
  std::vector<double> values_;
};

/// det A[beta] for every beta with |beta| <= max_order, including det A[{}] = 1.
/// Throws CapacityError for n > kMaxEnumerationOrder.
PrincipalMinors principal_minors(const Matrix& a, std::size_t max_order);

/// det(A + diag(d)) through the expansion over principal minors.
double det_plus_diagonal(const Matrix& a, std::span<const double> d);
Complex det_plus_diagonal(const Matrix& a, std::span<const Complex> d);

/// Same sum evaluated on a precomputed minor table.
Complex det_plus_diagonal(const PrincipalMinors& minors, std::span<const Complex> d);

/// det of a complex square matrix given in row-major order (LU with partial pivoting).
Complex complex_determinant(std::size_t n, std::vector<Complex> entries);

/// A^{-1} assembled block-wise from the two Schur complements A/A[alpha] and A/A(alpha).
Matrix block_inverse(const Matrix& a, const IndexSet& alpha);

namespace detail {
/// Gather a[rows[i], cols[j]] for arbitrary (not necessarily sorted) index lists.
Matrix gather(const Matrix& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols);
void require_square(const Matrix& a, const char* what);
void require_ambient(const Matrix& a, const IndexSet& s, const char* what);
}  // namespace detail

}  // namespace pivot
