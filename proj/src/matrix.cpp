#include "pivot/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "lu_kernel.hpp"

namespace pivot {

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows * cols) {
    throw InputError("matrix: expected " + std::to_string(rows * cols) + " entries, got " +
                     std::to_string(a_.size()));
  }
  for (double v : a_) {
    if (!std::isfinite(v)) throw InputError("matrix: non-finite entry");
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw InputError("matrix: ragged row list");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(entries));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i])) throw InputError("matrix: non-finite entry");
    m(i, i) = d[i];
  }
  return m;
}

std::size_t Matrix::order() const {
  if (!is_square()) {
    throw InputError("matrix is " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                     ", expected square");
  }
  return rows_;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) noexcept {
  for (double& v : a_) v *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator-(Matrix m) { return m *= -1.0; }
Matrix operator*(double s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw InputError("matrix product: inner dimension mismatch");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double l = lhs(i, k);
      if (l == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += l * rhs(k, j);
    }
  return out;
}

Vector operator*(const Matrix& m, std::span<const double> x) {
  if (m.cols() != x.size()) throw InputError("matrix-vector product: dimension mismatch");
  Vector y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double norm_inf(const Matrix& m) noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (double v : m.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

double norm_fro(const Matrix& m) noexcept {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

double norm_inf(std::span<const double> x) noexcept {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(std::size_t n, std::vector<std::size_t> indices) : n_(n), idx_(std::move(indices)) {
  std::sort(idx_.begin(), idx_.end());
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    if (idx_[k] >= n_) {
      throw InputError("index " + std::to_string(idx_[k] + 1) + " out of range 1.." + std::to_string(n_));
    }
    if (k > 0 && idx_[k] == idx_[k - 1]) {
      throw InputError("duplicate index " + std::to_string(idx_[k] + 1));
    }
  }
}

IndexSet IndexSet::all(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return IndexSet(n, std::move(v));
}

IndexSet IndexSet::from_mask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw CapacityError("index set mask: order above 64");
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1U) v.push_back(i);
  if (n < 64 && (mask >> n) != 0) throw InputError("index set mask: bits beyond ambient order");
  return IndexSet(n, std::move(v));
}

IndexSet IndexSet::from_one_based(std::size_t n, std::span<const std::size_t> indices) {
  std::vector<std::size_t> v;
  v.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i == 0 || i > n) throw InputError("index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
    v.push_back(i - 1);
  }
  return IndexSet(n, std::move(v));
}

bool IndexSet::contains(std::size_t i) const noexcept {
  return std::binary_search(idx_.begin(), idx_.end(), i);
}

IndexSet IndexSet::complement() const {
  std::vector<std::size_t> v;
  v.reserve(n_ - idx_.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (k < idx_.size() && idx_[k] == i) {
      ++k;
    } else {
      v.push_back(i);
    }
  }
  IndexSet c;
  c.n_ = n_;
  c.idx_ = std::move(v);
  return c;
}

std::uint64_t IndexSet::mask() const {
  if (n_ > 64) throw CapacityError("index set mask: order above 64");
  std::uint64_t m = 0;
  for (std::size_t i : idx_) m |= std::uint64_t{1} << i;
  return m;
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    if (k) os << ',';
    os << idx_[k] + 1;
  }
  os << '}';
  return os.str();
}

std::strong_ordering IndexSet::operator<=>(const IndexSet& other) const {
  if (auto c = std::lexicographical_compare_three_way(idx_.begin(), idx_.end(), other.idx_.begin(),
                                                      other.idx_.end());
      c != 0)
    return c;
  return n_ <=> other.n_;
}

// ---------------------------------------------------------------------------
// Helpers

namespace detail {

Matrix gather(const Matrix& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  return out;
}

void require_square(const Matrix& a, const char* what) {
  if (!a.is_square()) {
    throw InputError(std::string(what) + ": matrix is " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + ", expected square");
  }
}

void require_ambient(const Matrix& a, const IndexSet& s, const char* what) {
  if (s.ambient() != a.rows()) {
    throw InputError(std::string(what) + ": index set ambient order " + std::to_string(s.ambient()) +
                     " does not match matrix order " + std::to_string(a.rows()));
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// LU

LuFactorization::LuFactorization(const Matrix& a) : n_(a.order()), lu_(a.data().begin(), a.data().end()) {
  const detail::LuOutcome o = detail::lu_in_place(lu_, n_, perm_);
  sign_ = o.sign;
  exact_zero_ = o.exact_zero;
  singular_ = n_ > 0 && o.min_pivot < kPivotTolerance * o.scale;
}

double LuFactorization::determinant() const noexcept {
  detail::LuOutcome o;
  o.sign = sign_;
  o.exact_zero = exact_zero_;
  return detail::lu_det_from(lu_, n_, o);
}

Vector LuFactorization::solve(std::span<const double> b) const {
  if (b.size() != n_) throw InputError("lu solve: dimension mismatch");
  if (singular_) throw SingularBlock("A", "lu solve: matrix is singular");
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_[i * n_ + j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n_; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n_; ++j) s -= lu_[i * n_ + j] * x[j];
    x[i] = s / lu_[i * n_ + i];
  }
  return x;
}

Matrix LuFactorization::solve(const Matrix& b) const {
  if (b.rows() != n_) throw InputError("lu solve: dimension mismatch");
  Matrix x(n_, b.cols());
  Vector col(n_);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n_; ++i) col[i] = b(i, j);
    const Vector s = solve(col);
    for (std::size_t i = 0; i < n_; ++i) x(i, j) = s[i];
  }
  return x;
}

Matrix LuFactorization::inverse() const { return solve(Matrix::identity(n_)); }

// ---------------------------------------------------------------------------
// Submatrices, determinants, Schur complements

Matrix submatrix(const Matrix& a, const IndexSet& rows, const IndexSet& cols) {
  if (rows.ambient() != a.rows() || cols.ambient() != a.cols()) {
    throw InputError("submatrix: index set ambient order does not match matrix shape");
  }
  return detail::gather(a, rows.indices(), cols.indices());
}

Matrix principal_submatrix(const Matrix& a, const IndexSet& alpha) { return submatrix(a, alpha, alpha); }

double lu_determinant(const Matrix& a) {
  detail::require_square(a, "lu_determinant");
  if (a.rows() == 0) return 1.0;
  return LuFactorization(a).determinant();
}

Matrix lu_inverse(const Matrix& a) {
  detail::require_square(a, "lu_inverse");
  LuFactorization lu(a);
  if (lu.singular()) throw SingularBlock("A", "matrix is singular");
  return lu.inverse();
}

Matrix schur_complement(const Matrix& a, const IndexSet& alpha) {
  detail::require_square(a, "schur_complement");
  detail::require_ambient(a, alpha, "schur_complement");
  const IndexSet rest = alpha.complement();
  if (alpha.empty()) return a;
  const Matrix a11 = principal_submatrix(a, alpha);
  LuFactorization lu(a11);
  if (lu.singular()) {
    const std::string name = "A[" + alpha.to_string() + "]";
    throw SingularBlock(name, "schur_complement: block " + name + " is singular");
  }
  const Matrix x = lu.solve(submatrix(a, alpha, rest));
  return principal_submatrix(a, rest) - submatrix(a, rest, alpha) * x;
}

double PrincipalMinors::operator[](std::uint64_t mask) const {
  if (mask >= values_.size()) throw InputError("principal minors: subset outside table");
  if (static_cast<std::size_t>(std::popcount(mask)) > max_order_) {
    throw InputError("principal minors: subset order above table limit");
  }
  return values_[mask];
}

double PrincipalMinors::at(const IndexSet& beta) const {
  if (beta.ambient() != n_) throw InputError("principal minors: ambient order mismatch");
  return (*this)[beta.mask()];
}

PrincipalMinors principal_minors(const Matrix& a, std::size_t max_order) {
  detail::require_square(a, "principal_minors");
  const std::size_t n = a.rows();
  if (n > kMaxEnumerationOrder) {
    throw CapacityError("principal_minors: order " + std::to_string(n) + " exceeds enumeration limit " +
                        std::to_string(kMaxEnumerationOrder));
  }
  max_order = std::min(max_order, n);
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> values(count, 0.0);
  std::vector<std::size_t> idx;
  std::vector<double> buf;
  std::vector<std::size_t> perm;
  idx.reserve(n);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k > max_order) continue;
    if (k == 0) {
      values[mask] = 1.0;
      continue;
    }
    idx.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) idx.push_back(i);
    buf.resize(k * k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) buf[r * k + c] = a(idx[r], idx[c]);
    const detail::LuOutcome o = detail::lu_in_place(buf, k, perm);
    values[mask] = detail::lu_det_from(buf, k, o);
  }
  return PrincipalMinors(n, max_order, std::move(values));
}

Complex det_plus_diagonal(const PrincipalMinors& minors, std::span<const Complex> d) {
  const std::size_t n = minors.order();
  if (d.size() != n) throw InputError("det_plus_diagonal: diagonal length mismatch");
  if (minors.max_order() < n) throw InputError("det_plus_diagonal: minor table is truncated");
  const std::uint64_t count = std::uint64_t{1} << n;
  Complex total = 0.0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    Complex term = minors[mask];
    for (std::size_t i = 0; i < n; ++i)
      if (!(mask >> i & 1U)) term *= d[i];
    total += term;
  }
  return total;
}

Complex det_plus_diagonal(const Matrix& a, std::span<const Complex> d) {
  detail::require_square(a, "det_plus_diagonal");
  return det_plus_diagonal(principal_minors(a, a.rows()), d);
}

double det_plus_diagonal(const Matrix& a, std::span<const double> d) {
  std::vector<Complex> dc(d.begin(), d.end());
  return det_plus_diagonal(a, std::span<const Complex>(dc)).real();
}

Complex complex_determinant(std::size_t n, std::vector<Complex> entries) {
  if (entries.size() != n * n) throw InputError("complex_determinant: expected n*n entries");
  if (n == 0) return 1.0;
  std::vector<std::size_t> perm;
  const detail::LuOutcome o = detail::lu_in_place(entries, n, perm);
  return detail::lu_det_from(entries, n, o);
}

Matrix block_inverse(const Matrix& a, const IndexSet& alpha) {
  detail::require_square(a, "block_inverse");
  detail::require_ambient(a, alpha, "block_inverse");
  const IndexSet rest = alpha.complement();
  const std::size_t n = a.rows();

  auto factor = [&](const Matrix& block, const std::string& name) {
    LuFactorization lu(block);
    if (lu.singular()) throw SingularBlock(name, "block_inverse: " + name + " is singular");
    return lu;
  };

  // Degenerate partitions reduce to a plain inverse of the only nonempty block.
  if (alpha.empty() || rest.empty()) {
    LuFactorization lu = factor(a, "A");
    return lu.inverse();
  }

  const Matrix a11 = principal_submatrix(a, alpha);
  const Matrix a12 = submatrix(a, alpha, rest);
  const Matrix a21 = submatrix(a, rest, alpha);
  const Matrix a22 = principal_submatrix(a, rest);

  const LuFactorization lu11 = factor(a11, "A[" + alpha.to_string() + "]");
  const LuFactorization lu22 = factor(a22, "A(" + alpha.to_string() + ")");

  const Matrix x12 = lu11.solve(a12);  // A[a]^{-1} A[a,a)
  const Matrix x21 = lu22.solve(a21);  // A(a)^{-1} A(a,a]
  const Matrix s_lead = a22 - a21 * x12;  // A/A[a]
  const Matrix s_trail = a11 - a12 * x21; // A/A(a)

  const LuFactorization lu_s = factor(s_lead, "A/A[" + alpha.to_string() + "]");
  const LuFactorization lu_t = factor(s_trail, "A/A(" + alpha.to_string() + ")");

  const Matrix inv_s = lu_s.inverse();
  const Matrix top_left = lu_t.inverse();
  const Matrix top_right = -(x12 * inv_s);
  // (A/A[a])^{-1} A(a,a] A[a]^{-1}, negated
  const Matrix bottom_left = -(lu_s.solve(a21) * lu11.inverse());

  Matrix out(n, n);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (std::size_t j = 0; j < alpha.size(); ++j) out(alpha[i], alpha[j]) = top_left(i, j);
    for (std::size_t j = 0; j < rest.size(); ++j) out(alpha[i], rest[j]) = top_right(i, j);
  }
  for (std::size_t i = 0; i < rest.size(); ++i) {
    for (std::size_t j = 0; j < alpha.size(); ++j) out(rest[i], alpha[j]) = bottom_left(i, j);
    for (std::size_t j = 0; j < rest.size(); ++j) out(rest[i], rest[j]) = inv_s(i, j);
  }
  return out;
}

}  // namespace pivot
