#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "pivot/matrix.hpp"

namespace testing {

using pivot::IndexSet;
using pivot::Matrix;

inline Matrix example3() { return Matrix::from_rows({{1, 2, 1}, {1, 1, 0}, {2, 8, 1}}); }
inline Matrix example3_transform() { return Matrix::from_rows({{-1, -6, 1}, {-1, -5, 1}, {2, 4, -1}}); }
inline Matrix example3_inverse() {
  return Matrix::from_rows({{0.2, 1.2, -0.2}, {-0.2, -0.2, 0.2}, {1.2, -0.8, -0.2}});
}
inline Matrix example4() {
  return Matrix::from_rows({{1, -1.5, -0.25}, {-1.5, 1, -2.5}, {-0.5, -0.5, 1}});
}
inline Matrix example4_jacobi() { return Matrix::from_rows({{0, 1.5, 0.25}, {1.5, 0, 2.5}, {0.5, 0.5, 0}}); }
inline Matrix example4_transform() {
  return Matrix::from_rows({{0, 2.0 / 3, -5.0 / 3}, {2.0 / 3, 0, -1.0 / 6}, {1.0 / 3, 1.0 / 3, -11.0 / 12}});
}

inline IndexSet set1(std::size_t n, std::initializer_list<std::size_t> one_based) {
  std::vector<std::size_t> v(one_based);
  return IndexSet::from_one_based(n, v);
}

inline double max_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  double d = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) d = std::max(d, std::abs(a.data()[k] - b.data()[k]));
  return d;
}

inline Matrix random_matrix(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

inline IndexSet random_subset(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> u(0, (std::uint64_t{1} << n) - 1);
  return IndexSet::from_mask(n, u(rng));
}

/// Smallest singular-ish measure we accept for a block in randomized trials.
inline bool block_ok(const Matrix& a, const IndexSet& s, double floor = 0.05) {
  if (s.empty()) return true;
  return std::abs(pivot::lu_determinant(pivot::principal_submatrix(a, s))) > floor;
}

}  // namespace testing
