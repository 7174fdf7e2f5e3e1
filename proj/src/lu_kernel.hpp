#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace pivot::detail {

struct LuOutcome {
  int sign = 1;
  double min_pivot = 0.0;  // smallest |pivot| encountered
  double scale = 1.0;      // max(1, max |a_ij|) of the input
  bool exact_zero = false; // some column had no nonzero pivot candidate
};

/// In-place Doolittle LU with partial pivoting on an n x n row-major buffer.
/// perm receives the row permutation (row i of PA is row perm[i] of A).
template <class T>
LuOutcome lu_in_place(std::vector<T>& a, std::size_t n, std::vector<std::size_t>& perm) {
  LuOutcome out;
  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  double biggest = 0.0;
  for (const T& v : a) biggest = std::max(biggest, static_cast<double>(std::abs(v)));
  out.scale = std::max(1.0, biggest);
  out.min_pivot = n == 0 ? out.scale : std::abs(a.empty() ? T{} : a[0]);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = std::abs(a[i * n + k]);
      if (m > best) {
        best = m;
        p = i;
      }
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      std::swap(perm[k], perm[p]);
      out.sign = -out.sign;
    }
    out.min_pivot = k == 0 ? best : std::min(out.min_pivot, best);
    if (best == 0.0) {
      out.exact_zero = true;
      continue;
    }
    const T pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const T l = a[i * n + k] / pivot;
      a[i * n + k] = l;
      if (l == T{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= l * a[k * n + j];
    }
  }
  return out;
}

template <class T>
T lu_det_from(const std::vector<T>& lu, std::size_t n, const LuOutcome& o) {
  if (o.exact_zero) return T{};
  T det = static_cast<T>(o.sign);
  for (std::size_t k = 0; k < n; ++k) det *= lu[k * n + k];
  return det;
}

}  // namespace pivot::detail
