#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pivot/matrix.hpp"

namespace pivot {

/// ppt(A, alpha) = C1 * C2^{-1}.
///
/// T1 is the identity with the diagonal entries indexed by alpha set to 0 and
/// T2 = I - T1, so C1 = T2 + T1 A takes identity rows on alpha and A's rows
/// elsewhere, while C2 = T1 + T2 A takes A's rows on alpha.
struct Factorization {
  Matrix c1;
  Matrix c2;
  std::vector<double> t1_diag;  // 1 on the complement of alpha
  std::vector<double> t2_diag;  // 1 on alpha
};

struct FlopReport {
  std::uint64_t predicted_ppt_inversion = 0;  // n(n+1)(2n+1)/6 - 1
  std::uint64_t predicted_lu_inversion = 0;   // ceil(5 n^3 / 6)
  std::optional<std::uint64_t> measured;      // set by an instrumented run
};

/// Principal pivot transform of A relative to alpha.
///
/// Computed by permuting alpha to the leading positions, applying the block
/// formula, and permuting back. ppt(A, {}) = A. Throws SingularBlock when
/// A[alpha] fails the pivot test.
Matrix ppt(const Matrix& a, const IndexSet& alpha);

/// ppt(A, {i}) as a rank-one update; costs exactly n^2 flops
/// (2(n-1) divisions, (n-1)^2 multiply-adds and one reciprocal).
Matrix ppt_single(const Matrix& a, std::size_t i);

/// With y = A x: u[alpha] = y[alpha], u(alpha) = x(alpha), v[alpha] = x[alpha],
/// v(alpha) = y(alpha). Then ppt(A, alpha) u = v.
std::pair<Vector, Vector> exchange_vectors(const Matrix& a, const IndexSet& alpha, std::span<const double> x);

Factorization basic_factorization(const Matrix& a, const IndexSet& alpha);

/// Apply ppt over the blocks of a partition of {1..n} in order; the result is A^{-1}.
/// Singleton blocks go through ppt_single. The partition is validated up front.
Matrix sequential_inverse(const Matrix& a, std::span<const IndexSet> partition);

/// The partition {1}, {2}, ..., {n}.
std::vector<IndexSet> singleton_partition(std::size_t n);

/// Closed-form flop predictions; `measured` is left empty.
FlopReport flop_estimate(std::size_t n);

/// Singleton-partition inversion under a flop counter. Returns the inverse and
/// a report with `measured` filled in (requires an instrumented build).
std::pair<Matrix, FlopReport> measured_singleton_inversion(const Matrix& a);

/// Frobenius norm of (-B I) P (I; A) with P = (T1 T2; T2 T1) and B = ppt(A, alpha).
double combinatorial_residual(const Matrix& a, const IndexSet& alpha);

/// det ppt(A, alpha) = det A(alpha) / det A[alpha].
double ppt_det(const Matrix& a, const IndexSet& alpha);

/// ppt(A, alpha)^{-1} = ppt(A, alpha^c); requires A[alpha] and A(alpha) invertible.
Matrix ppt_inverse(const Matrix& a, const IndexSet& alpha);

}  // namespace pivot
