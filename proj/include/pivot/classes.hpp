#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pivot/matrix.hpp"

namespace pivot {

/// diag(s_1, ..., s_n) with every s_i = +1 or -1.
class SignatureMatrix {
 public:
  explicit SignatureMatrix(std::vector<int> signs);
  /// Parses a string of '+' and '-' characters, e.g. "++--".
  static SignatureMatrix parse(std::string_view text);

  std::size_t order() const noexcept { return s_.size(); }
  const std::vector<int>& signs() const noexcept { return s_; }
  /// Indices carrying +1.
  IndexSet plus_set() const;
  Matrix matrix() const;

 private:
  std::vector<int> s_;
};

/// Verdict of a class test plus a witness where one exists: the failing
/// subset for the P-test, a positive vector x with Ax > 0 for the S-test.
struct ClassCertificate {
  bool verdict = false;
  std::optional<IndexSet> subset;
  std::optional<Vector> vector;
};

/// Tolerance above which det A[beta] counts as positive: 1e-10 times the
/// Hadamard bound, the product of the Euclidean row norms of A[beta].
double p_minor_tolerance(const Matrix& a, std::span<const std::size_t> beta);

/// All principal minors positive. On failure the witness is the lexicographically
/// first subset with a nonpositive minor. Throws CapacityError above order 20.
ClassCertificate is_p_matrix(const Matrix& a);

/// Strictly row diagonally dominant with positive diagonal, hence a P-matrix.
Matrix random_p_matrix(std::size_t n, std::uint64_t seed);

/// Off-diagonal entries all nonpositive.
bool is_z_matrix(const Matrix& a);

/// Decides whether Ax > 0 for some x > 0 by phase-one simplex on
/// {x >= 1, Ax >= 1}. Throws Indeterminate at the pivot cap.
ClassCertificate is_semipositive(const Matrix& a);

/// ppt(R, alpha(S)), which satisfies Q^T S Q = S when R is orthogonal.
/// Throws NotOrthogonal or SingularBlock when the hypotheses fail.
Matrix make_s_orthogonal(const SignatureMatrix& s, const Matrix& r);

/// ||Q^T S Q - S||_F
double s_orthogonality_residual(const SignatureMatrix& s, const Matrix& q);

/// Orthogonal factor of a seeded Gaussian matrix, normalized so R has a positive diagonal.
Matrix random_orthogonal(std::size_t n, std::uint64_t seed);

}  // namespace pivot
