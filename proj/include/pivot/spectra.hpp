#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pivot/matrix.hpp"
#include "pivot/ppt.hpp"

namespace pivot {

/// Real polynomial with coefficients in ascending degree. Trailing zeros are
/// trimmed, so the zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  double operator[](std::size_t k) const noexcept { return k < c_.size() ? c_[k] : 0.0; }

  Complex operator()(Complex z) const noexcept;
  Complex derivative_at(Complex z) const noexcept;
  /// sum_k |c_k| max(1, |z|)^k; the scale against which |p(z)| is judged.
  double magnitude_at(Complex z) const noexcept;

  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<double> c_;
};

struct SpectrumResult {
  std::vector<Complex> eigenvalues;
  double spectral_radius = 0.0;
  /// |p(lambda_i)| / magnitude_at(lambda_i) for each root.
  std::vector<double> residuals;
};

/// det(lambda I - M) by the Faddeev-LeVerrier recurrence.
Polynomial charpoly_direct(const Matrix& m);

/// lambda^{|alpha|} det(A - D(lambda)) assembled from the principal minors of A,
/// where d_i = 1/lambda on alpha and lambda elsewhere. Not normalized.
Polynomial shifted_determinant_polynomial(const Matrix& a, const IndexSet& alpha);

/// Characteristic polynomial of ppt(A, alpha) from the principal minors of A,
/// without forming the transform. Requires A[alpha] invertible.
Polynomial ppt_charpoly(const Matrix& a, const IndexSet& alpha);

/// All complex roots by Aberth-Ehrlich iteration; conjugate pairs are enforced.
/// Throws NonConvergence (carrying the best iterates) past the iteration cap.
SpectrumResult roots(const Polynomial& p);

/// Spectrum of a formed matrix: roots of its characteristic polynomial.
SpectrumResult eigenvalues(const Matrix& m);

/// Finite eigenvalues of the pencil C1 - lambda C2, read off det(lambda C2 - C1)
/// sampled on a circle and interpolated. Requires C2 invertible.
SpectrumResult pencil_eigenvalues(const Factorization& f);

/// |det(A - D)| with d_i = 1/lambda on alpha and lambda elsewhere; lambda != 0.
double diagonal_certificate(const Matrix& a, const IndexSet& alpha, Complex lambda);

/// True iff ppt(A, alpha) is singular, decided from A(alpha) alone.
bool singularity_check(const Matrix& a, const IndexSet& alpha);

/// Greedy minimal-distance matching between two multisets of equal size;
/// returns the largest matched distance (infinity on size mismatch).
double matching_distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace pivot
