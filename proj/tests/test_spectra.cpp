#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "pivot/ppt.hpp"
#include "pivot/spectra.hpp"

using namespace pivot;
using namespace testing;

namespace {

bool contains_near(const std::vector<Complex>& zs, Complex target, double tol) {
  return std::any_of(zs.begin(), zs.end(), [&](Complex z) { return std::abs(z - target) <= tol; });
}

void check_coeffs(const Polynomial& p, const std::vector<double>& expect, double tol) {
  REQUIRE(p.degree() == static_cast<int>(expect.size()) - 1);
  for (std::size_t k = 0; k < expect.size(); ++k) CHECK(std::abs(p[k] - expect[k]) <= tol);
}

// S diag(d) S^{-1} for a random well-conditioned S.
Matrix with_eigenvalues(const Vector& d, std::mt19937_64& rng) {
  const std::size_t n = d.size();
  Matrix s = random_matrix(n, rng);
  for (std::size_t i = 0; i < n; ++i) s(i, i) += 2.0;
  return s * Matrix::diagonal(d) * lu_inverse(s);
}

}  // namespace

TEST_CASE("polynomial basics") {
  const Polynomial p({6, -5, 1, 0, 0});
  CHECK(p.degree() == 2);
  CHECK(p(Complex(2)) == Complex(0));
  CHECK(p.derivative_at(Complex(0)) == Complex(-5));
  CHECK(Polynomial({0, 0}).is_zero());
  CHECK(p.magnitude_at(Complex(0.5)) == doctest::Approx(12));
  CHECK(p.magnitude_at(Complex(2)) == doctest::Approx(6 + 10 + 4));
}

TEST_CASE("direct characteristic polynomials") {
  check_coeffs(charpoly_direct(Matrix::diagonal(Vector{2, 3})), {6, -5, 1}, 1e-14);
  check_coeffs(charpoly_direct(example4_jacobi()), {-33.0 / 16, -29.0 / 8, 0, 1}, 1e-14);
  check_coeffs(charpoly_direct(example4_transform()), {0, 1.0 / 6, 11.0 / 12, 1}, 1e-14);
}

TEST_CASE("characteristic polynomial of a transform from the minors of A") {
  const Matrix t = example4_jacobi();
  check_coeffs(ppt_charpoly(t, set1(3, {1, 2})), {0, 1.0 / 6, 11.0 / 12, 1}, 1e-14);
  check_coeffs(ppt_charpoly(t, IndexSet::none(3)), charpoly_direct(t).coeffs(), 1e-14);
  const Polynomial via_b = charpoly_direct(example3_transform());
  check_coeffs(ppt_charpoly(example3(), set1(3, {1, 3})), via_b.coeffs(), 1e-12);
  CHECK_THROWS_AS(ppt_charpoly(Matrix::from_rows({{0, 1}, {1, 0}}), set1(2, {1})), SingularBlock);
}

TEST_CASE("jacobi example spectrum matches the printed values") {
  const SpectrumResult r = roots(charpoly_direct(example4_jacobi()));
  REQUIRE(r.eigenvalues.size() == 3);
  for (double want : {2.1419, -0.6419, -1.5}) CHECK(contains_near(r.eigenvalues, want, 5e-4));
  CHECK(r.spectral_radius == doctest::Approx(2.1419).epsilon(1e-4));
}

TEST_CASE("transformed jacobi spectrum is {0,-1/4,-2/3}, printed with +2/3") {
  const SpectrumResult r = roots(ppt_charpoly(example4_jacobi(), set1(3, {1, 2})));
  REQUIRE(r.eigenvalues.size() == 3);
  for (double want : {0.0, -0.25, -2.0 / 3}) CHECK(contains_near(r.eigenvalues, want, 1e-9));
  CHECK_FALSE(contains_near(r.eigenvalues, 2.0 / 3, 1e-3));
  CHECK(std::abs(r.spectral_radius - 2.0 / 3) <= 1e-9);
  for (double res : r.residuals) CHECK(res <= 1e-10);
}

TEST_CASE("roots of simple polynomials") {
  const SpectrumResult r = roots(Polynomial({6, -5, 1}));
  CHECK(matching_distance(r.eigenvalues, std::vector<Complex>{2, 3}) <= 1e-12);

  const SpectrumResult c = roots(Polynomial({1, 0, 1}));
  CHECK(matching_distance(c.eigenvalues, std::vector<Complex>{{0, 1}, {0, -1}}) <= 1e-12);
  CHECK(c.eigenvalues[0] == std::conj(c.eigenvalues[1]));

  const SpectrumResult triple = roots(Polynomial({-1, 3, -3, 1}));  // (x-1)^3
  for (Complex z : triple.eigenvalues) CHECK(std::abs(z - 1.0) <= 1e-4);

  CHECK_THROWS_AS(roots(Polynomial({3})), InputError);
}

TEST_CASE("pencil route on the examples") {
  const SpectrumResult t = pencil_eigenvalues(basic_factorization(example4_jacobi(), set1(3, {1, 2})));
  CHECK(matching_distance(t.eigenvalues, std::vector<Complex>{0, -0.25, -2.0 / 3}) <= 1e-8);

  const SpectrumResult e3 = pencil_eigenvalues(basic_factorization(example3(), set1(3, {1, 3})));
  CHECK(matching_distance(e3.eigenvalues, eigenvalues(example3_transform()).eigenvalues) <= 1e-8);

  const Matrix a = example4_jacobi();
  CHECK(matching_distance(pencil_eigenvalues(basic_factorization(a, IndexSet::none(3))).eigenvalues,
                          eigenvalues(a).eigenvalues) <= 1e-8);
}

TEST_CASE("diagonal certificate") {
  const Matrix t = example4_jacobi();
  CHECK(diagonal_certificate(t, set1(3, {1, 2}), Complex(-0.25)) <= 1e-10);
  CHECK(diagonal_certificate(t, set1(3, {1, 2}), Complex(-2.0 / 3)) <= 1e-10);
  CHECK(diagonal_certificate(t, set1(3, {1, 2}), Complex(0.5)) > 1e-3);
  CHECK_THROWS_AS(diagonal_certificate(t, set1(3, {1}), Complex(0)), InputError);

  const Matrix d = Matrix::diagonal(Vector{2, 3});
  for (std::uint64_t mask = 0; mask < 4; ++mask) CHECK(diagonal_certificate(d, IndexSet::from_mask(2, mask), 1.0) > 0.1);

  const Matrix one = Matrix::from_rows({{4}});
  CHECK(diagonal_certificate(one, set1(1, {1}), Complex(0.25)) <= 1e-15);
}

TEST_CASE("singularity check") {
  CHECK(singularity_check(example4_jacobi(), set1(3, {1, 2})));
  CHECK_FALSE(singularity_check(Matrix::identity(4), set1(4, {2, 3})));
  CHECK_FALSE(singularity_check(Matrix::identity(4), IndexSet::all(4)));
  CHECK_THROWS_AS(singularity_check(Matrix::from_rows({{0, 1}, {1, 0}}), set1(2, {1})), SingularBlock);

  std::mt19937_64 rng(31);
  int done = 0;
  while (done < 20) {
    Matrix a = random_matrix(5, rng);
    const IndexSet alpha = set1(5, {1, 4});
    if (!block_ok(a, alpha)) continue;
    ++done;
    // Make rows 3 and 5 of A(alpha) = A[{2,3,5}] equal.
    for (std::size_t j : {1u, 2u, 4u}) a(4, j) = a(2, j);
    CHECK(singularity_check(a, alpha));
    CHECK(std::abs(lu_determinant(ppt(a, alpha))) <= 1e-10);
  }
}

TEST_CASE("matching distance") {
  const std::vector<Complex> a{1, 2, 3};
  const std::vector<Complex> b{3.1, 1, 2};
  CHECK(matching_distance(a, b) == doctest::Approx(0.1));
  CHECK(std::isinf(matching_distance(a, std::vector<Complex>{1})));
}

TEST_CASE("property: shifted determinant sum has the expected extreme terms") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const Matrix a = random_matrix(n, rng);
    const IndexSet alpha = random_subset(n, rng);
    const Polynomial s = shifted_determinant_polynomial(a, alpha);
    const double lead = (alpha.complement().size() % 2 ? -1.0 : 1.0) * lu_determinant(principal_submatrix(a, alpha));
    const double constant =
        (alpha.size() % 2 ? -1.0 : 1.0) * lu_determinant(principal_submatrix(a, alpha.complement()));
    CHECK(std::abs(s[n] - lead) <= 1e-12);
    CHECK(std::abs(s[0] - constant) <= 1e-12);
  }
}

TEST_CASE("property: two-route characteristic polynomial and three-route spectra") {
  std::mt19937_64 rng(41);
  int done = 0;
  while (done < 100) {
    const std::size_t n = 1 + done % 8;
    const Matrix a = random_matrix(n, rng);
    const IndexSet alpha = random_subset(n, rng);
    if (!block_ok(a, alpha, 0.1)) continue;
    ++done;
    const Matrix b = ppt(a, alpha);
    const Polynomial g = ppt_charpoly(a, alpha);
    const Polynomial direct = charpoly_direct(b);
    REQUIRE(g.degree() == static_cast<int>(n));
    for (std::size_t k = 0; k <= n; ++k) CHECK(std::abs(g[k] - direct[k]) <= 1e-8 * std::max(1.0, std::abs(direct[k])));

    const SpectrumResult r1 = roots(g);
    const SpectrumResult r2 = eigenvalues(b);
    const SpectrumResult r3 = pencil_eigenvalues(basic_factorization(a, alpha));
    const double scale = std::max(1.0, r2.spectral_radius);
    CHECK(matching_distance(r1.eigenvalues, r2.eigenvalues) <= 1e-7 * scale);
    CHECK(matching_distance(r3.eigenvalues, r2.eigenvalues) <= 1e-7 * scale);

    for (Complex z : r1.eigenvalues) {
      if (z.imag() != 0.0) CHECK(contains_near(r1.eigenvalues, std::conj(z), 0.0));
      if (std::abs(z) > 1e-6) {
        const double bound = 1e-8 * std::pow(1.0 + norm_inf(a), static_cast<double>(n));
        CHECK(diagonal_certificate(a, alpha, z) <= bound);
      }
    }
  }
}

TEST_CASE("property: certificate stays away from zero off the spectrum") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-3, 3);
  int done = 0;
  while (done < 100) {
    const std::size_t n = 1 + done % 6;
    const Matrix a = random_matrix(n, rng);
    const IndexSet alpha = random_subset(n, rng);
    if (!block_ok(a, alpha, 0.1)) continue;
    const Complex lambda(u(rng), u(rng));
    const std::vector<Complex> spec = roots(ppt_charpoly(a, alpha)).eigenvalues;
    if (std::abs(lambda) < 0.1 || contains_near(spec, lambda, 0.1)) continue;
    ++done;
    // |det(A - D)| = prod |lambda - mu_i| |det A[alpha]| / |lambda|^|alpha|
    const double floor = 0.5 * std::pow(0.1, static_cast<double>(n)) *
                         std::abs(lu_determinant(principal_submatrix(a, alpha))) /
                         std::pow(std::abs(lambda), static_cast<double>(alpha.size()));
    CHECK(diagonal_certificate(a, alpha, lambda) >= floor);
  }
}

TEST_CASE("property: eigenvalue one and minus one survive every transform") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const double pinned = trial % 2 ? 1.0 : -1.0;
    Vector d(n);
    d[0] = pinned;
    for (std::size_t i = 1; i < n; ++i) {
      do d[i] = u(rng);
      while (std::abs(std::abs(d[i]) - 1.0) < 0.2);
    }
    const Matrix a = with_eigenvalues(d, rng);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const IndexSet alpha = IndexSet::from_mask(n, mask);
      if (!block_ok(a, alpha, 0.1)) continue;
      CHECK(contains_near(roots(ppt_charpoly(a, alpha)).eigenvalues, pinned, 1e-7));
    }
  }
}

TEST_CASE("distance from one is not preserved: pinned 2x2 counterexample") {
  // sigma(A) = 3/4 +- sqrt(2)/4 keeps 0.10 away from +-1, yet ppt(A,{1}) has an eigenvalue near 1.0321.
  const Matrix a = Matrix::from_rows({{-0.25, -0.5}, {1.75, 1.75}});
  const auto spec = eigenvalues(a).eigenvalues;
  CHECK_FALSE(contains_near(spec, 1.0, 0.1));
  CHECK_FALSE(contains_near(spec, -1.0, 0.1));
  const Matrix b = ppt(a, set1(2, {1}));
  CHECK(max_diff(b, Matrix::from_rows({{-4, -2}, {-7, -1.75}})) <= 1e-15);
  const auto t = roots(ppt_charpoly(a, set1(2, {1}))).eigenvalues;
  CHECK(contains_near(t, (-5.75 + std::sqrt(5.75 * 5.75 + 28)) / 2, 1e-12));
  CHECK(contains_near(t, 1.0, 0.05));
}

TEST_CASE("property: distance products to one and minus one") {
  // prod |s - mu_i| over sigma(ppt(A, alpha)) equals |det(A - sI)| / |det A[alpha]| for s = +-1.
  std::mt19937_64 rng(53);
  int done = 0;
  while (done < 100) {
    const std::size_t n = 2 + done % 7;
    const Matrix a = random_matrix(n, rng);
    const IndexSet alpha = random_subset(n, rng);
    if (!block_ok(a, alpha, 0.1)) continue;
    ++done;
    const auto t = roots(ppt_charpoly(a, alpha)).eigenvalues;
    const double lead = std::abs(lu_determinant(principal_submatrix(a, alpha)));
    for (double s : {1.0, -1.0}) {
      double prod = 1.0;
      for (Complex z : t) prod *= std::abs(s - z);
      const double want = std::abs(lu_determinant(a - s * Matrix::identity(n))) / lead;
      CHECK(std::abs(prod - want) <= 1e-8 * std::max(1.0, want));
    }
  }
}
