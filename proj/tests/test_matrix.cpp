#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pivot/matrix.hpp"

using namespace pivot;
using namespace testing;

TEST_CASE("matrix rejects non-finite entries and bad shapes") {
  CHECK_THROWS_AS(Matrix(2, 2, {1, 2, 3}), InputError);
  CHECK_THROWS_AS(Matrix(1, 1, {NAN}), InputError);
  CHECK_THROWS_AS(Matrix(1, 1, {INFINITY}), InputError);
  CHECK_THROWS_AS(Matrix(2, 3).order(), InputError);
  CHECK(Matrix::identity(3).order() == 3);
}

TEST_CASE("matrix arithmetic") {
  const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  const Matrix b = Matrix::from_rows({{0, 1}, {1, 0}});
  CHECK(a * b == Matrix::from_rows({{2, 1}, {4, 3}}));
  CHECK(a + b == Matrix::from_rows({{1, 3}, {4, 4}}));
  CHECK(a - a == Matrix(2, 2));
  CHECK(2.0 * a == Matrix::from_rows({{2, 4}, {6, 8}}));
  CHECK(a.transposed() == Matrix::from_rows({{1, 3}, {2, 4}}));
  const Vector x{1, 1};
  CHECK(a * x == Vector{3, 7});
  CHECK(norm_inf(a) == 7);
  CHECK(norm_fro(Matrix::identity(4)) == doctest::Approx(2.0));
}

TEST_CASE("index sets are sorted, validated and print 1-based") {
  const IndexSet s(5, {3, 0});
  CHECK(s.size() == 2);
  CHECK(s[0] == 0);
  CHECK(s[1] == 3);
  CHECK(s.to_string() == "{1,4}");
  CHECK(s.complement().to_string() == "{2,3,5}");
  CHECK(s.mask() == 0b1001);
  CHECK(IndexSet::from_mask(5, 0b1001) == s);
  CHECK(IndexSet::none(3).to_string() == "{}");
  CHECK(IndexSet::all(3).complement().empty());
  CHECK_THROWS_AS(IndexSet(3, {1, 1}), InputError);
  CHECK_THROWS_AS(IndexSet(3, {3}), InputError);
  const std::vector<std::size_t> zero{0};
  CHECK_THROWS_AS(IndexSet::from_one_based(3, zero), InputError);
  CHECK(set1(3, {1, 2}) < set1(3, {1, 3}));
  CHECK(set1(3, {1}) < set1(3, {1, 2}));
}

TEST_CASE("submatrix selections") {
  const Matrix a = example3();
  CHECK(submatrix(a, IndexSet::all(3), IndexSet::all(3)) == a);
  CHECK(principal_submatrix(a, set1(3, {1, 3})) == Matrix::from_rows({{1, 1}, {2, 1}}));
  CHECK(submatrix(a, set1(3, {2}), set1(3, {1, 3})) == Matrix::from_rows({{1, 0}}));
  CHECK(principal_submatrix(a, IndexSet::none(3)).empty());
}

TEST_CASE("lu determinant and inverse") {
  CHECK(lu_determinant(example3()) == doctest::Approx(5.0));
  CHECK(lu_determinant(Matrix()) == 1.0);
  CHECK(max_diff(lu_inverse(example3()), example3_inverse()) < 1e-12);
  CHECK_THROWS_AS(lu_inverse(Matrix::from_rows({{1, 2}, {1, 2}})), SingularBlock);
  CHECK(LuFactorization(Matrix::from_rows({{1, 2}, {2, 4 + 1e-15}})).singular());
  CHECK(lu_determinant(Matrix::from_rows({{0, 1}, {1, 0}})) == doctest::Approx(-1.0));
}

TEST_CASE("principal minor table of the 3x3 example") {
  const PrincipalMinors m = principal_minors(example3(), 3);
  const double expected[8] = {1, 1, 1, -1, 1, -1, 1, 5};  // masks 0..7: {}, {1}, {2}, {1,2}, {3}, {1,3}, {2,3}, {1,2,3}
  for (std::uint64_t mask = 0; mask < 8; ++mask) CHECK(m[mask] == doctest::Approx(expected[mask]));
  CHECK(m.at(set1(3, {1, 3})) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(principal_minors(Matrix::identity(21), 1), CapacityError);
}

TEST_CASE("schur complements of the examples") {
  CHECK(max_diff(schur_complement(example3(), set1(3, {1, 3})), Matrix::from_rows({{-5}})) < 1e-12);
  CHECK(max_diff(schur_complement(example4_jacobi(), set1(3, {1, 2})), Matrix::from_rows({{-11.0 / 12}})) < 1e-12);
  CHECK_THROWS_AS(schur_complement(Matrix::from_rows({{0, 1}, {1, 0}}), set1(2, {1})), SingularBlock);
}

TEST_CASE("block inverse of the example and of random matrices") {
  CHECK(max_diff(block_inverse(example3(), set1(3, {1, 3})), example3_inverse()) < 1e-12);
  CHECK(max_diff(block_inverse(Matrix::identity(4), set1(4, {2, 4})), Matrix::identity(4)) == 0.0);

  std::mt19937_64 rng(11);
  int trials = 0;
  while (trials < 50) {
    const Matrix a = random_matrix(6, rng);
    const IndexSet alpha = set1(6, {1, 2, 3});
    if (!block_ok(a, alpha) || !block_ok(a, alpha.complement()) || std::abs(lu_determinant(a)) < 0.05) continue;
    ++trials;
    const Matrix inv = lu_inverse(a);
    CHECK(max_diff(block_inverse(a, alpha), inv) <= 1e-9 * std::max(1.0, inv.max_abs()));
  }
}

TEST_CASE("property: det of the schur complement") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const Matrix a = random_matrix(n, rng);
    const IndexSet alpha = random_subset(n, rng);
    if (alpha.empty() || alpha.size() == n || !block_ok(a, alpha)) continue;
    const double expect = lu_determinant(a) / lu_determinant(principal_submatrix(a, alpha));
    CHECK(std::abs(lu_determinant(schur_complement(a, alpha)) - expect) <= 1e-9 * (1 + std::abs(expect)));
  }
}

TEST_CASE("property: det_plus_diagonal against LU") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const Matrix a = random_matrix(n, rng);
    Vector d(n);
    for (double& v : d) v = u(rng);
    const double oracle = lu_determinant(a + Matrix::diagonal(d));
    const double got = det_plus_diagonal(a, d);
    CHECK(std::abs(got - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));

    std::vector<Complex> dc(n);
    std::vector<Complex> entries(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      dc[i] = Complex(u(rng), u(rng));
      for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = a(i, j) + (i == j ? dc[i] : Complex(0));
    }
    const Complex c_oracle = complex_determinant(n, entries);
    CHECK(std::abs(det_plus_diagonal(a, dc) - c_oracle) <= 1e-10 * std::max(1.0, std::abs(c_oracle)));
  }
}

TEST_CASE("property: full principal minor equals the determinant") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const Matrix a = random_matrix(n, rng);
    const double d = lu_determinant(a);
    CHECK(std::abs(principal_minors(a, n)[(std::uint64_t{1} << n) - 1] - d) <= 1e-10 * std::max(1.0, std::abs(d)));
  }
}
