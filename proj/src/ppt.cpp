#include "pivot/ppt.hpp"

#include <cmath>
#include <string>

#include "pivot/flops.hpp"

namespace pivot {

namespace {

std::string block_name(const char* prefix, const IndexSet& alpha) {
  return std::string(prefix) + "[" + alpha.to_string() + "]";
}

[[noreturn]] void throw_singular(const std::string& name, const char* what) {
  throw SingularBlock(name, std::string(what) + ": block " + name + " is singular");
}

}  // namespace

Matrix ppt(const Matrix& a, const IndexSet& alpha) {
  detail::require_square(a, "ppt");
  detail::require_ambient(a, alpha, "ppt");
  if (alpha.empty()) return a;

  const std::size_t n = a.rows();
  const std::size_t k = alpha.size();
  const IndexSet rest = alpha.complement();
  std::vector<std::size_t> order(alpha.begin(), alpha.end());
  order.insert(order.end(), rest.begin(), rest.end());
  const std::span<const std::size_t> lead(order.data(), k);
  const std::span<const std::size_t> tail(order.data() + k, n - k);

  const Matrix a11 = detail::gather(a, lead, lead);
  const Matrix a12 = detail::gather(a, lead, tail);
  const Matrix a21 = detail::gather(a, tail, lead);
  const Matrix a22 = detail::gather(a, tail, tail);

  const LuFactorization lu(a11);
  if (lu.singular()) throw_singular(block_name("A", alpha), "ppt");

  const Matrix b11 = lu.inverse();
  const Matrix b12 = -lu.solve(a12);
  const Matrix b21 = a21 * b11;
  const Matrix b22 = a22 + a21 * b12;

  // Scatter P^T (block matrix) P back to the original index positions.
  Matrix out(n, n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) out(lead[i], lead[j]) = b11(i, j);
    for (std::size_t j = 0; j < n - k; ++j) out(lead[i], tail[j]) = b12(i, j);
  }
  for (std::size_t i = 0; i < n - k; ++i) {
    for (std::size_t j = 0; j < k; ++j) out(tail[i], lead[j]) = b21(i, j);
    for (std::size_t j = 0; j < n - k; ++j) out(tail[i], tail[j]) = b22(i, j);
  }
  return out;
}

Matrix ppt_single(const Matrix& a, std::size_t i) {
  detail::require_square(a, "ppt_single");
  const std::size_t n = a.rows();
  if (i >= n) throw InputError("ppt_single: index " + std::to_string(i + 1) + " out of range");
  const double pivot = a(i, i);
  if (std::abs(pivot) < kPivotTolerance * std::max(1.0, std::abs(pivot))) {
    throw_singular(block_name("A", IndexSet(n, {i})), "ppt_single");
  }

  Matrix b(n, n);
  const double r = 1.0 / pivot;
  flops::add(1);
  b(i, i) = r;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    b(i, j) = -a(i, j) * r;
    b(j, i) = a(j, i) * r;
  }
  flops::add(2 * (n - 1));
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const double aji = a(j, i);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      b(j, k) = a(j, k) + aji * b(i, k);
    }
    flops::add(n - 1);
  }
  return b;
}

std::pair<Vector, Vector> exchange_vectors(const Matrix& a, const IndexSet& alpha, std::span<const double> x) {
  detail::require_square(a, "exchange_vectors");
  detail::require_ambient(a, alpha, "exchange_vectors");
  if (x.size() != a.rows()) throw InputError("exchange_vectors: vector length mismatch");
  if (!alpha.empty() && LuFactorization(principal_submatrix(a, alpha)).singular()) {
    throw_singular(block_name("A", alpha), "exchange_vectors");
  }
  const Vector y = a * x;
  Vector u(x.begin(), x.end());
  Vector v = y;
  for (std::size_t i : alpha) {
    u[i] = y[i];
    v[i] = x[i];
  }
  return {std::move(u), std::move(v)};
}

Factorization basic_factorization(const Matrix& a, const IndexSet& alpha) {
  detail::require_square(a, "basic_factorization");
  detail::require_ambient(a, alpha, "basic_factorization");
  if (!alpha.empty() && LuFactorization(principal_submatrix(a, alpha)).singular()) {
    throw_singular(block_name("A", alpha), "basic_factorization");
  }
  const std::size_t n = a.rows();
  Factorization f{Matrix(n, n), Matrix(n, n), std::vector<double>(n, 1.0), std::vector<double>(n, 0.0)};
  for (std::size_t i : alpha) {
    f.t1_diag[i] = 0.0;
    f.t2_diag[i] = 1.0;
  }
  // C1 = T2 + T1 A, C2 = T1 + T2 A
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double eye = i == j ? 1.0 : 0.0;
      f.c1(i, j) = f.t2_diag[i] * eye + f.t1_diag[i] * a(i, j);
      f.c2(i, j) = f.t1_diag[i] * eye + f.t2_diag[i] * a(i, j);
    }
  }
  return f;
}

std::vector<IndexSet> singleton_partition(std::size_t n) {
  std::vector<IndexSet> p;
  p.reserve(n);
  for (std::size_t i = 0; i < n; ++i) p.emplace_back(n, std::vector<std::size_t>{i});
  return p;
}

Matrix sequential_inverse(const Matrix& a, std::span<const IndexSet> partition) {
  detail::require_square(a, "sequential_inverse");
  const std::size_t n = a.rows();
  std::vector<int> seen(n, 0);
  for (const IndexSet& block : partition) {
    detail::require_ambient(a, block, "sequential_inverse");
    if (block.empty()) throw InputError("sequential_inverse: empty block in partition");
    for (std::size_t i : block) {
      if (seen[i]++) {
        throw InputError("sequential_inverse: index " + std::to_string(i + 1) + " appears in more than one block");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) throw InputError("sequential_inverse: index " + std::to_string(i + 1) + " is not covered");
  }

  Matrix current = a;
  for (std::size_t stage = 0; stage < partition.size(); ++stage) {
    const IndexSet& block = partition[stage];
    try {
      current = block.size() == 1 ? ppt_single(current, block[0]) : ppt(current, block);
    } catch (const SingularBlock&) {
      const std::string name = "A_" + std::to_string(stage) + "[" + block.to_string() + "]";
      throw SingularBlock(name, "sequential_inverse: stage " + std::to_string(stage + 1) + " block " + name +
                                    " is singular");
    }
  }
  return current;
}

FlopReport flop_estimate(std::size_t n) {
  if (n == 0) throw InputError("flop_estimate: order must be positive");
  const std::uint64_t m = n;
  FlopReport r;
  r.predicted_ppt_inversion = m * (m + 1) * (2 * m + 1) / 6 - 1;
  r.predicted_lu_inversion = (5 * m * m * m + 5) / 6;
  return r;
}

std::pair<Matrix, FlopReport> measured_singleton_inversion(const Matrix& a) {
  FlopReport report = flop_estimate(a.order());
  if (!flops::instrumented()) throw InputError("flop measurement requires an instrumented build");
  flops::Counter counter;
  const std::vector<IndexSet> parts = singleton_partition(a.rows());
  Matrix inv = sequential_inverse(a, parts);
  report.measured = counter.count();
  return {std::move(inv), report};
}

double combinatorial_residual(const Matrix& a, const IndexSet& alpha) {
  const Matrix b = ppt(a, alpha);
  const Factorization f = basic_factorization(a, alpha);
  const std::size_t n = a.rows();

  Matrix left(n, 2 * n);  // (-B I)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) left(i, j) = -b(i, j);
    left(i, n + i) = 1.0;
  }
  Matrix perm(2 * n, 2 * n);  // (T1 T2; T2 T1)
  for (std::size_t i = 0; i < n; ++i) {
    perm(i, i) = f.t1_diag[i];
    perm(i, n + i) = f.t2_diag[i];
    perm(n + i, i) = f.t2_diag[i];
    perm(n + i, n + i) = f.t1_diag[i];
  }
  Matrix stacked(2 * n, n);  // (I; A)
  for (std::size_t i = 0; i < n; ++i) {
    stacked(i, i) = 1.0;
    for (std::size_t j = 0; j < n; ++j) stacked(n + i, j) = a(i, j);
  }
  return norm_fro(left * perm * stacked);
}

double ppt_det(const Matrix& a, const IndexSet& alpha) {
  detail::require_square(a, "ppt_det");
  detail::require_ambient(a, alpha, "ppt_det");
  const Matrix lead = principal_submatrix(a, alpha);
  if (!alpha.empty()) {
    const LuFactorization lu(lead);
    if (lu.singular()) throw_singular(block_name("A", alpha), "ppt_det");
  }
  return lu_determinant(principal_submatrix(a, alpha.complement())) / lu_determinant(lead);
}

Matrix ppt_inverse(const Matrix& a, const IndexSet& alpha) {
  detail::require_square(a, "ppt_inverse");
  detail::require_ambient(a, alpha, "ppt_inverse");
  const IndexSet rest = alpha.complement();
  if (!alpha.empty() && LuFactorization(principal_submatrix(a, alpha)).singular()) {
    throw_singular(block_name("A", alpha), "ppt_inverse");
  }
  if (!rest.empty() && LuFactorization(principal_submatrix(a, rest)).singular()) {
    const std::string name = "A(" + alpha.to_string() + ")";
    throw SingularBlock(name, "ppt_inverse: block " + name + " is singular");
  }
  return ppt(a, rest);
}

}  // namespace pivot
