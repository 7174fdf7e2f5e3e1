#include "pivot/classes.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "pivot/ppt.hpp"

namespace pivot {

// ---------------------------------------------------------------------------
// SignatureMatrix

SignatureMatrix::SignatureMatrix(std::vector<int> signs) : s_(std::move(signs)) {
  if (s_.empty()) throw InputError("signature: empty sign list");
  for (int v : s_) {
    if (v != 1 && v != -1) throw InputError("signature: entries must be +1 or -1");
  }
}

SignatureMatrix SignatureMatrix::parse(std::string_view text) {
  std::vector<int> s;
  s.reserve(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] == '+') {
      s.push_back(1);
    } else if (text[k] == '-') {
      s.push_back(-1);
    } else {
      throw InputError("signature: unexpected character '" + std::string(1, text[k]) + "' at position " +
                       std::to_string(k + 1));
    }
  }
  return SignatureMatrix(std::move(s));
}

IndexSet SignatureMatrix::plus_set() const {
  std::vector<std::size_t> plus;
  for (std::size_t i = 0; i < s_.size(); ++i)
    if (s_[i] == 1) plus.push_back(i);
  return IndexSet(s_.size(), std::move(plus));
}

Matrix SignatureMatrix::matrix() const {
  std::vector<double> d(s_.begin(), s_.end());
  return Matrix::diagonal(d);
}

// ---------------------------------------------------------------------------
// P-matrices

double p_minor_tolerance(const Matrix& a, std::span<const std::size_t> beta) {
  double bound = 1.0;
  for (std::size_t i : beta) {
    double row = 0.0;
    for (std::size_t j : beta) row += a(i, j) * a(i, j);
    bound *= std::sqrt(row);
  }
  return 1e-10 * bound;
}

ClassCertificate is_p_matrix(const Matrix& a) {
  detail::require_square(a, "is_p_matrix");
  const std::size_t n = a.rows();
  const PrincipalMinors minors = principal_minors(a, n);

  // Depth-first growth of increasing index lists visits subsets in lexicographic order.
  std::vector<std::size_t> current;
  std::optional<IndexSet> failing;
  std::function<bool(std::uint64_t, std::size_t)> visit = [&](std::uint64_t mask, std::size_t start) {
    for (std::size_t i = start; i < n; ++i) {
      const std::uint64_t m = mask | (std::uint64_t{1} << i);
      current.push_back(i);
      if (minors[m] <= p_minor_tolerance(a, current)) {
        failing = IndexSet(n, current);
        return true;
      }
      if (visit(m, i + 1)) return true;
      current.pop_back();
    }
    return false;
  };
  visit(0, 0);

  ClassCertificate cert;
  cert.verdict = !failing.has_value();
  cert.subset = std::move(failing);
  return cert;
}

Matrix random_p_matrix(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InputError("random_p_matrix: order must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  std::uniform_real_distribution<double> margin(0.1, 1.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      m(i, j) = off(rng);
      row += std::abs(m(i, j));
    }
    m(i, i) = row + margin(rng);
  }
  return m;
}

bool is_z_matrix(const Matrix& a) {
  detail::require_square(a, "is_z_matrix");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) > 0.0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Semipositivity: phase-one simplex with Bland's rule

namespace {

class PhaseOne {
 public:
  // Rows: sum_j A_ij z_j - s_i = 1 - (A 1)_i with z, s >= 0, so x = 1 + z.
  explicit PhaseOne(const Matrix& a) : m_(a.rows()) {
    const std::size_t n = a.rows();
    std::vector<double> rhs(n);
    std::vector<bool> needs_artificial(n);
    std::size_t artificials = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += a(i, j);
      rhs[i] = 1.0 - row;
      needs_artificial[i] = rhs[i] >= 0.0;
      if (needs_artificial[i]) ++artificials;
    }
    cols_ = 2 * n + artificials;
    tab_.assign(m_ * (cols_ + 1), 0.0);
    cost_.assign(cols_, 0.0);
    basis_.assign(m_, 0);
    std::size_t next_art = 2 * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double flip = needs_artificial[i] ? 1.0 : -1.0;
      for (std::size_t j = 0; j < n; ++j) at(i, j) = flip * a(i, j);
      at(i, n + i) = -flip;
      rhs_at(i) = flip * rhs[i];
      if (needs_artificial[i]) {
        at(i, next_art) = 1.0;
        cost_[next_art] = 1.0;
        basis_[i] = next_art++;
      } else {
        basis_[i] = n + i;  // surplus enters with coefficient +1 after the flip
      }
    }
  }

  // Returns the phase-one optimum; throws Indeterminate at the pivot cap.
  double run() {
    const std::size_t cap = 50 * (m_ + cols_);
    for (std::size_t iter = 0; iter < cap; ++iter) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        double reduced = cost_[j];
        for (std::size_t i = 0; i < m_; ++i) reduced -= cost_[basis_[i]] * at(i, j);
        if (reduced < -1e-12) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return objective();

      std::size_t leave = m_;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double coef = at(i, enter);
        if (coef <= 1e-12) continue;
        const double ratio = rhs_at(i) / coef;
        if (leave == m_ || ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) throw Indeterminate("is_semipositive: phase-one problem reported unbounded");
      pivot_on(leave, enter);
    }
    throw Indeterminate("is_semipositive: simplex pivot cap reached");
  }

  Vector primal(std::size_t n) const {
    Vector z(n, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n) z[basis_[i]] = rhs_at(i);
    return z;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return tab_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return tab_[i * (cols_ + 1) + j]; }
  double& rhs_at(std::size_t i) { return tab_[i * (cols_ + 1) + cols_]; }
  double rhs_at(std::size_t i) const { return tab_[i * (cols_ + 1) + cols_]; }

  double objective() const {
    double v = 0.0;
    for (std::size_t i = 0; i < m_; ++i) v += cost_[basis_[i]] * rhs_at(i);
    return v;
  }

  void pivot_on(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) tab_[r * (cols_ + 1) + j] /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) tab_[i * (cols_ + 1) + j] -= f * tab_[r * (cols_ + 1) + j];
    }
    basis_[r] = c;
  }

  std::size_t m_;
  std::size_t cols_ = 0;
  std::vector<double> tab_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace

ClassCertificate is_semipositive(const Matrix& a) {
  detail::require_square(a, "is_semipositive");
  const std::size_t n = a.rows();
  ClassCertificate cert;
  if (n == 0) return cert;
  PhaseOne lp(a);
  const double infeasibility = lp.run();
  if (infeasibility > 1e-9 * (1.0 + norm_inf(a))) return cert;

  Vector x = lp.primal(n);
  for (double& v : x) v += 1.0;
  const Vector ax = a * x;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(ax[i] > 0.0)) {
      throw Indeterminate("is_semipositive: feasible basis does not certify Ax > 0");
    }
  }
  cert.verdict = true;
  cert.vector = std::move(x);
  return cert;
}

// ---------------------------------------------------------------------------
// S-orthogonal matrices

Matrix make_s_orthogonal(const SignatureMatrix& s, const Matrix& r) {
  detail::require_square(r, "make_s_orthogonal");
  const std::size_t n = r.rows();
  if (s.order() != n) throw InputError("make_s_orthogonal: signature and matrix orders differ");
  const double defect = norm_fro(r.transposed() * r - Matrix::identity(n));
  if (defect > 1e-10 * static_cast<double>(n)) {
    throw NotOrthogonal("make_s_orthogonal: ||R^T R - I|| = " + std::to_string(defect) + " exceeds tolerance");
  }
  return ppt(r, s.plus_set());
}

double s_orthogonality_residual(const SignatureMatrix& s, const Matrix& q) {
  const Matrix sm = s.matrix();
  return norm_fro(q.transposed() * sm * q - sm);
}

Matrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InputError("random_orthogonal: order must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = gauss(rng);

  // Modified Gram-Schmidt, run twice per column; the diagonal of R is the
  // positive column norm, which fixes the signs of Q.
  Matrix q = g;
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += q(i, k) * q(i, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

}  // namespace pivot
