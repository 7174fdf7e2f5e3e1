#include "pivot/spectra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace pivot {

namespace {

constexpr int kAberthMaxIterations = 500;
constexpr double kAberthStep = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double backward_error(const Polynomial& p, Complex z) {
  const double scale = p.magnitude_at(z);
  return scale == 0.0 ? 0.0 : std::abs(p(z)) / scale;
}

// Snap near-real roots onto the axis and replace each remaining upper/lower
// pair by an exact conjugate pair.
void enforce_conjugate_pairs(std::vector<Complex>& z) {
  std::vector<std::size_t> upper;
  std::vector<std::size_t> lower;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double im = z[i].imag();
    if (std::abs(im) <= 1e-10 * std::max(1.0, std::abs(z[i]))) {
      z[i] = {z[i].real(), 0.0};
    } else if (im > 0) {
      upper.push_back(i);
    } else {
      lower.push_back(i);
    }
  }
  std::vector<bool> used(lower.size(), false);
  std::vector<bool> paired(upper.size(), false);
  for (std::size_t round = 0; round < std::min(upper.size(), lower.size()); ++round) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bu = 0;
    std::size_t bl = 0;
    for (std::size_t u = 0; u < upper.size(); ++u) {
      if (paired[u]) continue;
      for (std::size_t l = 0; l < lower.size(); ++l) {
        if (used[l]) continue;
        const double d = std::abs(z[upper[u]] - std::conj(z[lower[l]]));
        if (d < best) {
          best = d;
          bu = u;
          bl = l;
        }
      }
    }
    paired[bu] = true;
    used[bl] = true;
    const Complex mid = 0.5 * (z[upper[bu]] + std::conj(z[lower[bl]]));
    z[upper[bu]] = mid;
    z[lower[bl]] = std::conj(mid);
  }
  // An unmatched leftover can only be a near-real member of a split cluster.
  for (std::size_t u = 0; u < upper.size(); ++u)
    if (!paired[u]) z[upper[u]] = {z[upper[u]].real(), 0.0};
  for (std::size_t l = 0; l < lower.size(); ++l)
    if (!used[l]) z[lower[l]] = {z[lower[l]].real(), 0.0};
}

SpectrumResult finish(const Polynomial& p, std::vector<Complex> z) {
  enforce_conjugate_pairs(z);
  std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  SpectrumResult r;
  r.residuals.reserve(z.size());
  for (const Complex& v : z) {
    r.spectral_radius = std::max(r.spectral_radius, std::abs(v));
    r.residuals.push_back(backward_error(p, v));
  }
  r.eigenvalues = std::move(z);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

Complex Polynomial::operator()(Complex z) const noexcept {
  Complex acc = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
  return acc;
}

Complex Polynomial::derivative_at(Complex z) const noexcept {
  Complex acc = 0.0;
  for (std::size_t k = c_.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c_[k];
  return acc;
}

double Polynomial::magnitude_at(Complex z) const noexcept {
  const double r = std::max(1.0, std::abs(z));
  double acc = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * r + std::abs(c_[k]);
  return acc;
}

// ---------------------------------------------------------------------------
// Characteristic polynomials

Polynomial charpoly_direct(const Matrix& m) {
  detail::require_square(m, "charpoly_direct");
  const std::size_t n = m.rows();
  if (n == 0) throw InputError("charpoly_direct: empty matrix");
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  Matrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    const Matrix am = m * next;
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / static_cast<double>(k);
    mk = std::move(next);
  }
  return Polynomial(std::move(c));
}

Polynomial shifted_determinant_polynomial(const Matrix& a, const IndexSet& alpha) {
  detail::require_square(a, "shifted_determinant_polynomial");
  detail::require_ambient(a, alpha, "shifted_determinant_polynomial");
  const std::size_t n = a.rows();
  const PrincipalMinors minors = principal_minors(a, n);
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const std::uint64_t am = alpha.mask();
  const int k = static_cast<int>(alpha.size());

  std::vector<double> acc(n + 1, 0.0);
  for (std::uint64_t beta = 0; beta <= full; ++beta) {
    const std::uint64_t bc = full & ~beta;
    const int exponent = k + std::popcount(bc & ~am & full) - std::popcount(bc & am);
    const double sign = (std::popcount(bc) & 1) ? -1.0 : 1.0;
    acc[static_cast<std::size_t>(exponent)] += sign * minors[beta];
  }
  return Polynomial(std::move(acc));
}

Polynomial ppt_charpoly(const Matrix& a, const IndexSet& alpha) {
  detail::require_square(a, "ppt_charpoly");
  detail::require_ambient(a, alpha, "ppt_charpoly");
  if (a.rows() > kMaxEnumerationOrder) {
    throw CapacityError("ppt_charpoly: order " + std::to_string(a.rows()) + " exceeds enumeration limit");
  }
  const Matrix lead = principal_submatrix(a, alpha);
  double det_lead = 1.0;
  if (!alpha.empty()) {
    const LuFactorization lu(lead);
    if (lu.singular()) {
      const std::string name = "A[" + alpha.to_string() + "]";
      throw SingularBlock(name, "ppt_charpoly: block " + name + " is singular");
    }
    det_lead = lu.determinant();
  }
  const Polynomial sum = shifted_determinant_polynomial(a, alpha);
  const double factor = ((a.rows() - alpha.size()) % 2 ? -1.0 : 1.0) / det_lead;
  std::vector<double> c(a.rows() + 1, 0.0);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = factor * sum[j];
  return Polynomial(std::move(c));
}

// ---------------------------------------------------------------------------
// Roots

SpectrumResult roots(const Polynomial& p) {
  const int deg = p.degree();
  if (deg < 1) throw InputError("roots: polynomial degree must be at least 1");
  const double lead = p.coeffs().back();
  std::vector<double> mc(p.coeffs());
  for (double& v : mc) v /= lead;
  const Polynomial q(std::move(mc));
  const auto n = static_cast<std::size_t>(deg);

  if (n == 1) return finish(p, {Complex(-q[0], 0.0)});

  // Exact zero roots are split off; Aberth converges only slowly onto a multiple root.
  std::size_t zeros = 0;
  while (q[zeros] == 0.0) ++zeros;
  if (zeros > 0) {
    std::vector<Complex> z(zeros, Complex(0.0));
    if (zeros < n) {
      const SpectrumResult rest = roots(Polynomial(std::vector<double>(q.coeffs().begin() + zeros, q.coeffs().end())));
      z.insert(z.end(), rest.eigenvalues.begin(), rest.eigenvalues.end());
    }
    return finish(p, std::move(z));
  }

  double bound = 0.0;
  for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, std::abs(q[k]));
  const double radius = 1.0 + bound;
  std::vector<Complex> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n) + 0.4;
    z[i] = std::polar(radius, theta);
  }

  for (int iter = 0; iter < kAberthMaxIterations; ++iter) {
    bool done = true;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex pz = q(z[i]);
      if (std::abs(pz) <= 4.0 * kEps * q.magnitude_at(z[i])) continue;
      const Complex dpz = q.derivative_at(z[i]);
      Complex s = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      Complex denom = dpz - pz * s;
      if (denom == Complex(0.0)) denom = Complex(kEps, kEps);
      const Complex w = pz / denom;
      z[i] -= w;
      if (std::abs(w) > kAberthStep * std::max(1.0, std::abs(z[i]))) done = false;
    }
    if (done) return finish(p, std::move(z));
  }

  std::vector<double> re;
  std::vector<double> im;
  for (const Complex& v : z) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  throw NonConvergence("roots: Aberth iteration did not converge in " + std::to_string(kAberthMaxIterations) +
                           " iterations",
                       std::move(re), std::move(im));
}

SpectrumResult eigenvalues(const Matrix& m) { return roots(charpoly_direct(m)); }

SpectrumResult pencil_eigenvalues(const Factorization& f) {
  detail::require_square(f.c1, "pencil_eigenvalues");
  detail::require_square(f.c2, "pencil_eigenvalues");
  const std::size_t n = f.c1.rows();
  if (f.c2.rows() != n || n == 0) throw InputError("pencil_eigenvalues: factor shape mismatch");
  const LuFactorization lu2(f.c2);
  if (lu2.singular()) throw SingularBlock("C2", "pencil_eigenvalues: C2 is singular");
  const double det2 = lu2.determinant();
  const double det1 = lu_determinant(f.c1);

  // Sample on a circle whose radius tracks the geometric mean of |lambda_i|.
  double radius = 1.0;
  if (det1 != 0.0) {
    radius = std::clamp(std::pow(std::abs(det1 / det2), 1.0 / static_cast<double>(n)), 0.25, 4.0);
  }
  const std::size_t samples = n + 1;
  std::vector<Complex> values(samples);
  std::vector<Complex> buf(n * n);
  for (std::size_t k = 0; k < samples; ++k) {
    const Complex lambda =
        std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) buf[i * n + j] = lambda * f.c2(i, j) - f.c1(i, j);
    values[k] = complex_determinant(n, buf) / det2;
  }
  std::vector<double> coeffs(n + 1, 0.0);
  for (std::size_t j = 0; j <= n; ++j) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
      acc += values[k] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k) /
                                             static_cast<double>(samples));
    }
    coeffs[j] = acc.real() / (static_cast<double>(samples) * std::pow(radius, static_cast<double>(j)));
  }
  coeffs[n] = 1.0;  // det(lambda C2 - C1) / det C2 is monic
  return roots(Polynomial(std::move(coeffs)));
}

double diagonal_certificate(const Matrix& a, const IndexSet& alpha, Complex lambda) {
  detail::require_square(a, "diagonal_certificate");
  detail::require_ambient(a, alpha, "diagonal_certificate");
  if (lambda == Complex(0.0)) throw InputError("diagonal_certificate: lambda must be nonzero");
  const std::size_t n = a.rows();
  std::vector<Complex> buf(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) buf[i * n + j] = a(i, j);
    buf[i * n + i] -= alpha.contains(i) ? 1.0 / lambda : lambda;
  }
  return std::abs(complex_determinant(n, std::move(buf)));
}

bool singularity_check(const Matrix& a, const IndexSet& alpha) {
  detail::require_square(a, "singularity_check");
  detail::require_ambient(a, alpha, "singularity_check");
  if (!alpha.empty() && LuFactorization(principal_submatrix(a, alpha)).singular()) {
    const std::string name = "A[" + alpha.to_string() + "]";
    throw SingularBlock(name, "singularity_check: block " + name + " is singular");
  }
  const IndexSet rest = alpha.complement();
  if (rest.empty()) return false;
  return LuFactorization(principal_submatrix(a, rest)).singular();
}

double matching_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> ua(a.size(), false);
  std::vector<bool> ub(b.size(), false);
  double worst = 0.0;
  for (std::size_t round = 0; round < a.size(); ++round) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (ua[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (ub[j]) continue;
        const double d = std::abs(a[i] - b[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    ua[bi] = true;
    ub[bj] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace pivot
