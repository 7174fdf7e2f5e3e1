#include "pivot/solver.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "pivot/ppt.hpp"
#include "pivot/spectra.hpp"

namespace pivot {

namespace {

constexpr std::size_t kMaxExhaustiveOrder = 15;
constexpr std::size_t kRateWindow = 10;

double rate_fit(const std::vector<double>& history) {
  // Least-squares slope of log(diff) over the trailing window.
  std::vector<double> logs;
  for (std::size_t k = history.size() > kRateWindow ? history.size() - kRateWindow : 0; k < history.size(); ++k) {
    if (history[k] > 0.0 && std::isfinite(history[k])) logs.push_back(std::log(history[k]));
  }
  if (logs.size() < 2) return 0.0;
  const double m = static_cast<double>(logs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < logs.size(); ++k) {
    const double x = static_cast<double>(k);
    sx += x;
    sy += logs[k];
    sxx += x * x;
    sxy += x * logs[k];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return std::exp(slope);
}

std::optional<double> radius_of(const Matrix& t, const IndexSet& alpha) {
  try {
    return eigenvalues(ppt(t, alpha)).spectral_radius;
  } catch (const SingularBlock&) {
    return std::nullopt;
  } catch (const NonConvergence&) {
    return std::nullopt;
  }
}

// Smaller radius wins; near-ties go to the smaller set, then the lexicographically smaller one.
bool better(double rho, const IndexSet& alpha, double best_rho, const IndexSet& best_alpha) {
  const double tie = 1e-12 * std::max(1.0, best_rho);
  if (rho < best_rho - tie) return true;
  if (rho > best_rho + tie) return false;
  if (alpha.size() != best_alpha.size()) return alpha.size() < best_alpha.size();
  return alpha < best_alpha;
}

double residual_inf(const Matrix& a, std::span<const double> x, std::span<const double> b) {
  const Vector ax = a * x;
  double r = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) r = std::max(r, std::abs(ax[i] - b[i]));
  return r;
}

}  // namespace

FixedPointSystem jacobi_system(const Matrix& a, std::span<const double> b) {
  detail::require_square(a, "jacobi_system");
  const std::size_t n = a.rows();
  if (b.size() != n) throw InputError("jacobi_system: right-hand side length mismatch");
  const double floor = kPivotTolerance * std::max(1.0, a.max_abs());
  FixedPointSystem sys{Matrix(n, n), Vector(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a(i, i);
    if (std::abs(d) < floor) {
      throw ZeroDiagonal(i, "jacobi_system: diagonal entry " + std::to_string(i + 1) + " is zero");
    }
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sys.t(i, j) = -a(i, j) / d;
    sys.c[i] = b[i] / d;
  }
  return sys;
}

FixedPointSystem transform_fixed_point(const FixedPointSystem& sys, const IndexSet& alpha) {
  detail::require_square(sys.t, "transform_fixed_point");
  detail::require_ambient(sys.t, alpha, "transform_fixed_point");
  const std::size_t n = sys.t.rows();
  if (sys.c.size() != n) throw InputError("transform_fixed_point: affine term length mismatch");
  FixedPointSystem out{ppt(sys.t, alpha), sys.c};
  Vector u(n, 0.0);
  for (std::size_t i : alpha) u[i] = sys.c[i];
  const Vector tu = out.t * u;
  for (std::size_t i = 0; i < n; ++i) out.c[i] = sys.c[i] - u[i] - tu[i];
  return out;
}

IterationReport iterate(const FixedPointSystem& sys, std::span<const double> x0, double tol, std::size_t max_iter) {
  detail::require_square(sys.t, "iterate");
  const std::size_t n = sys.t.rows();
  if (sys.c.size() != n) throw InputError("iterate: affine term length mismatch");
  if (!(tol > 0.0)) throw InputError("iterate: tolerance must be positive");
  if (max_iter < 1) throw InputError("iterate: max_iter must be at least 1");
  if (!x0.empty() && x0.size() != n) throw InputError("iterate: starting vector length mismatch");

  auto step = [&](const Vector& x) {
    Vector y = sys.t * x;
    for (std::size_t i = 0; i < n; ++i) y[i] += sys.c[i];
    return y;
  };

  IterationReport r;
  Vector x = x0.empty() ? Vector(n, 0.0) : Vector(x0.begin(), x0.end());
  Vector next = step(x);
  for (std::size_t k = 1; k <= max_iter; ++k) {
    x = std::move(next);
    next = step(x);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(next[i] - x[i]));
    if (std::isnan(diff)) diff = std::numeric_limits<double>::infinity();
    r.residual_history.push_back(diff);
    r.iterations = k;
    if (diff <= tol) {
      r.converged = true;
      break;
    }
    if (diff > kDivergenceThreshold) {
      r.diverged = true;
      break;
    }
  }
  r.solution = std::move(x);
  r.rho_estimate = rate_fit(r.residual_history);
  return r;
}

std::pair<IndexSet, double> select_alpha(const Matrix& t, AlphaMode mode, std::size_t budget) {
  detail::require_square(t, "select_alpha");
  const std::size_t n = t.rows();
  IndexSet best = IndexSet::none(n);
  const std::optional<double> base = radius_of(t, best);
  if (!base) throw NonConvergence("select_alpha: spectrum of T could not be computed", {}, {});
  double best_rho = *base;

  if (mode == AlphaMode::exhaustive) {
    if (n > kMaxExhaustiveOrder) {
      throw CapacityError("select_alpha: exhaustive search limited to order " + std::to_string(kMaxExhaustiveOrder));
    }
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < count; ++mask) {
      const IndexSet alpha = IndexSet::from_mask(n, mask);
      const std::optional<double> rho = radius_of(t, alpha);
      if (rho && better(*rho, alpha, best_rho, best)) {
        best = alpha;
        best_rho = *rho;
      }
    }
    return {best, best_rho};
  }

  if (mode != AlphaMode::greedy) throw InputError("select_alpha: mode must be exhaustive or greedy");
  const std::size_t steps = budget == 0 ? n : std::min(budget, n);
  for (std::size_t s = 0; s < steps; ++s) {
    std::optional<IndexSet> cand;
    double cand_rho = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (best.contains(i)) continue;
      std::vector<std::size_t> grown(best.begin(), best.end());
      grown.push_back(i);
      IndexSet alpha(n, std::move(grown));
      const std::optional<double> rho = radius_of(t, alpha);
      if (rho && (!cand || better(*rho, alpha, cand_rho, *cand))) {
        cand = std::move(alpha);
        cand_rho = *rho;
      }
    }
    if (!cand || cand_rho >= best_rho - 1e-12 * std::max(1.0, best_rho)) break;
    best = std::move(*cand);
    best_rho = cand_rho;
  }
  return {best, best_rho};
}

IterationReport solve(const Matrix& a, std::span<const double> b, const SolveConfig& config) {
  if (!(config.tol > 0.0)) throw InputError("solve: tolerance must be positive");
  if (config.max_iter < 1) throw InputError("solve: max_iter must be at least 1");
  FixedPointSystem sys = jacobi_system(a, b);

  std::optional<IndexSet> alpha;
  switch (config.alpha_mode) {
    case AlphaMode::none:
      break;
    case AlphaMode::fixed:
      if (!config.alpha) throw InputError("solve: fixed alpha mode requires an index set");
      alpha = config.alpha;
      break;
    case AlphaMode::exhaustive:
    case AlphaMode::greedy:
      alpha = select_alpha(sys.t, config.alpha_mode, config.budget).first;
      break;
  }
  if (alpha && !alpha->empty()) sys = transform_fixed_point(sys, *alpha);

  IterationReport report = iterate(sys, {}, config.tol, config.max_iter);
  report.alpha = alpha;

  // The stopping test bounds the fixed-point residual of the (possibly
  // transformed) system; tighten it until the residual of A x = b itself
  // meets the 10 tol ||b|| contract or the iteration budget runs out.
  const double target = 10.0 * config.tol * norm_inf(b);
  double tol = config.tol;
  while (report.converged && residual_inf(a, report.solution, b) > target) {
    if (report.iterations >= config.max_iter || tol < 1e-300) {
      report.converged = false;
      break;
    }
    tol /= 10.0;
    IterationReport more = iterate(sys, report.solution, tol, config.max_iter - report.iterations);
    report.iterations += more.iterations;
    report.residual_history.insert(report.residual_history.end(), more.residual_history.begin(),
                                   more.residual_history.end());
    report.solution = std::move(more.solution);
    report.converged = more.converged;
    report.diverged = more.diverged;
  }
  report.rho_estimate = rate_fit(report.residual_history);
  return report;
}

}  // namespace pivot
