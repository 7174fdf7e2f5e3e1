#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pivot/matrix.hpp"

namespace pivot {

/// x = T x + c
struct FixedPointSystem {
  Matrix t;
  Vector c;
};

struct IterationReport {
  Vector solution;
  std::size_t iterations = 0;
  /// residual_history[k] = ||x_{k+1} - x_k||_inf for each iterate x_k produced.
  std::vector<double> residual_history;
  bool converged = false;
  bool diverged = false;
  double rho_estimate = 0.0;
  /// Set by solve() when an index set was applied.
  std::optional<IndexSet> alpha;
};

enum class AlphaMode { none, fixed, exhaustive, greedy };

struct SolveConfig {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  AlphaMode alpha_mode = AlphaMode::none;
  std::optional<IndexSet> alpha;  // used when alpha_mode == fixed
  std::size_t budget = 0;         // greedy growth steps; 0 means n
};

/// Difference norm above which the iteration is declared divergent.
inline constexpr double kDivergenceThreshold = 1e12;

/// Jacobi splitting M = diag(A), N = M - A: T = M^{-1} N, c = M^{-1} b.
FixedPointSystem jacobi_system(const Matrix& a, std::span<const double> b);

/// (ppt(T, alpha), c - (I + ppt(T, alpha)) u) with u = c on alpha and 0 elsewhere;
/// has the same fixed points as the input system.
FixedPointSystem transform_fixed_point(const FixedPointSystem& sys, const IndexSet& alpha);

/// Runs x_k = T x_{k-1} + c from x0 until ||T x_k + c - x_k||_inf <= tol.
/// An empty x0 means the zero vector.
IterationReport iterate(const FixedPointSystem& sys, std::span<const double> x0, double tol, std::size_t max_iter);

/// Spectral radius of ppt(T, alpha) over all alpha (exhaustive, n <= 15) or by
/// greedy single-index growth. Returns the minimizing alpha and its radius.
std::pair<IndexSet, double> select_alpha(const Matrix& t, AlphaMode mode, std::size_t budget = 0);

/// Jacobi, optionally followed by a principal pivot transform of the iteration
/// matrix, then stationary iteration. Non-convergence is reported, not thrown.
IterationReport solve(const Matrix& a, std::span<const double> b, const SolveConfig& config = {});

}  // namespace pivot
