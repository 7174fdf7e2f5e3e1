// pivot: command-line front end over the C interface.
#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pivot/pivot.h"

namespace {

enum Exit { kOk = 0, kNumeric = 1, kInput = 2, kNoConvergence = 3, kNegative = 4 };

struct MatrixDeleter {
  void operator()(pivot_matrix* m) const { pivot_matrix_destroy(m); }
};
struct IndexSetDeleter {
  void operator()(pivot_index_set* s) const { pivot_index_set_destroy(s); }
};
struct SolveDeleter {
  void operator()(pivot_solve_result* r) const { pivot_solve_result_destroy(r); }
};
struct FreeDeleter {
  void operator()(void* p) const { pivot_free(p); }
};

using MatrixPtr = std::unique_ptr<pivot_matrix, MatrixDeleter>;
using IndexSetPtr = std::unique_ptr<pivot_index_set, IndexSetDeleter>;

// Thrown to unwind to main with an exit code already decided.
struct Failure {
  int code;
};

int exit_code_for(pivot_status st) {
  switch (st) {
    case PIVOT_OK: return kOk;
    case PIVOT_ERR_INPUT:
    case PIVOT_ERR_CAPACITY:
    case PIVOT_ERR_NOT_ORTHOGONAL: return kInput;
    default: return kNumeric;
  }
}

void check(pivot_status st) {
  if (st == PIVOT_OK) return;
  std::fprintf(stderr, "pivot: %s: %s\n", pivot_status_name(st), pivot_last_error());
  throw Failure{exit_code_for(st)};
}

MatrixPtr load_matrix(const std::string& path) {
  pivot_matrix* m = nullptr;
  check(pivot_matrix_read(path.c_str(), &m));
  return MatrixPtr(m);
}

IndexSetPtr load_alpha(const std::string& spec, size_t n) {
  pivot_index_set* s = nullptr;
  check(pivot_index_set_parse(spec.c_str(), n, &s));
  return IndexSetPtr(s);
}

std::string format_set(const pivot_index_set* s) {
  char* text = nullptr;
  check(pivot_index_set_format(s, &text));
  std::unique_ptr<char, FreeDeleter> guard(text);
  return text;
}

void emit_matrix(const pivot_matrix* m, const std::string& out_path) {
  if (!out_path.empty()) {
    check(pivot_matrix_write(m, out_path.c_str()));
    return;
  }
  char* text = nullptr;
  check(pivot_matrix_format(m, &text));
  std::unique_ptr<char, FreeDeleter> guard(text);
  std::fputs(text, stdout);
}

std::string num17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string num12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  // Tiny values print as e.g. -1.2e-17 and would make goldens flaky.
  if (std::abs(v) < 1e-13) return "0";
  return buf;
}

int cmd_ppt(const std::string& path, const std::string& alpha, const std::string& out) {
  MatrixPtr a = load_matrix(path);
  IndexSetPtr s = load_alpha(alpha, pivot_matrix_rows(a.get()));
  pivot_matrix* b = nullptr;
  check(pivot_ppt(a.get(), s.get(), &b));
  MatrixPtr guard(b);
  emit_matrix(b, out);
  return kOk;
}

int cmd_invert(const std::string& path, const std::string& partition, const std::string& out, bool flops) {
  MatrixPtr a = load_matrix(path);
  const size_t n = pivot_matrix_rows(a.get());
  std::vector<IndexSetPtr> blocks;
  std::vector<const pivot_index_set*> raw;
  if (!partition.empty()) {
    pivot_index_set** arr = nullptr;
    size_t count = 0;
    check(pivot_partition_parse(partition.c_str(), n, &arr, &count));
    for (size_t k = 0; k < count; ++k) {
      blocks.emplace_back(arr[k]);
      raw.push_back(arr[k]);
    }
    pivot_free(arr);
  }
  pivot_flop_report report{};
  pivot_matrix* inv = nullptr;
  check(pivot_sequential_inverse(a.get(), raw.data(), raw.size(), &inv, flops ? &report : nullptr));
  MatrixPtr guard(inv);
  if (flops) {
    std::printf("# predicted flops (ppt): %" PRIu64 "\n", report.predicted_ppt_inversion);
    std::printf("# predicted flops (lu): %" PRIu64 "\n", report.predicted_lu_inversion);
    if (report.has_measured) {
      std::printf("# measured flops: %" PRIu64 "\n", report.measured);
    } else {
      std::printf("# measured flops: n/a\n");
    }
  }
  emit_matrix(inv, out);
  return kOk;
}

int cmd_eig(const std::string& path, const std::string& alpha) {
  MatrixPtr a = load_matrix(path);
  const size_t n = pivot_matrix_rows(a.get());
  IndexSetPtr s = load_alpha(alpha, n);
  std::vector<double> coeffs(n + 1), re(n), im(n);
  double rho = 0.0;
  check(pivot_ppt_spectrum(a.get(), s.get(), coeffs.data(), re.data(), im.data(), &rho));
  std::printf("# characteristic polynomial, ascending powers\n");
  for (size_t k = 0; k <= n; ++k) std::printf("%s%s", k ? " " : "", num12(coeffs[k]).c_str());
  std::printf("\n# eigenvalues: real imaginary\n");
  for (size_t k = 0; k < n; ++k) std::printf("%s %s\n", num12(re[k]).c_str(), num12(im[k]).c_str());
  std::printf("# spectral radius\n%s\n", num12(rho).c_str());
  return kOk;
}

int cmd_solve(const std::string& path, const std::string& rhs_path, double tol, size_t max_iter,
              const std::string& alpha) {
  MatrixPtr a = load_matrix(path);
  const size_t n = pivot_matrix_rows(a.get());
  double* b = nullptr;
  size_t len = 0;
  check(pivot_vector_read(rhs_path.c_str(), &b, &len));
  std::unique_ptr<double, FreeDeleter> b_guard(b);

  pivot_solve_config cfg;
  pivot_solve_config_init(&cfg);
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  IndexSetPtr fixed;
  if (alpha == "auto-exhaustive") {
    cfg.mode = PIVOT_ALPHA_EXHAUSTIVE;
  } else if (alpha == "auto-greedy") {
    cfg.mode = PIVOT_ALPHA_GREEDY;
  } else if (alpha != "none") {
    fixed = load_alpha(alpha, n);
    cfg.mode = PIVOT_ALPHA_FIXED;
    cfg.alpha = fixed.get();
  }

  pivot_solve_result* raw = nullptr;
  check(pivot_solve(a.get(), b, len, &cfg, &raw));
  std::unique_ptr<pivot_solve_result, SolveDeleter> r(raw);
  size_t sol_len = 0;
  const double* x = pivot_solve_result_solution(raw, &sol_len);
  const bool converged = pivot_solve_result_converged(raw) != 0;
  std::printf("# solution\n");
  for (size_t k = 0; k < sol_len; ++k) std::printf("%s\n", num17(x[k]).c_str());
  std::printf("iterations: %zu\n", pivot_solve_result_iterations(raw));
  std::printf("converged: %s\n", converged ? "true" : "false");
  if (pivot_solve_result_diverged(raw)) std::printf("diverged: true\n");
  std::printf("rho_estimate: %.6g\n", pivot_solve_result_rho(raw));
  if (const pivot_index_set* used = pivot_solve_result_alpha(raw)) {
    std::printf("alpha: %s\n", format_set(used).c_str());
  }
  if (!converged) {
    std::fprintf(stderr, "pivot: iteration did not converge\n");
    return kNoConvergence;
  }
  return kOk;
}

int cmd_check(const std::string& path, const std::string& cls) {
  MatrixPtr a = load_matrix(path);
  const size_t n = pivot_matrix_rows(a.get());
  int verdict = 0;
  if (cls == "p") {
    pivot_index_set* witness = nullptr;
    check(pivot_check_p(a.get(), &verdict, &witness));
    IndexSetPtr guard(witness);
    std::printf("p-matrix: %s\n", verdict ? "true" : "false");
    if (witness) std::printf("witness: %s\n", format_set(witness).c_str());
  } else if (cls == "z") {
    check(pivot_check_z(a.get(), &verdict));
    std::printf("z-matrix: %s\n", verdict ? "true" : "false");
  } else {
    std::vector<double> x(n);
    check(pivot_check_semipositive(a.get(), &verdict, x.data()));
    std::printf("semipositive: %s\n", verdict ? "true" : "false");
    if (verdict) {
      std::printf("witness:");
      for (double v : x) std::printf(" %s", num17(v).c_str());
      std::printf("\n");
    }
  }
  return verdict ? kOk : kNegative;
}

int cmd_sorth(const std::string& signs, uint64_t seed) {
  pivot_matrix* q = nullptr;
  double residual = 0.0;
  check(pivot_make_s_orthogonal(signs.c_str(), seed, &q, &residual));
  MatrixPtr guard(q);
  emit_matrix(q, "");
  std::printf("# residual: %.3e\n", residual);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal pivot transforms of dense matrices"};
  app.require_subcommand(1);

  std::string matrix, rhs, alpha, out, partition, cls, signs;
  std::string solve_alpha = "none";
  bool flops = false;
  double tol = 1e-10;
  size_t max_iter = 10000;
  uint64_t seed = 0;

  auto* ppt = app.add_subcommand("ppt", "Principal pivot transform ppt(A, alpha)");
  ppt->add_option("matrix", matrix, "Matrix file")->required();
  ppt->add_option("--alpha", alpha, "Index set: \"1,3\", \"empty\" or \"all\"")->required();
  ppt->add_option("-o,--output", out, "Write the result here instead of stdout");

  auto* inv = app.add_subcommand("invert", "Inverse by sequential pivoting");
  inv->add_option("matrix", matrix, "Matrix file")->required();
  inv->add_option("--partition", partition, "Blocks separated by ';' (default: singletons)");
  inv->add_option("-o,--output", out, "Write the result here instead of stdout");
  inv->add_flag("--flops", flops, "Print predicted and measured flop counts");

  auto* eig = app.add_subcommand("eig", "Characteristic polynomial and eigenvalues of ppt(A, alpha)");
  eig->add_option("matrix", matrix, "Matrix file")->required();
  eig->add_option("--alpha", alpha, "Index set")->default_val("empty");

  auto* sol = app.add_subcommand("solve", "Solve Ax = b by (transformed) Jacobi iteration");
  sol->add_option("matrix", matrix, "Matrix file")->required();
  sol->add_option("rhs", rhs, "Right-hand side, one number per line")->required();
  sol->add_option("--tol", tol, "Stopping tolerance")->default_val(1e-10)->check(CLI::PositiveNumber);
  sol->add_option("--max-iter", max_iter, "Iteration cap")->default_val(10000);
  sol->add_option("--alpha", solve_alpha, "Index set, auto-exhaustive, auto-greedy or none")->default_val("none");

  auto* chk = app.add_subcommand("check", "Test membership in a matrix class");
  chk->add_option("matrix", matrix, "Matrix file")->required();
  chk->add_option("--class", cls, "p, z or semipositive")->required()->check(CLI::IsMember({"p", "z", "semipositive"}));

  auto* so = app.add_subcommand("sorth", "Build an S-orthogonal matrix from a random orthogonal one");
  so->add_option("signs", signs, "Signature such as ++--");
  so->add_option("--seed", seed, "Random seed")->default_val(0);

  // "++" and "--" are separators to CLI11, so sorth's signature is lifted out first.
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && args[0] == "sorth") {
    for (std::size_t k = 1; k < args.size(); ++k) {
      if (args[k] == "--seed") {
        ++k;
        continue;
      }
      if (args[k].find_first_not_of("+-") == std::string::npos) {
        signs = args[k];
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(k));
        break;
      }
    }
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
    if (*so && signs.empty()) throw CLI::RequiredError("signs");
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*ppt) return cmd_ppt(matrix, alpha, out);
    if (*inv) return cmd_invert(matrix, partition, out, flops);
    if (*eig) return cmd_eig(matrix, alpha);
    if (*sol) return cmd_solve(matrix, rhs, tol, max_iter, solve_alpha);
    if (*chk) return cmd_check(matrix, cls);
    if (*so) return cmd_sorth(signs, seed);
  } catch (const Failure& f) {
    return f.code;
  }
  return kInput;
}
