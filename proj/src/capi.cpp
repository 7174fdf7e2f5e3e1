#include "pivot/pivot.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "pivot/classes.hpp"
#include "pivot/flops.hpp"
#include "pivot/io.hpp"
#include "pivot/ppt.hpp"
#include "pivot/solver.hpp"
#include "pivot/spectra.hpp"

struct pivot_matrix {
  pivot::Matrix m;
};

struct pivot_index_set {
  pivot::IndexSet s;
};

struct pivot_solve_result {
  pivot::IterationReport report;
  pivot_index_set alpha;
};

namespace {

thread_local std::string last_error;

template <class F>
pivot_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return PIVOT_OK;
  } catch (const pivot::SingularBlock& e) {
    last_error = e.what();
    return PIVOT_ERR_SINGULAR;
  } catch (const pivot::CapacityError& e) {
    last_error = e.what();
    return PIVOT_ERR_CAPACITY;
  } catch (const pivot::InputError& e) {
    last_error = e.what();
    return PIVOT_ERR_INPUT;
  } catch (const pivot::NonConvergence& e) {
    last_error = e.what();
    return PIVOT_ERR_NONCONVERGENCE;
  } catch (const pivot::ZeroDiagonal& e) {
    last_error = e.what();
    return PIVOT_ERR_ZERO_DIAGONAL;
  } catch (const pivot::NotOrthogonal& e) {
    last_error = e.what();
    return PIVOT_ERR_NOT_ORTHOGONAL;
  } catch (const pivot::Indeterminate& e) {
    last_error = e.what();
    return PIVOT_ERR_INDETERMINATE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PIVOT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PIVOT_ERR_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw pivot::InputError(std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* pivot_last_error(void) { return last_error.c_str(); }

const char* pivot_status_name(pivot_status status) {
  switch (status) {
    case PIVOT_OK: return "ok";
    case PIVOT_ERR_SINGULAR: return "singular block";
    case PIVOT_ERR_INPUT: return "input error";
    case PIVOT_ERR_NONCONVERGENCE: return "non-convergence";
    case PIVOT_ERR_CAPACITY: return "capacity exceeded";
    case PIVOT_ERR_ZERO_DIAGONAL: return "zero diagonal";
    case PIVOT_ERR_NOT_ORTHOGONAL: return "not orthogonal";
    case PIVOT_ERR_INDETERMINATE: return "indeterminate";
    case PIVOT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void pivot_free(void* p) { std::free(p); }

// ---- matrices

pivot_status pivot_matrix_create(size_t rows, size_t cols, const double* data, pivot_matrix** out) {
  return guarded([&] {
    require(out, "out");
    if (rows * cols > 0) require(data, "data");
    std::vector<double> entries(data, data + rows * cols);
    *out = new pivot_matrix{pivot::Matrix(rows, cols, std::move(entries))};
  });
}

void pivot_matrix_destroy(pivot_matrix* m) { delete m; }
size_t pivot_matrix_rows(const pivot_matrix* m) { return m ? m->m.rows() : 0; }
size_t pivot_matrix_cols(const pivot_matrix* m) { return m ? m->m.cols() : 0; }
const double* pivot_matrix_data(const pivot_matrix* m) { return m ? m->m.data().data() : nullptr; }

pivot_status pivot_matrix_parse(const char* text, pivot_matrix** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new pivot_matrix{pivot::io::parse_matrix(text)};
  });
}

pivot_status pivot_matrix_read(const char* path, pivot_matrix** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new pivot_matrix{pivot::io::read_matrix_file(path)};
  });
}

pivot_status pivot_matrix_write(const pivot_matrix* m, const char* path) {
  return guarded([&] {
    require(m, "matrix");
    require(path, "path");
    pivot::io::write_text_file(path, pivot::io::format_matrix(m->m));
  });
}

pivot_status pivot_matrix_format(const pivot_matrix* m, char** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    *out = dup_string(pivot::io::format_matrix(m->m));
  });
}

pivot_status pivot_vector_read(const char* path, double** out, size_t* len) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    require(len, "len");
    const pivot::Vector v = pivot::io::read_vector_file(path);
    auto* buf = static_cast<double*>(std::malloc(v.size() * sizeof(double)));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, v.data(), v.size() * sizeof(double));
    *out = buf;
    *len = v.size();
  });
}

// ---- index sets

pivot_status pivot_index_set_parse(const char* spec, size_t n, pivot_index_set** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new pivot_index_set{pivot::io::parse_alpha(spec, n)};
  });
}

pivot_status pivot_index_set_create(size_t n, const size_t* indices, size_t count, pivot_index_set** out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) require(indices, "indices");
    *out = new pivot_index_set{pivot::IndexSet::from_one_based(n, std::span<const size_t>(indices, count))};
  });
}

void pivot_index_set_destroy(pivot_index_set* s) { delete s; }
size_t pivot_index_set_size(const pivot_index_set* s) { return s ? s->s.size() : 0; }
size_t pivot_index_set_ambient(const pivot_index_set* s) { return s ? s->s.ambient() : 0; }
size_t pivot_index_set_get(const pivot_index_set* s, size_t k) {
  return s && k < s->s.size() ? s->s[k] + 1 : 0;
}

pivot_status pivot_index_set_format(const pivot_index_set* s, char** out) {
  return guarded([&] {
    require(s, "index set");
    require(out, "out");
    *out = dup_string(s->s.to_string());
  });
}

pivot_status pivot_partition_parse(const char* spec, size_t n, pivot_index_set*** out, size_t* count) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    require(count, "count");
    std::vector<pivot::IndexSet> blocks = pivot::io::parse_partition(spec, n);
    auto** arr = static_cast<pivot_index_set**>(std::calloc(blocks.size(), sizeof(pivot_index_set*)));
    if (arr == nullptr) throw std::bad_alloc();
    for (std::size_t k = 0; k < blocks.size(); ++k) arr[k] = new pivot_index_set{std::move(blocks[k])};
    *out = arr;
    *count = blocks.size();
  });
}

// ---- transforms

pivot_status pivot_ppt(const pivot_matrix* a, const pivot_index_set* alpha, pivot_matrix** out) {
  return guarded([&] {
    require(a, "matrix");
    require(alpha, "alpha");
    require(out, "out");
    *out = new pivot_matrix{pivot::ppt(a->m, alpha->s)};
  });
}

pivot_status pivot_ppt_det(const pivot_matrix* a, const pivot_index_set* alpha, double* out) {
  return guarded([&] {
    require(a, "matrix");
    require(alpha, "alpha");
    require(out, "out");
    *out = pivot::ppt_det(a->m, alpha->s);
  });
}

static void fill_report(const pivot::FlopReport& r, pivot_flop_report* out) {
  out->predicted_ppt_inversion = r.predicted_ppt_inversion;
  out->predicted_lu_inversion = r.predicted_lu_inversion;
  out->has_measured = r.measured.has_value() ? 1 : 0;
  out->measured = r.measured.value_or(0);
}

pivot_status pivot_sequential_inverse(const pivot_matrix* a, const pivot_index_set* const* blocks, size_t count,
                                      pivot_matrix** out, pivot_flop_report* report) {
  return guarded([&] {
    require(a, "matrix");
    require(out, "out");
    const std::size_t n = a->m.order();
    std::vector<pivot::IndexSet> parts;
    if (count == 0) {
      parts = pivot::singleton_partition(n);
    } else {
      require(blocks, "blocks");
      for (std::size_t k = 0; k < count; ++k) {
        require(blocks[k], "block");
        parts.push_back(blocks[k]->s);
      }
    }
    bool singletons = true;
    for (const auto& p : parts) singletons = singletons && p.size() == 1;

    if (report != nullptr && singletons && pivot::flops::instrumented()) {
      pivot::flops::Counter counter;
      pivot::Matrix inv = pivot::sequential_inverse(a->m, parts);
      pivot::FlopReport r = pivot::flop_estimate(n);
      r.measured = counter.count();
      fill_report(r, report);
      *out = new pivot_matrix{std::move(inv)};
      return;
    }
    pivot::Matrix inv = pivot::sequential_inverse(a->m, parts);
    if (report != nullptr) fill_report(pivot::flop_estimate(n), report);
    *out = new pivot_matrix{std::move(inv)};
  });
}

pivot_status pivot_flop_estimate(size_t n, pivot_flop_report* out) {
  return guarded([&] {
    require(out, "out");
    fill_report(pivot::flop_estimate(n), out);
  });
}

// ---- spectra

pivot_status pivot_ppt_spectrum(const pivot_matrix* a, const pivot_index_set* alpha, double* coeffs, double* re,
                                double* im, double* rho) {
  return guarded([&] {
    require(a, "matrix");
    require(alpha, "alpha");
    const std::size_t n = a->m.order();
    const pivot::Polynomial g = pivot::ppt_charpoly(a->m, alpha->s);
    const pivot::SpectrumResult s = pivot::roots(g);
    if (coeffs) {
      for (std::size_t k = 0; k <= n; ++k) coeffs[k] = g[k];
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (re) re[k] = s.eigenvalues[k].real();
      if (im) im[k] = s.eigenvalues[k].imag();
    }
    if (rho) *rho = s.spectral_radius;
  });
}

// ---- solver

void pivot_solve_config_init(pivot_solve_config* config) {
  if (config == nullptr) return;
  config->tol = 1e-10;
  config->max_iter = 10000;
  config->mode = PIVOT_ALPHA_NONE;
  config->alpha = nullptr;
  config->budget = 0;
}

pivot_status pivot_solve(const pivot_matrix* a, const double* b, size_t len, const pivot_solve_config* config,
                         pivot_solve_result** out) {
  return guarded([&] {
    require(a, "matrix");
    require(b, "rhs");
    require(out, "out");
    pivot::SolveConfig cfg;
    if (config != nullptr) {
      cfg.tol = config->tol;
      cfg.max_iter = config->max_iter;
      cfg.budget = config->budget;
      switch (config->mode) {
        case PIVOT_ALPHA_NONE: cfg.alpha_mode = pivot::AlphaMode::none; break;
        case PIVOT_ALPHA_FIXED:
          require(config->alpha, "config alpha");
          cfg.alpha_mode = pivot::AlphaMode::fixed;
          cfg.alpha = config->alpha->s;
          break;
        case PIVOT_ALPHA_EXHAUSTIVE: cfg.alpha_mode = pivot::AlphaMode::exhaustive; break;
        case PIVOT_ALPHA_GREEDY: cfg.alpha_mode = pivot::AlphaMode::greedy; break;
        default: throw pivot::InputError("unknown alpha mode");
      }
    }
    auto r = std::make_unique<pivot_solve_result>();
    r->report = pivot::solve(a->m, std::span<const double>(b, len), cfg);
    if (r->report.alpha) r->alpha.s = *r->report.alpha;
    *out = r.release();
  });
}

void pivot_solve_result_destroy(pivot_solve_result* r) { delete r; }

const double* pivot_solve_result_solution(const pivot_solve_result* r, size_t* len) {
  if (r == nullptr) return nullptr;
  if (len) *len = r->report.solution.size();
  return r->report.solution.data();
}

size_t pivot_solve_result_iterations(const pivot_solve_result* r) { return r ? r->report.iterations : 0; }
int pivot_solve_result_converged(const pivot_solve_result* r) { return r && r->report.converged ? 1 : 0; }
int pivot_solve_result_diverged(const pivot_solve_result* r) { return r && r->report.diverged ? 1 : 0; }
double pivot_solve_result_rho(const pivot_solve_result* r) { return r ? r->report.rho_estimate : 0.0; }
const pivot_index_set* pivot_solve_result_alpha(const pivot_solve_result* r) {
  return r && r->report.alpha ? &r->alpha : nullptr;
}

// ---- classes

pivot_status pivot_check_p(const pivot_matrix* a, int* verdict, pivot_index_set** witness) {
  return guarded([&] {
    require(a, "matrix");
    require(verdict, "verdict");
    const pivot::ClassCertificate c = pivot::is_p_matrix(a->m);
    *verdict = c.verdict ? 1 : 0;
    if (witness) *witness = c.subset ? new pivot_index_set{*c.subset} : nullptr;
  });
}

pivot_status pivot_check_z(const pivot_matrix* a, int* verdict) {
  return guarded([&] {
    require(a, "matrix");
    require(verdict, "verdict");
    *verdict = pivot::is_z_matrix(a->m) ? 1 : 0;
  });
}

pivot_status pivot_check_semipositive(const pivot_matrix* a, int* verdict, double* witness) {
  return guarded([&] {
    require(a, "matrix");
    require(verdict, "verdict");
    const pivot::ClassCertificate c = pivot::is_semipositive(a->m);
    *verdict = c.verdict ? 1 : 0;
    if (witness && c.vector) std::memcpy(witness, c.vector->data(), c.vector->size() * sizeof(double));
  });
}

pivot_status pivot_random_orthogonal(size_t n, uint64_t seed, pivot_matrix** out) {
  return guarded([&] {
    require(out, "out");
    *out = new pivot_matrix{pivot::random_orthogonal(n, seed)};
  });
}

pivot_status pivot_make_s_orthogonal(const char* signs, uint64_t seed, pivot_matrix** q, double* residual) {
  return guarded([&] {
    require(signs, "signs");
    require(q, "q");
    const pivot::SignatureMatrix s = pivot::SignatureMatrix::parse(signs);
    const pivot::Matrix r = pivot::random_orthogonal(s.order(), seed);
    pivot::Matrix result = pivot::make_s_orthogonal(s, r);
    if (residual) *residual = pivot::s_orthogonality_residual(s, result);
    *q = new pivot_matrix{std::move(result)};
  });
}

}  // extern "C"
