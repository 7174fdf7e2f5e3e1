/*
 * C interface to the pivot library.
 *
 * Every object is an opaque handle owned by the caller and released with the
 * matching *_destroy function. Functions return a pivot_status; on failure
 * pivot_last_error() describes the problem for the calling thread. Index
 * positions crossing this interface are 1-based.
 */
#ifndef PIVOT_PIVOT_H
#define PIVOT_PIVOT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PIVOT_BUILDING_LIBRARY)
#    define PIVOT_API __declspec(dllexport)
#  else
#    define PIVOT_API __declspec(dllimport)
#  endif
#else
#  define PIVOT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pivot_status {
  PIVOT_OK = 0,
  PIVOT_ERR_SINGULAR = 1,         /* a block failed the pivot test */
  PIVOT_ERR_INPUT = 2,            /* malformed argument, file or index set */
  PIVOT_ERR_NONCONVERGENCE = 3,   /* root finder hit its iteration cap */
  PIVOT_ERR_CAPACITY = 4,         /* enumeration size limit exceeded */
  PIVOT_ERR_ZERO_DIAGONAL = 5,
  PIVOT_ERR_NOT_ORTHOGONAL = 6,
  PIVOT_ERR_INDETERMINATE = 7,    /* feasibility solver gave no verdict */
  PIVOT_ERR_INTERNAL = 8
} pivot_status;

typedef struct pivot_matrix pivot_matrix;
typedef struct pivot_index_set pivot_index_set;
typedef struct pivot_solve_result pivot_solve_result;

PIVOT_API const char* pivot_last_error(void);
PIVOT_API const char* pivot_status_name(pivot_status status);
/* Releases strings and arrays returned by the library. */
PIVOT_API void pivot_free(void* p);

/* ---- matrices ---------------------------------------------------------- */

/* data holds rows*cols entries in row-major order. */
PIVOT_API pivot_status pivot_matrix_create(size_t rows, size_t cols, const double* data, pivot_matrix** out);
PIVOT_API void pivot_matrix_destroy(pivot_matrix* m);
PIVOT_API size_t pivot_matrix_rows(const pivot_matrix* m);
PIVOT_API size_t pivot_matrix_cols(const pivot_matrix* m);
/* Borrowed pointer into the handle, valid until it is destroyed. */
PIVOT_API const double* pivot_matrix_data(const pivot_matrix* m);

PIVOT_API pivot_status pivot_matrix_parse(const char* text, pivot_matrix** out);
PIVOT_API pivot_status pivot_matrix_read(const char* path, pivot_matrix** out);
PIVOT_API pivot_status pivot_matrix_write(const pivot_matrix* m, const char* path);
/* Matrix file text (17 significant digits); release with pivot_free. */
PIVOT_API pivot_status pivot_matrix_format(const pivot_matrix* m, char** out);

/* One number per line; release *out with pivot_free. */
PIVOT_API pivot_status pivot_vector_read(const char* path, double** out, size_t* len);

/* ---- index sets -------------------------------------------------------- */

/* spec is "1,3", "empty" or "all". */
PIVOT_API pivot_status pivot_index_set_parse(const char* spec, size_t n, pivot_index_set** out);
PIVOT_API pivot_status pivot_index_set_create(size_t n, const size_t* indices, size_t count, pivot_index_set** out);
PIVOT_API void pivot_index_set_destroy(pivot_index_set* s);
PIVOT_API size_t pivot_index_set_size(const pivot_index_set* s);
PIVOT_API size_t pivot_index_set_ambient(const pivot_index_set* s);
/* k-th smallest member, 1-based; k < size. */
PIVOT_API size_t pivot_index_set_get(const pivot_index_set* s, size_t k);
/* "{1,3}"; release with pivot_free. */
PIVOT_API pivot_status pivot_index_set_format(const pivot_index_set* s, char** out);
/* Parses "1,3;2" into *count handles; release each and then the array with pivot_free. */
PIVOT_API pivot_status pivot_partition_parse(const char* spec, size_t n, pivot_index_set*** out, size_t* count);

/* ---- principal pivot transforms --------------------------------------- */

typedef struct pivot_flop_report {
  uint64_t predicted_ppt_inversion;
  uint64_t predicted_lu_inversion;
  uint64_t measured;
  int has_measured;
} pivot_flop_report;

PIVOT_API pivot_status pivot_ppt(const pivot_matrix* a, const pivot_index_set* alpha, pivot_matrix** out);
PIVOT_API pivot_status pivot_ppt_det(const pivot_matrix* a, const pivot_index_set* alpha, double* out);
/* Sequential inversion over the given blocks; count == 0 selects singletons.
 * When report is non-null it receives the predictions, and the measured count
 * if every block is a singleton. */
PIVOT_API pivot_status pivot_sequential_inverse(const pivot_matrix* a, const pivot_index_set* const* blocks,
                                                size_t count, pivot_matrix** out, pivot_flop_report* report);
PIVOT_API pivot_status pivot_flop_estimate(size_t n, pivot_flop_report* out);

/* ---- spectra ----------------------------------------------------------- */

/* coeffs receives n+1 ascending coefficients of the characteristic polynomial
 * of ppt(A, alpha); re/im receive the n eigenvalues; rho the spectral radius.
 * Any output pointer may be null. */
PIVOT_API pivot_status pivot_ppt_spectrum(const pivot_matrix* a, const pivot_index_set* alpha, double* coeffs,
                                          double* re, double* im, double* rho);

/* ---- iterative solution ------------------------------------------------ */

typedef enum pivot_alpha_mode {
  PIVOT_ALPHA_NONE = 0,
  PIVOT_ALPHA_FIXED = 1,
  PIVOT_ALPHA_EXHAUSTIVE = 2,
  PIVOT_ALPHA_GREEDY = 3
} pivot_alpha_mode;

typedef struct pivot_solve_config {
  double tol;
  size_t max_iter;
  pivot_alpha_mode mode;
  const pivot_index_set* alpha; /* used with PIVOT_ALPHA_FIXED */
  size_t budget;                /* greedy growth steps, 0 = n */
} pivot_solve_config;

/* tol 1e-10, max_iter 10000, no transform. */
PIVOT_API void pivot_solve_config_init(pivot_solve_config* config);
PIVOT_API pivot_status pivot_solve(const pivot_matrix* a, const double* b, size_t len,
                                   const pivot_solve_config* config, pivot_solve_result** out);
PIVOT_API void pivot_solve_result_destroy(pivot_solve_result* r);
PIVOT_API const double* pivot_solve_result_solution(const pivot_solve_result* r, size_t* len);
PIVOT_API size_t pivot_solve_result_iterations(const pivot_solve_result* r);
PIVOT_API int pivot_solve_result_converged(const pivot_solve_result* r);
PIVOT_API int pivot_solve_result_diverged(const pivot_solve_result* r);
PIVOT_API double pivot_solve_result_rho(const pivot_solve_result* r);
/* Index set applied to the iteration matrix, or null when none was. Borrowed. */
PIVOT_API const pivot_index_set* pivot_solve_result_alpha(const pivot_solve_result* r);

/* ---- matrix classes ---------------------------------------------------- */

/* *witness (optional) receives the first failing subset, or null on success. */
PIVOT_API pivot_status pivot_check_p(const pivot_matrix* a, int* verdict, pivot_index_set** witness);
PIVOT_API pivot_status pivot_check_z(const pivot_matrix* a, int* verdict);
/* witness (optional, n entries) receives x > 0 with Ax > 0 when the verdict is true. */
PIVOT_API pivot_status pivot_check_semipositive(const pivot_matrix* a, int* verdict, double* witness);
PIVOT_API pivot_status pivot_random_orthogonal(size_t n, uint64_t seed, pivot_matrix** out);
/* signs such as "++--"; Q = ppt(R, {i : s_i = +1}) for R = random_orthogonal(n, seed). */
PIVOT_API pivot_status pivot_make_s_orthogonal(const char* signs, uint64_t seed, pivot_matrix** q, double* residual);

#ifdef __cplusplus
}
#endif

#endif /* PIVOT_PIVOT_H */
