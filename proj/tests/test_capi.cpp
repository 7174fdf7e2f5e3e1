#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "pivot/pivot.h"

namespace {

pivot_matrix* make(size_t n, std::vector<double> v) {
  pivot_matrix* m = nullptr;
  REQUIRE(pivot_matrix_create(n, n, v.data(), &m) == PIVOT_OK);
  return m;
}

pivot_index_set* alpha(const char* spec, size_t n) {
  pivot_index_set* s = nullptr;
  REQUIRE(pivot_index_set_parse(spec, n, &s) == PIVOT_OK);
  return s;
}

}  // namespace

TEST_CASE("c api: transform, format and errors") {
  pivot_matrix* a = make(3, {1, 2, 1, 1, 1, 0, 2, 8, 1});
  pivot_index_set* s = alpha("1,3", 3);
  CHECK(pivot_index_set_size(s) == 2);
  CHECK(pivot_index_set_get(s, 1) == 3);
  CHECK(pivot_index_set_ambient(s) == 3);

  pivot_matrix* b = nullptr;
  REQUIRE(pivot_ppt(a, s, &b) == PIVOT_OK);
  const double want[9] = {-1, -6, 1, -1, -5, 1, 2, 4, -1};
  for (int k = 0; k < 9; ++k) CHECK(std::abs(pivot_matrix_data(b)[k] - want[k]) <= 1e-12);

  char* text = nullptr;
  REQUIRE(pivot_matrix_format(b, &text) == PIVOT_OK);
  CHECK(std::string(text) == "3\n-1 -6 1\n-1 -5 1\n2 4 -1\n");
  pivot_free(text);

  double det = 0;
  REQUIRE(pivot_ppt_det(a, s, &det) == PIVOT_OK);
  CHECK(det == doctest::Approx(-1.0));

  pivot_index_set* bad = nullptr;
  CHECK(pivot_index_set_parse("7", 3, &bad) == PIVOT_ERR_INPUT);
  CHECK(bad == nullptr);
  CHECK(std::strlen(pivot_last_error()) > 0);
  CHECK(pivot_ppt(nullptr, s, &b) == PIVOT_ERR_INPUT);

  pivot_matrix* swap = make(2, {0, 1, 1, 0});
  pivot_index_set* first = alpha("1", 2);
  pivot_matrix* out = nullptr;
  CHECK(pivot_ppt(swap, first, &out) == PIVOT_ERR_SINGULAR);
  CHECK(std::string(pivot_last_error()).find("{1}") != std::string::npos);
  CHECK(std::string(pivot_status_name(PIVOT_ERR_SINGULAR)) == "singular block");

  pivot_matrix_destroy(swap);
  pivot_index_set_destroy(first);
  pivot_matrix_destroy(b);
  pivot_index_set_destroy(s);
  pivot_matrix_destroy(a);
}

TEST_CASE("c api: sequential inversion with flop report") {
  pivot_matrix* a = make(3, {1, 2, 1, 1, 1, 0, 2, 8, 1});
  pivot_index_set** blocks = nullptr;
  size_t count = 0;
  REQUIRE(pivot_partition_parse("1,3;2", 3, &blocks, &count) == PIVOT_OK);
  REQUIRE(count == 2);

  pivot_matrix* inv = nullptr;
  pivot_flop_report rep{};
  REQUIRE(pivot_sequential_inverse(a, blocks, count, &inv, &rep) == PIVOT_OK);
  CHECK(rep.predicted_ppt_inversion == 13);
  CHECK(rep.has_measured == 0);
  CHECK(std::abs(pivot_matrix_data(inv)[1] - 1.2) <= 1e-12);
  pivot_matrix_destroy(inv);

  REQUIRE(pivot_sequential_inverse(a, nullptr, 0, &inv, &rep) == PIVOT_OK);
  CHECK(rep.has_measured == 1);
  CHECK(rep.measured == 27);
  pivot_matrix_destroy(inv);

  for (size_t k = 0; k < count; ++k) pivot_index_set_destroy(blocks[k]);
  pivot_free(blocks);
  pivot_matrix_destroy(a);
}

TEST_CASE("c api: spectrum and solver") {
  pivot_matrix* t = make(3, {0, 1.5, 0.25, 1.5, 0, 2.5, 0.5, 0.5, 0});
  pivot_index_set* s = alpha("1,2", 3);
  double c[4], re[3], im[3], rho = 0;
  REQUIRE(pivot_ppt_spectrum(t, s, c, re, im, &rho) == PIVOT_OK);
  CHECK(c[3] == doctest::Approx(1.0));
  CHECK(c[2] == doctest::Approx(11.0 / 12));
  CHECK(std::abs(rho - 2.0 / 3) <= 1e-9);
  REQUIRE(pivot_ppt_spectrum(t, s, nullptr, nullptr, nullptr, nullptr) == PIVOT_OK);

  pivot_matrix* a = make(3, {1, -1.5, -0.25, -1.5, 1, -2.5, -0.5, -0.5, 1});
  const double b[3] = {1, 1, 1};
  pivot_solve_config cfg;
  pivot_solve_config_init(&cfg);
  pivot_solve_result* r = nullptr;
  REQUIRE(pivot_solve(a, b, 3, &cfg, &r) == PIVOT_OK);
  CHECK(pivot_solve_result_converged(r) == 0);
  CHECK(pivot_solve_result_diverged(r) == 1);
  CHECK(pivot_solve_result_alpha(r) == nullptr);
  pivot_solve_result_destroy(r);

  cfg.mode = PIVOT_ALPHA_FIXED;
  cfg.alpha = s;
  REQUIRE(pivot_solve(a, b, 3, &cfg, &r) == PIVOT_OK);
  CHECK(pivot_solve_result_converged(r) == 1);
  size_t len = 0;
  const double* x = pivot_solve_result_solution(r, &len);
  CHECK(len == 3);
  CHECK(x[2] == doctest::Approx(-0.26666666666666666));
  CHECK(std::abs(pivot_solve_result_rho(r) - 2.0 / 3) <= 0.05);
  CHECK(pivot_index_set_size(pivot_solve_result_alpha(r)) == 2);
  pivot_solve_result_destroy(r);

  CHECK(pivot_solve(a, b, 2, &cfg, &r) == PIVOT_ERR_INPUT);

  pivot_index_set_destroy(s);
  pivot_matrix_destroy(a);
  pivot_matrix_destroy(t);
}

TEST_CASE("c api: class checks and s-orthogonal matrices") {
  pivot_matrix* a = make(3, {1, 2, 1, 1, 1, 0, 2, 8, 1});
  int verdict = -1;
  pivot_index_set* witness = nullptr;
  REQUIRE(pivot_check_p(a, &verdict, &witness) == PIVOT_OK);
  CHECK(verdict == 0);
  char* text = nullptr;
  REQUIRE(pivot_index_set_format(witness, &text) == PIVOT_OK);
  CHECK(std::string(text) == "{1,2}");
  pivot_free(text);
  pivot_index_set_destroy(witness);

  REQUIRE(pivot_check_z(a, &verdict) == PIVOT_OK);
  CHECK(verdict == 0);

  double x[3];
  pivot_matrix* id = make(3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  REQUIRE(pivot_check_semipositive(id, &verdict, x) == PIVOT_OK);
  CHECK(verdict == 1);
  CHECK(x[0] == 1.0);

  pivot_matrix* q = nullptr;
  double residual = 1;
  REQUIRE(pivot_make_s_orthogonal("++--", 5, &q, &residual) == PIVOT_OK);
  CHECK(residual <= 4e-8);
  CHECK(pivot_matrix_rows(q) == 4);
  pivot_matrix_destroy(q);
  CHECK(pivot_make_s_orthogonal("+?", 5, &q, &residual) == PIVOT_ERR_INPUT);

  pivot_matrix* r = nullptr;
  REQUIRE(pivot_random_orthogonal(3, 1, &r) == PIVOT_OK);
  pivot_matrix_destroy(r);

  pivot_matrix_destroy(id);
  pivot_matrix_destroy(a);
}
