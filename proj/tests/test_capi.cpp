// Exercises the shared-library surface: handles, error codes, file formats.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sasica.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("sasica_capi_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

sasica_params levy64() {
  sasica_params p;
  sasica_params_default(&p);
  p.alpha = 1.0;
  p.kappa = 0.0;
  p.n = 64;
  return p;
}

}  // namespace

TEST_CASE("params defaults and validation codes") {
  sasica_params p;
  sasica_params_default(&p);
  CHECK(sasica_params_validate(&p) == SASICA_OK);
  p.alpha = 3.0;
  CHECK(sasica_params_validate(&p) == SASICA_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(sasica_last_error()) > 0);
  CHECK(std::string(sasica_status_str(SASICA_ERR_NORMALIZATION)) ==
        "pdf normalization failure");
}

TEST_CASE("mixing matrix through the handle interface") {
  sasica_params p = levy64();
  p.n = 3;
  p.kappa = -std::log(0.9);
  sasica_matrix* m = nullptr;
  REQUIRE(sasica_build_mixing(&p, &m) == SASICA_OK);
  CHECK(sasica_matrix_rows(m) == 3);
  CHECK(sasica_matrix_cols(m) == 3);
  CHECK(sasica_matrix_get(m, 1, 0) == doctest::Approx(0.9));
  CHECK(sasica_matrix_get(m, 2, 0) == doctest::Approx(0.81));
  CHECK(sasica_matrix_get(m, 0, 1) == 0.0);
  const double* data = sasica_matrix_data(m);
  CHECK(data[3] == doctest::Approx(0.9));  // row-major (1,0)
  CHECK(std::isnan(sasica_matrix_get(m, 5, 5)));
  sasica_matrix_free(m);
}

TEST_CASE("synthesis is deterministic and respects the recursion") {
  sasica_params p = levy64();
  std::vector<double> s1(64), w1(64), s2(64), w2(64);
  REQUIRE(sasica_synthesize(&p, 42, 1, s1.data(), w1.data()) == SASICA_OK);
  REQUIRE(sasica_synthesize(&p, 42, 1, s2.data(), w2.data()) == SASICA_OK);
  CHECK(s1 == s2);
  CHECK(w1 == w2);
  double acc = 0.0;
  for (int k = 0; k < 64; ++k) {
    acc += w1[static_cast<std::size_t>(k)];
    CHECK(s1[static_cast<std::size_t>(k)] == doctest::Approx(acc));
  }
}

TEST_CASE("stable helpers") {
  double v = 0.0;
  CHECK(sasica_charfun(1.0, 2.0, 1.0, &v) == SASICA_OK);
  CHECK(v == doctest::Approx(std::exp(-2.0)));
  CHECK(sasica_charfun(9.0, 1.0, 1.0, &v) == SASICA_ERR_INVALID_ARGUMENT);

  std::vector<double> draws(1000);
  CHECK(sasica_sample_sas(1.5, 1.0, draws.size(), 7, draws.data()) ==
        SASICA_OK);

  CHECK(sasica_nu(1.0, 2.0, 1.0, &v) == SASICA_OK);
  CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(sasica_nu(-1.0, 2.0, 1.0, &v) == SASICA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("pdf grid handle and normalization error code") {
  sasica_pdf_grid* g = nullptr;
  REQUIRE(sasica_pdf_grid_create(1.0, 2.0, 0.0, 1, 0, 0.0, &g) == SASICA_OK);
  const int m = sasica_pdf_grid_size(g);
  CHECK(m == 16384);
  CHECK(sasica_pdf_grid_mass(g) == doctest::Approx(1.0).epsilon(1e-6));
  const double* p0 = sasica_pdf_grid_values(g, 0);
  REQUIRE(p0 != nullptr);
  CHECK(p0[m / 2] == doctest::Approx(0.2820947917738781));
  CHECK(sasica_pdf_grid_values(g, 2) == nullptr);
  TempDir dir;
  CHECK(sasica_pdf_grid_write_csv(g, dir.file("g.csv").c_str()) == SASICA_OK);
  sasica_pdf_grid_free(g);

  CHECK(sasica_pdf_grid_create(1.0, 1.0, 0.0, 0, 256, 2.0, &g) ==
        SASICA_ERR_NORMALIZATION);
}

TEST_CASE("transform constructors and criteria") {
  sasica_params p = levy64();
  sasica_matrix *haar = nullptr, *linv = nullptr;
  REQUIRE(sasica_haar(64, &haar) == SASICA_OK);
  REQUIRE(sasica_build_mixing(&p, &linv) == SASICA_OK);
  double resid = 1.0;
  CHECK(sasica_matrix_orthonormality_residual(haar, &resid) == SASICA_OK);
  CHECK(resid < 1e-12);

  std::vector<double> hb(64);
  REQUIRE(sasica_row_alpha_norms(haar, linv, 1.0, hb.data()) == SASICA_OK);
  for (double h : hb) CHECK(h > 0.0);

  sasica_report* rep = nullptr;
  REQUIRE(sasica_redundancy(haar, linv, 1.0, 1, &rep) == SASICA_OK);
  CHECK(sasica_report_kind(rep) == SASICA_CRITERION_R);
  CHECK(sasica_report_size(rep) == 64);
  const double r_haar = sasica_report_value(rep);
  sasica_matrix* grad = nullptr;
  REQUIRE(sasica_report_gradient(rep, &grad) == SASICA_OK);
  CHECK(sasica_matrix_rows(grad) == 64);
  sasica_matrix_free(grad);
  TempDir dir;
  CHECK(sasica_report_write_csv(rep, dir.file("rep.csv").c_str()) ==
        SASICA_OK);
  sasica_report_free(rep);

  sasica_matrix* dct = nullptr;
  REQUIRE(sasica_dct(64, &dct) == SASICA_OK);
  sasica_report* rep2 = nullptr;
  REQUIRE(sasica_redundancy(dct, linv, 1.0, 0, &rep2) == SASICA_OK);
  CHECK(r_haar < sasica_report_value(rep2));  // Fig. 4 ordering at alpha = 1
  CHECK(sasica_report_gradient(rep2, &grad) == SASICA_ERR_INVALID_ARGUMENT);
  sasica_report_free(rep2);

  // MSE at N = 1: the Wiener value
  sasica_matrix* one = nullptr;
  const double unit = 1.0;
  REQUIRE(sasica_matrix_create(1, 1, &unit, &one) == SASICA_OK);
  sasica_report* repm = nullptr;
  REQUIRE(sasica_mse(one, one, 2.0, 1.0, 0, &repm) == SASICA_OK);
  CHECK(sasica_report_value(repm) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  sasica_report_free(repm);
  sasica_matrix_free(one);

  sasica_matrix* klt = nullptr;
  CHECK(sasica_klt(&p, &klt) == SASICA_ERR_INVALID_ARGUMENT);  // kappa = 0
  p.kappa = 0.1;
  REQUIRE(sasica_klt(&p, &klt) == SASICA_OK);
  sasica_matrix_free(klt);

  sasica_matrix* opw = nullptr;
  REQUIRE(sasica_opwav(&p, &opw) == SASICA_OK);
  CHECK(sasica_matrix_orthonormality_residual(opw, &resid) == SASICA_OK);
  CHECK(resid < 1e-10);
  sasica_matrix_free(opw);

  sasica_matrix_free(dct);
  sasica_matrix_free(haar);
  sasica_matrix_free(linv);
}

TEST_CASE("matrix file formats round trip through the API") {
  TempDir dir;
  sasica_matrix* m = nullptr;
  std::vector<double> vals{1.5, -2.25, 3.0, 1e-300, 4.0, -0.0};
  REQUIRE(sasica_matrix_create(2, 3, vals.data(), &m) == SASICA_OK);
  REQUIRE(sasica_matrix_write_csv(m, dir.file("m.csv").c_str()) == SASICA_OK);
  REQUIRE(sasica_matrix_write_bin(m, dir.file("m.bin").c_str()) == SASICA_OK);
  sasica_matrix* c = nullptr;
  sasica_matrix* b = nullptr;
  REQUIRE(sasica_matrix_read_csv(dir.file("m.csv").c_str(), &c) == SASICA_OK);
  REQUIRE(sasica_matrix_read_bin(dir.file("m.bin").c_str(), &b) == SASICA_OK);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(sasica_matrix_get(c, i, j) == vals[static_cast<std::size_t>(i * 3 + j)]);
      CHECK(sasica_matrix_get(b, i, j) == vals[static_cast<std::size_t>(i * 3 + j)]);
    }
  CHECK(sasica_matrix_read_csv(dir.file("absent.csv").c_str(), &c) ==
        SASICA_ERR_IO);
  sasica_matrix_free(m);
  sasica_matrix_free(c);
  sasica_matrix_free(b);
}

TEST_CASE("optimizer and matching through the API") {
  sasica_params p;
  sasica_params_default(&p);
  p.alpha = 2.0;
  p.kappa = 0.2;
  p.n = 8;
  sasica_opt_options o;
  sasica_opt_options_default(&o);
  o.init = SASICA_INIT_DCT;
  o.starts = 1;
  o.max_iters = 30000;
  sasica_opt_result* res = nullptr;
  REQUIRE(sasica_optimize(&p, SASICA_CRITERION_R, &o, &res) == SASICA_OK);
  CHECK(sasica_opt_result_value(res) < 1e-6);
  CHECK(sasica_opt_result_converged(res) == 1);
  CHECK(sasica_opt_result_trace_len(res) ==
        sasica_opt_result_iterations(res));
  int64_t iter = 0;
  double value = 0, mu = 0;
  int accepted = 0;
  REQUIRE(sasica_opt_result_trace_get(res, 0, &iter, &value, &mu,
                                      &accepted) == SASICA_OK);
  CHECK(iter == 1);
  TempDir dir;
  CHECK(sasica_opt_result_trace_write_csv(
            res, dir.file("trace.csv").c_str()) == SASICA_OK);
  sasica_matrix* h = nullptr;
  REQUIRE(sasica_opt_result_matrix(res, &h) == SASICA_OK);

  sasica_matrix* klt = nullptr;
  REQUIRE(sasica_klt(&p, &klt) == SASICA_OK);
  double dist = -1.0;
  std::vector<int32_t> perm(8);
  std::vector<double> signs(8);
  REQUIRE(sasica_match_basis(h, klt, &dist, perm.data(), signs.data()) ==
          SASICA_OK);
  CHECK(dist < 0.05);  // gaussian ICA lands on the KLT
  sasica_matrix_free(klt);
  sasica_matrix_free(h);
  sasica_opt_result_free(res);

  sasica_matrix* a = nullptr;
  const double vals[4] = {0.0, 2.0, 1.0, 0.0};
  REQUIRE(sasica_matrix_create(2, 2, vals, &a) == SASICA_OK);
  sasica_matrix* q = nullptr;
  REQUIRE(sasica_project_unitary(a, &q) == SASICA_OK);
  CHECK(sasica_matrix_get(q, 0, 1) == doctest::Approx(1.0));
  CHECK(sasica_matrix_get(q, 1, 0) == doctest::Approx(1.0));
  sasica_matrix_free(q);
  sasica_matrix_free(a);
}

TEST_CASE("asymptotics through the API") {
  sasica_gamma_seq* g = nullptr;
  REQUIRE(sasica_gamma_sequence(0.0, 1.0, 1.0, 2, &g) == SASICA_OK);
  CHECK(sasica_gamma_seq_depth(g) == 2);
  double gamma = 0, weight = 0;
  REQUIRE(sasica_gamma_seq_get(g, 1, &gamma, &weight) == SASICA_OK);
  CHECK(gamma == doctest::Approx(std::sqrt(2.0)));
  CHECK(weight == 0.5);
  REQUIRE(sasica_gamma_seq_get(g, 2, &gamma, &weight) == SASICA_OK);
  CHECK(gamma == doctest::Approx(0.5));
  CHECK(sasica_gamma_seq_scaling(g) == doctest::Approx(0.2));
  CHECK(sasica_gamma_seq_get(g, 3, &gamma, &weight) ==
        SASICA_ERR_INVALID_ARGUMENT);
  sasica_gamma_seq_free(g);

  double value = 0, tail = 0;
  REQUIRE(sasica_limit_r_opwt(0.0, 1.0, 1.0, 40, &value, &tail) == SASICA_OK);
  CHECK(value <= 2.0 * std::log(2.0));
  CHECK(tail < 1e-6);
  REQUIRE(sasica_limit_mse_opwt(0.0, 1.0, 1.0, 1.0, 20, &value, &tail) ==
          SASICA_OK);
  CHECK(value < 1.0);

  int kind = -1;
  double lo = 0, hi = 0;
  REQUIRE(sasica_limit_spectrum(-std::log(0.9), 1.0, 2.0, &kind, &lo, &hi) ==
          SASICA_OK);
  CHECK(kind == 0);
  CHECK(lo == doctest::Approx(0.1));
  CHECK(hi == doctest::Approx(1.9));
  REQUIRE(sasica_limit_spectrum(-std::log(0.9), 1.0, 1.0, &kind, &lo, &hi) ==
          SASICA_OK);
  CHECK(kind == 1);
  double dens = 0;
  REQUIRE(sasica_limit_spectrum_density(-std::log(0.9), 1.0, 2.0, 1.0,
                                        &dens) == SASICA_OK);
  CHECK(dens > 0.0);

  const int32_t ns[2] = {16, 64};
  sasica_theorem1* t = nullptr;
  REQUIRE(sasica_theorem1_run(0.0, 1.0, 1.0, 1.0, ns, 2, &t) == SASICA_OK);
  CHECK(sasica_theorem1_rows(t) == 2);
  int32_t n = 0;
  double rd = 0, ro = 0, md = 0, mo = 0;
  REQUIRE(sasica_theorem1_get(t, 1, &n, &rd, &ro, &md, &mo) == SASICA_OK);
  CHECK(n == 64);
  CHECK(rd > ro);
  int f1 = 0, f2 = 0, f3 = 0, f4 = 0;
  sasica_theorem1_flags(t, &f1, &f2, &f3, &f4);
  CHECK(f1 == 1);
  CHECK(f2 == 1);
  sasica_theorem1_free(t);
}
