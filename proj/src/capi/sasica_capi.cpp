// extern "C" surface over the core. Exceptions stop here: each entry point
// maps them to a status code and stashes the message in thread-local state.

#include "sasica.h"

#include "core/asymptotics.hpp"
#include "core/criteria.hpp"
#include "core/io.hpp"
#include "core/model.hpp"
#include "core/optimizer.hpp"
#include "core/stable.hpp"
#include "core/transforms.hpp"

#include <cstring>
#include <limits>
#include <new>
#include <string>

using RowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct sasica_matrix {
  RowMajor m;
};
struct sasica_pdf_grid {
  sasica::PdfGrid g;
};
struct sasica_report {
  sasica::CriterionReport r;
};
struct sasica_opt_result {
  sasica::OptResult r;
};
struct sasica_gamma_seq {
  sasica::GammaSequence g;
};
struct sasica_theorem1 {
  sasica::Theorem1Report t;
};

namespace {

thread_local std::string g_last_error;

sasica_status fail(sasica_status code, const char* what) {
  g_last_error = what ? what : "";
  return code;
}

template <typename Fn>
sasica_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SASICA_OK;
  } catch (const std::invalid_argument& e) {
    return fail(SASICA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const sasica::NormalizationError& e) {
    return fail(SASICA_ERR_NORMALIZATION, e.what());
  } catch (const sasica::RankDeficientError& e) {
    return fail(SASICA_ERR_RANK_DEFICIENT, e.what());
  } catch (const sasica::RootBracketError& e) {
    return fail(SASICA_ERR_ROOT_BRACKET, e.what());
  } catch (const sasica::OrthonormalityError& e) {
    return fail(SASICA_ERR_ORTHONORMALITY, e.what());
  } catch (const sasica::IoError& e) {
    return fail(SASICA_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SASICA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SASICA_ERR_INTERNAL, e.what());
  }
}

sasica::ModelParams to_core(const sasica_params& p) {
  return {p.alpha, p.kappa, p.T, p.n, p.sigma};
}

sasica_matrix* wrap(const sasica::Matrix& m) {
  auto* h = new sasica_matrix;
  h->m = m;
  return h;
}

sasica_status require(bool ok, const char* what) {
  return ok ? SASICA_OK : fail(SASICA_ERR_INVALID_ARGUMENT, what);
}

}  // namespace

extern "C" {

const char* sasica_status_str(sasica_status status) {
  switch (status) {
    case SASICA_OK: return "ok";
    case SASICA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SASICA_ERR_NORMALIZATION: return "pdf normalization failure";
    case SASICA_ERR_RANK_DEFICIENT: return "rank-deficient matrix";
    case SASICA_ERR_ROOT_BRACKET: return "root bracketing failure";
    case SASICA_ERR_ORTHONORMALITY: return "orthonormality validation failure";
    case SASICA_ERR_IO: return "i/o failure";
    case SASICA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sasica_last_error(void) { return g_last_error.c_str(); }

const char* sasica_version(void) { return "1.0.0"; }

void sasica_params_default(sasica_params* p) {
  if (!p) return;
  p->alpha = 2.0;
  p->kappa = 0.0;
  p->T = 1.0;
  p->n = 64;
  p->sigma = 1.0;
}

sasica_status sasica_params_validate(const sasica_params* p) {
  if (!p) return fail(SASICA_ERR_INVALID_ARGUMENT, "null params");
  return guarded([&] { to_core(*p).validate(); });
}

sasica_status sasica_matrix_create(int32_t rows, int32_t cols,
                                   const double* row_major,
                                   sasica_matrix** out) {
  if (!out || !row_major || rows < 1 || cols < 1)
    return fail(SASICA_ERR_INVALID_ARGUMENT, "matrix_create: bad arguments");
  return guarded([&] {
    auto* h = new sasica_matrix;
    h->m = Eigen::Map<const RowMajor>(row_major, rows, cols);
    *out = h;
  });
}

int32_t sasica_matrix_rows(const sasica_matrix* m) {
  return m ? static_cast<int32_t>(m->m.rows()) : 0;
}

int32_t sasica_matrix_cols(const sasica_matrix* m) {
  return m ? static_cast<int32_t>(m->m.cols()) : 0;
}

const double* sasica_matrix_data(const sasica_matrix* m) {
  return m ? m->m.data() : nullptr;
}

double sasica_matrix_get(const sasica_matrix* m, int32_t i, int32_t j) {
  if (!m || i < 0 || j < 0 || i >= m->m.rows() || j >= m->m.cols())
    return std::numeric_limits<double>::quiet_NaN();
  return m->m(i, j);
}

sasica_status sasica_matrix_orthonormality_residual(const sasica_matrix* m,
                                                    double* out) {
  if (!m || !out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = sasica::orthonormality_residual(m->m); });
}

void sasica_matrix_free(sasica_matrix* m) { delete m; }

sasica_status sasica_matrix_write_csv(const sasica_matrix* m,
                                      const char* path) {
  if (!m || !path) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { sasica::write_matrix_csv(m->m, path); });
}

sasica_status sasica_matrix_read_csv(const char* path, sasica_matrix** out) {
  if (!path || !out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = wrap(sasica::read_matrix_csv(path)); });
}

sasica_status sasica_matrix_write_bin(const sasica_matrix* m,
                                      const char* path) {
  if (!m || !path) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { sasica::write_matrix_bin(m->m, path); });
}

sasica_status sasica_matrix_read_bin(const char* path, sasica_matrix** out) {
  if (!path || !out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = wrap(sasica::read_matrix_bin(path)); });
}

sasica_status sasica_build_mixing(const sasica_params* p, sasica_matrix** out) {
  if (!p || !out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = wrap(sasica::build_mixing(to_core(*p))); });
}

sasica_status sasica_build_whitening(const sasica_params* p,
                                     sasica_matrix** out) {
  if (!p || !out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = wrap(sasica::build_whitening(to_core(*p))); });
}

sasica_status sasica_synthesize(const sasica_params* p, uint64_t seed,
                                int unit_dispersion, double* samples,
                                double* innovations) {
  if (!p || !samples || !innovations)
    return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const sasica::SignalPath path =
        sasica::synthesize(to_core(*p), seed, unit_dispersion != 0);
    std::memcpy(samples, path.samples.data(),
                sizeof(double) * static_cast<std::size_t>(p->n));
    std::memcpy(innovations, path.innovations.data(),
                sizeof(double) * static_cast<std::size_t>(p->n));
  });
}

sasica_status sasica_charfun(double alpha, double c, double omega,
                             double* out) {
  if (!out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null out");
  return guarded([&] { *out = sasica::charfun({alpha, c}, omega); });
}

sasica_status sasica_sample_sas(double alpha, double c, size_t n,
                                uint64_t seed, double* out) {
  if (!out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null out");
  return guarded([&] {
    const std::vector<double> v = sasica::sample_sas({alpha, c}, n, seed);
    std::memcpy(out, v.data(), sizeof(double) * v.size());
  });
}

sasica_status sasica_pdf_grid_create(double hbar, double alpha, double sigma,
                                     int max_order, int m, double x_max,
                                     sasica_pdf_grid** out) {
  if (!out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null out");
  return guarded([&] {
    auto* h = new sasica_pdf_grid;
    if (m == 0 && x_max == 0.0)
      h->g = sasica::pdf_grid(hbar, alpha, sigma, max_order);
    else
      h->g = sasica::pdf_grid(hbar, alpha, sigma, max_order, m, x_max);
    *out = h;
  });
}

int32_t sasica_pdf_grid_size(const sasica_pdf_grid* g) {
  return g ? g->g.M : 0;
}

double sasica_pdf_grid_x0(const sasica_pdf_grid* g) { return g ? g->g.x0 : 0; }

double sasica_pdf_grid_dx(const sasica_pdf_grid* g) { return g ? g->g.dx : 0; }

double sasica_pdf_grid_mass(const sasica_pdf_grid* g) {
  return g ? g->g.mass() : 0;
}

const double* sasica_pdf_grid_values(const sasica_pdf_grid* g, int order) {
  if (!g || order < 0 || order > g->g.max_order) return nullptr;
  return g->g.values[static_cast<std::size_t>(order)].data();
}

sasica_status sasica_pdf_grid_write_csv(const sasica_pdf_grid* g,
                                        const char* path) {
  if (!g || !path) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<std::string> headers = {"x"};
    std::vector<std::vector<double>> cols;
    std::vector<double> xs(static_cast<std::size_t>(g->g.M));
    for (int i = 0; i < g->g.M; ++i)
      xs[static_cast<std::size_t>(i)] = g->g.x(i);
    cols.push_back(std::move(xs));
    for (int k = 0; k <= g->g.max_order; ++k) {
      headers.push_back("p" + std::to_string(k));
      cols.push_back(g->g.values[static_cast<std::size_t>(k)]);
    }
    sasica::write_columns_csv(headers, cols, path);
  });
}

void sasica_pdf_grid_free(sasica_pdf_grid* g) { delete g; }

sasica_status sasica_nu(double u, double alpha, double sigma, double* out) {
  if (!out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null out");
  return guarded([&] { *out = sasica::nu(u, alpha, sigma); });
}

sasica_status sasica_identity(int32_t n, sasica_matrix** out) {
  if (!out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null out");
  return guarded([&] { *out = wrap(sasica::identity_matrix(n).entries); });
}

sasica_status sasica_dct(int32_t n, sasica_matrix** out) {
  if (!out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null out");
  return guarded([&] { *out = wrap(sasica::dct_matrix(n).entries); });
}

sasica_status sasica_haar(int32_t n, sasica_matrix** out) {
  if (!out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null out");
  return guarded([&] { *out = wrap(sasica::haar_matrix(n).entries); });
}

sasica_status sasica_opwav(const sasica_params* p, sasica_matrix** out) {
  if (!p || !out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = wrap(sasica::opwav_matrix(to_core(*p)).entries); });
}

sasica_status sasica_klt(const sasica_params* p, sasica_matrix** out) {
  if (!p || !out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = wrap(sasica::klt_matrix(to_core(*p)).entries); });
}

sasica_status sasica_row_alpha_norms(const sasica_matrix* H,
                                     const sasica_matrix* Linv, double alpha,
                                     double* out) {
  if (!H || !Linv || !out)
    return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const sasica::Vector v =
        sasica::row_alpha_norms(H->m, Linv->m, alpha);
    std::memcpy(out, v.data(), sizeof(double) * static_cast<std::size_t>(v.size()));
  });
}

sasica_status sasica_redundancy(const sasica_matrix* H,
                                const sasica_matrix* Linv, double alpha,
                                int with_gradient, sasica_report** out) {
  if (!H || !Linv || !out)
    return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto* h = new sasica_report;
    h->r = sasica::redundancy_R(H->m, Linv->m, alpha, with_gradient != 0);
    *out = h;
  });
}

sasica_status sasica_mse(const sasica_matrix* H, const sasica_matrix* Linv,
                         double alpha, double sigma, int with_gradient,
                         sasica_report** out) {
  if (!H || !Linv || !out)
    return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto* h = new sasica_report;
    h->r = sasica::mse_criterion(H->m, Linv->m, alpha, sigma,
                                 with_gradient != 0);
    *out = h;
  });
}

double sasica_report_value(const sasica_report* r) {
  return r ? r->r.value : std::numeric_limits<double>::quiet_NaN();
}

int32_t sasica_report_size(const sasica_report* r) {
  return r ? static_cast<int32_t>(r->r.hbars.size()) : 0;
}

const double* sasica_report_hbars(const sasica_report* r) {
  return r ? r->r.hbars.data() : nullptr;
}

int sasica_report_kind(const sasica_report* r) {
  return (r && r->r.kind == sasica::CriterionKind::MSE) ? SASICA_CRITERION_MSE
                                                        : SASICA_CRITERION_R;
}

int sasica_report_gradient_singular(const sasica_report* r) {
  return r && r->r.gradient_singular ? 1 : 0;
}

sasica_status sasica_report_gradient(const sasica_report* r,
                                     sasica_matrix** out) {
  if (!r || !out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  if (!r->r.gradient)
    return fail(SASICA_ERR_INVALID_ARGUMENT, "report has no gradient");
  return guarded([&] { *out = wrap(*r->r.gradient); });
}

sasica_status sasica_report_write_csv(const sasica_report* r,
                                      const char* path) {
  if (!r || !path) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { sasica::write_report_csv(r->r, path); });
}

void sasica_report_free(sasica_report* r) { delete r; }

void sasica_opt_options_default(sasica_opt_options* o) {
  if (!o) return;
  o->mu0 = 0.1;
  o->a = 1.1;
  o->b = 0.5;
  o->max_iters = 100000;
  o->tol = 1e-10;
  o->init = SASICA_INIT_RANDOM;
  o->seed = 0;
  o->starts = 5;
  o->smooth_continuation = 1;
}

sasica_status sasica_project_unitary(const sasica_matrix* a,
                                     sasica_matrix** out) {
  if (!a || !out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = wrap(sasica::project_unitary(a->m)); });
}

sasica_status sasica_optimize(const sasica_params* p,
                              sasica_criterion criterion,
                              const sasica_opt_options* o,
                              sasica_opt_result** out) {
  if (!p || !o || !out)
    return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  if (o->init < SASICA_INIT_IDENTITY || o->init > SASICA_INIT_RANDOM)
    return fail(SASICA_ERR_INVALID_ARGUMENT, "bad init kind");
  return guarded([&] {
    sasica::OptimizerOptions opts;
    opts.mu0 = o->mu0;
    opts.a = o->a;
    opts.b = o->b;
    opts.max_iters = o->max_iters;
    opts.tol = o->tol;
    opts.init = static_cast<sasica::InitKind>(o->init);
    opts.seed = o->seed;
    opts.smooth_continuation = o->smooth_continuation != 0;
    const sasica::CriterionKind kind = criterion == SASICA_CRITERION_MSE
                                           ? sasica::CriterionKind::MSE
                                           : sasica::CriterionKind::R;
    auto* h = new sasica_opt_result;
    h->r = sasica::optimize_multistart(to_core(*p), kind, opts,
                                       o->starts > 0 ? o->starts : 1);
    *out = h;
  });
}

double sasica_opt_result_value(const sasica_opt_result* r) {
  return r ? r->r.value : std::numeric_limits<double>::quiet_NaN();
}

int64_t sasica_opt_result_iterations(const sasica_opt_result* r) {
  return r ? r->r.iterations : 0;
}

int sasica_opt_result_converged(const sasica_opt_result* r) {
  return r && r->r.converged ? 1 : 0;
}

sasica_status sasica_opt_result_matrix(const sasica_opt_result* r,
                                       sasica_matrix** out) {
  if (!r || !out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = wrap(r->r.H_opt.entries); });
}

int64_t sasica_opt_result_trace_len(const sasica_opt_result* r) {
  return r ? static_cast<int64_t>(r->r.trace.size()) : 0;
}

sasica_status sasica_opt_result_trace_get(const sasica_opt_result* r,
                                          int64_t i, int64_t* iter,
                                          double* value, double* mu,
                                          int* accepted) {
  if (!r || i < 0 || i >= static_cast<int64_t>(r->r.trace.size()))
    return fail(SASICA_ERR_INVALID_ARGUMENT, "trace index out of range");
  const sasica::TracePoint& t = r->r.trace[static_cast<std::size_t>(i)];
  if (iter) *iter = t.iter;
  if (value) *value = t.value;
  if (mu) *mu = t.mu;
  if (accepted) *accepted = t.accepted ? 1 : 0;
  return SASICA_OK;
}

sasica_status sasica_opt_result_trace_write_csv(const sasica_opt_result* r,
                                                const char* path) {
  if (!r || !path) return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { sasica::write_trace_csv(r->r.trace, path); });
}

void sasica_opt_result_free(sasica_opt_result* r) { delete r; }

sasica_status sasica_match_basis(const sasica_matrix* H,
                                 const sasica_matrix* Href, double* distance,
                                 int32_t* permutation, double* signs) {
  if (!H || !Href || !distance)
    return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const sasica::MatchResult m = sasica::match_basis(H->m, Href->m);
    *distance = m.distance;
    if (permutation)
      for (std::size_t i = 0; i < m.permutation.size(); ++i)
        permutation[i] = m.permutation[i];
    if (signs)
      for (std::size_t i = 0; i < m.signs.size(); ++i) signs[i] = m.signs[i];
  });
}

sasica_status sasica_gamma_sequence(double kappa, double T, double alpha,
                                    int k, sasica_gamma_seq** out) {
  if (!out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null out");
  return guarded([&] {
    auto* h = new sasica_gamma_seq;
    h->g = sasica::gamma_sequence(kappa, T, alpha, k);
    *out = h;
  });
}

int32_t sasica_gamma_seq_depth(const sasica_gamma_seq* g) {
  return g ? g->g.K : 0;
}

sasica_status sasica_gamma_seq_get(const sasica_gamma_seq* g, int32_t k,
                                   double* gamma, double* weight) {
  if (!g || k < 1 || k > g->g.K)
    return fail(SASICA_ERR_INVALID_ARGUMENT, "gamma index out of range");
  if (gamma) *gamma = g->g.gammas[static_cast<std::size_t>(k - 1)];
  if (weight) *weight = g->g.weight(k);
  return SASICA_OK;
}

double sasica_gamma_seq_scaling(const sasica_gamma_seq* g) {
  return g ? g->g.scaling_gamma : std::numeric_limits<double>::quiet_NaN();
}

void sasica_gamma_seq_free(sasica_gamma_seq* g) { delete g; }

sasica_status sasica_limit_r_opwt(double kappa, double T, double alpha, int k,
                                  double* value, double* tail_bound) {
  if (!value) return fail(SASICA_ERR_INVALID_ARGUMENT, "null out");
  return guarded([&] {
    const sasica::LimitValue v = sasica::limit_R_opwt(kappa, T, alpha, k);
    *value = v.value;
    if (tail_bound) *tail_bound = v.tail_bound;
  });
}

sasica_status sasica_limit_mse_opwt(double kappa, double T, double alpha,
                                    double sigma, int k, double* value,
                                    double* tail_bound) {
  if (!value) return fail(SASICA_ERR_INVALID_ARGUMENT, "null out");
  return guarded([&] {
    const sasica::LimitValue v =
        sasica::limit_mse_opwt(kappa, T, alpha, sigma, k);
    *value = v.value;
    if (tail_bound) *tail_bound = v.tail_bound;
  });
}

sasica_status sasica_limit_spectrum(double kappa, double T, double alpha,
                                    int* kind, double* lo, double* hi) {
  if (!kind) return fail(SASICA_ERR_INVALID_ARGUMENT, "null out");
  return guarded([&] {
    const sasica::LimitSpectrum s = sasica::limit_spectrum_dct(kappa, T, alpha);
    *kind = s.kind == sasica::SpectrumKind::ContinuousDensity ? 0 : 1;
    if (lo) *lo = s.support_lo();
    if (hi) *hi = s.support_hi();
  });
}

sasica_status sasica_limit_spectrum_density(double kappa, double T,
                                            double alpha, double gamma,
                                            double* out) {
  if (!out) return fail(SASICA_ERR_INVALID_ARGUMENT, "null out");
  return guarded([&] {
    *out = sasica::limit_spectrum_dct(kappa, T, alpha).density(gamma);
  });
}

sasica_status sasica_theorem1_run(double kappa, double T, double alpha,
                                  double sigma, const int32_t* n_list,
                                  int32_t n_count, sasica_theorem1** out) {
  if (!n_list || n_count < 1 || !out)
    return fail(SASICA_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<int> ns(n_list, n_list + n_count);
    auto* h = new sasica_theorem1;
    h->t = sasica::theorem1_check(kappa, T, alpha, sigma, ns);
    *out = h;
  });
}

int32_t sasica_theorem1_rows(const sasica_theorem1* t) {
  return t ? static_cast<int32_t>(t->t.rows.size()) : 0;
}

sasica_status sasica_theorem1_get(const sasica_theorem1* t, int32_t i,
                                  int32_t* n, double* r_dct, double* r_opwt,
                                  double* mse_dct, double* mse_opwt) {
  if (!t || i < 0 || i >= static_cast<int32_t>(t->t.rows.size()))
    return fail(SASICA_ERR_INVALID_ARGUMENT, "row index out of range");
  const sasica::Theorem1Row& row = t->t.rows[static_cast<std::size_t>(i)];
  if (n) *n = row.N;
  if (r_dct) *r_dct = row.r_dct;
  if (r_opwt) *r_opwt = row.r_opwt;
  if (mse_dct) *mse_dct = row.mse_dct;
  if (mse_opwt) *mse_opwt = row.mse_opwt;
  return SASICA_OK;
}

void sasica_theorem1_bounds(const sasica_theorem1* t, double* r_opwt_bound,
                            double* mse_opwt_bound) {
  if (!t) return;
  if (r_opwt_bound) *r_opwt_bound = t->t.r_opwt_bound;
  if (mse_opwt_bound) *mse_opwt_bound = t->t.mse_opwt_bound;
}

void sasica_theorem1_flags(const sasica_theorem1* t, int* r_dct_increasing,
                           int* r_opwt_bounded, int* mse_dct_increasing,
                           int* mse_opwt_bounded) {
  if (!t) return;
  if (r_dct_increasing) *r_dct_increasing = t->t.r_dct_increasing;
  if (r_opwt_bounded) *r_opwt_bounded = t->t.r_opwt_bounded;
  if (mse_dct_increasing) *mse_dct_increasing = t->t.mse_dct_increasing;
  if (mse_opwt_bounded) *mse_opwt_bounded = t->t.mse_opwt_bounded;
}

void sasica_theorem1_free(sasica_theorem1* t) { delete t; }

}  // extern "C"
