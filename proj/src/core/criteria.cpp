#include "core/criteria.hpp"

#include "core/stable.hpp"

#include <cmath>
#include <limits>

namespace sasica {

namespace {

// Relative floor under which a product entry counts as a structural zero.
constexpr double kZeroTol = 1e-13;
// Absolute floor for the alpha < 1 subgradient convention.
constexpr double kSubgradTol = 1e-12;

void check_dims(const Matrix& H, const Matrix& Linv) {
  if (H.rows() != H.cols() || Linv.rows() != Linv.cols() ||
      H.cols() != Linv.rows())
    throw std::invalid_argument("criteria: dimension mismatch");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 2.0))
    throw std::invalid_argument("criteria: alpha must lie in (0, 2]");
}

// hbar_i^alpha (exact or eps-smoothed) and the per-entry signed power
// S_ir = a (a^2+eps^2)^{alpha/2-1} (eps > 0) or sgn(a)|a|^{alpha-1} (eps = 0).
struct GradParts {
  Vector hbar_pow;  // sum_r of the |.|^alpha surrogate
  Matrix S;
  bool singular = false;
};

GradParts grad_parts(const Matrix& A, double alpha, double eps) {
  GradParts parts;
  const Eigen::Index n = A.rows(), m = A.cols();
  parts.hbar_pow = Vector::Zero(n);
  parts.S.resize(n, m);
  // alpha = 1 and alpha = 2 dominate the optimizer loop; spare them the pow.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index r = 0; r < m; ++r) {
      const double a = A(i, r);
      if (eps > 0.0) {
        const double q = a * a + eps * eps;
        if (alpha == 1.0) {
          const double s = std::sqrt(q);
          parts.hbar_pow[i] += s;
          parts.S(i, r) = a / s;
        } else if (alpha == 2.0) {
          parts.hbar_pow[i] += q;
          parts.S(i, r) = a;
        } else {
          parts.hbar_pow[i] += std::pow(q, 0.5 * alpha);
          parts.S(i, r) = a * std::pow(q, 0.5 * alpha - 1.0);
        }
      } else {
        const double mag = std::abs(a);
        parts.hbar_pow[i] += (alpha == 1.0)   ? mag
                             : (alpha == 2.0) ? mag * mag
                                              : std::pow(mag, alpha);
        if (alpha < 1.0 && mag < kSubgradTol) {
          parts.S(i, r) = 0.0;
          parts.singular = true;
        } else if (alpha == 1.0) {
          parts.S(i, r) = static_cast<double>((a > 0) - (a < 0));
        } else if (alpha == 2.0) {
          parts.S(i, r) = a;
        } else {
          parts.S(i, r) = (mag == 0.0)
                              ? 0.0
                              : ((a > 0) - (a < 0)) * std::pow(mag, alpha - 1.0);
        }
      }
    }
  }
  return parts;
}

}  // namespace

Vector row_alpha_norms(const Matrix& H, const Matrix& Linv, double alpha) {
  check_dims(H, Linv);
  check_alpha(alpha);
  const Matrix A = H * Linv;
  const Eigen::Index n = A.rows();
  Vector out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double rowmax = A.row(i).cwiseAbs().maxCoeff();
    const double floor = kZeroTol * rowmax;
    double acc = 0.0;
    for (Eigen::Index r = 0; r < A.cols(); ++r) {
      const double mag = std::abs(A(i, r));
      if (mag <= floor) continue;
      acc += (alpha == 1.0)   ? mag
             : (alpha == 2.0) ? mag * mag
                              : std::pow(mag, alpha);
    }
    out[i] = (alpha == 1.0)   ? acc
             : (alpha == 2.0) ? std::sqrt(acc)
                              : std::pow(acc, 1.0 / alpha);
  }
  return out;
}

CriterionReport redundancy_R(const Matrix& H, const Matrix& Linv, double alpha,
                             bool with_gradient) {
  CriterionReport rep;
  rep.kind = CriterionKind::R;
  rep.alpha = alpha;
  rep.hbars = row_alpha_norms(H, Linv, alpha);
  rep.value = rep.hbars.array().log().mean();
  if (with_gradient) {
    bool singular = false;
    rep.gradient = grad_R(H, Linv, alpha, &singular);
    rep.gradient_singular = singular;
  }
  return rep;
}

Matrix grad_R(const Matrix& H, const Matrix& Linv, double alpha,
              bool* singular, double smooth_eps) {
  check_dims(H, Linv);
  check_alpha(alpha);
  const Matrix A = H * Linv;
  const GradParts parts = grad_parts(A, alpha, smooth_eps);
  if (singular) *singular = parts.singular;
  const double n = static_cast<double>(H.rows());
  return (parts.hbar_pow.cwiseInverse() / n).asDiagonal() *
         (parts.S * Linv.transpose());
}

double JCache::j(double hbar) {
  const double scaled = hbar * 1e9;
  if (scaled < 9.0e18) {
    const std::int64_t key = static_cast<std::int64_t>(std::llround(scaled));
    const auto it = j_.find(key);
    if (it != j_.end()) return it->second;
    const double v = fisher_integral(pdf_grid(hbar, alpha_, sigma_, 1));
    j_.emplace(key, v);
    return v;
  }
  return fisher_integral(pdf_grid(hbar, alpha_, sigma_, 1));
}

namespace {

// d/dhbar of J(hbar) = int (p^(1))^2 / p^(0), using
//   d_h p   = -(p + x p^(1) + sigma^2 p^(2)) / h
//   d_h p^1 = -(2 p^(1) + x p^(2) + sigma^2 p^(3)) / h.
double dj_direct(double hbar, double alpha, double sigma) {
  const PdfGrid g = pdf_grid(hbar, alpha, sigma, 3);
  const double s2 = sigma * sigma;
  const std::vector<double>& p0 = g.values[0];
  const std::vector<double>& p1 = g.values[1];
  const std::vector<double>& p2 = g.values[2];
  const std::vector<double>& p3 = g.values[3];
  double acc = 0.0;
  for (int i = 0; i < g.M; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    if (p0[k] < 1e-300) continue;
    const double x = g.x(i);
    const double ratio = p1[k] / p0[k];
    const double dhp = -(p0[k] + x * p1[k] + s2 * p2[k]) / hbar;
    const double dhp1 = -(2.0 * p1[k] + x * p2[k] + s2 * p3[k]) / hbar;
    double term = 2.0 * dhp1 * ratio - dhp * ratio * ratio;
    if (i == 0 || i == g.M - 1) term *= 0.5;
    acc += term;
  }
  return acc * g.dx;
}

}  // namespace

double JCache::dj(double hbar) {
  const double scaled = hbar * 1e9;
  if (scaled < 9.0e18) {
    const std::int64_t key = static_cast<std::int64_t>(std::llround(scaled));
    const auto it = dj_.find(key);
    if (it != dj_.end()) return it->second;
    const double v = dj_direct(hbar, alpha_, sigma_);
    dj_.emplace(key, v);
    return v;
  }
  return dj_direct(hbar, alpha_, sigma_);
}

CriterionReport mse_criterion(const Matrix& H, const Matrix& Linv,
                              double alpha, double sigma, bool with_gradient,
                              JCache* cache) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("mse_criterion: sigma must be > 0");
  CriterionReport rep;
  rep.kind = CriterionKind::MSE;
  rep.alpha = alpha;
  rep.sigma = sigma;
  rep.hbars = row_alpha_norms(H, Linv, alpha);
  JCache local(alpha, sigma);
  JCache& jc = cache ? *cache : local;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rep.hbars.size(); ++i) sum += jc.j(rep.hbars[i]);
  const double s2 = sigma * sigma;
  rep.value = s2 - s2 * s2 * sum / static_cast<double>(rep.hbars.size());
  if (with_gradient) {
    bool singular = false;
    rep.gradient = grad_MSE(H, Linv, alpha, sigma, &singular, 0.0, &jc);
    rep.gradient_singular = singular;
  }
  return rep;
}

Matrix grad_MSE(const Matrix& H, const Matrix& Linv, double alpha,
                double sigma, bool* singular, double smooth_eps,
                JCache* cache) {
  check_dims(H, Linv);
  check_alpha(alpha);
  if (!(sigma > 0.0))
    throw std::invalid_argument("grad_MSE: sigma must be > 0");
  const Matrix A = H * Linv;
  const GradParts parts = grad_parts(A, alpha, smooth_eps);
  if (singular) *singular = parts.singular;
  JCache local(alpha, sigma);
  JCache& jc = cache ? *cache : local;
  const Eigen::Index n = H.rows();
  const double s4 = std::pow(sigma, 4);
  // dMSE/dh_ij = -(sigma^4/N) J'(hbar_i) * hbar_i^{1-alpha} (S L^T)_ij
  Vector coef(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double hbar = std::pow(parts.hbar_pow[i], 1.0 / alpha);
    coef[i] = -(s4 / static_cast<double>(n)) * jc.dj(hbar) *
              std::pow(hbar, 1.0 - alpha);
  }
  return coef.asDiagonal() * (parts.S * Linv.transpose());
}

}  // namespace sasica
