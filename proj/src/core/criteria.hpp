// The two dependence measures over orthonormal transforms: KL redundancy
// R(H) and the Stein denoising MSE(H), with analytic gradients in H.

#pragma once

#include "core/model.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>

namespace sasica {

enum class CriterionKind { R, MSE };

struct CriterionReport {
  CriterionKind kind = CriterionKind::R;
  Vector hbars;  // per-row alpha-pseudonorms of H L^{-1}, all > 0
  double value = 0.0;
  std::optional<Matrix> gradient;
  // Set when alpha < 1 and some |a_ir| fell under the subgradient clamp.
  bool gradient_singular = false;
  double alpha = 2.0;
  double sigma = 0.0;
};

// hbar_n = (sum_r |sum_m h_nm l_mr|^alpha)^{1/alpha}. Entries of H L^{-1}
// below 1e-13 of their row maximum are treated as structural zeros; without
// this, roundoff residue at exact cancellations dominates |a|^alpha for
// alpha < 1.
Vector row_alpha_norms(const Matrix& H, const Matrix& Linv, double alpha);

// R = (1/N) sum log hbar_n, natural log.
CriterionReport redundancy_R(const Matrix& H, const Matrix& Linv, double alpha,
                             bool with_gradient = false);

// dR/dh_ij; alpha < 1 uses the zero-contribution subgradient for |a| < 1e-12
// and reports it through *singular. smooth_eps > 0 replaces |a|^alpha with
// (a^2 + eps^2)^{alpha/2} inside the gradient (optimizer continuation).
Matrix grad_R(const Matrix& H, const Matrix& Linv, double alpha,
              bool* singular = nullptr, double smooth_eps = 0.0);

// Memoizes J(hbar) and the MSE integrand derivative at 1e-9 granularity in
// hbar; wavelet bases repeat norms and the optimizer revisits matrices.
class JCache {
 public:
  JCache(double alpha, double sigma) : alpha_(alpha), sigma_(sigma) {}
  double j(double hbar);
  double dj(double hbar);  // d/dhbar of the Fisher-style integral
  double alpha() const { return alpha_; }
  double sigma() const { return sigma_; }

 private:
  double alpha_;
  double sigma_;
  std::unordered_map<std::int64_t, double> j_;
  std::unordered_map<std::int64_t, double> dj_;
};

// MSE = sigma^2 - (sigma^4/N) sum_n J(hbar_n). Requires sigma > 0.
CriterionReport mse_criterion(const Matrix& H, const Matrix& Linv,
                              double alpha, double sigma,
                              bool with_gradient = false,
                              JCache* cache = nullptr);

Matrix grad_MSE(const Matrix& H, const Matrix& Linv, double alpha,
                double sigma, bool* singular = nullptr,
                double smooth_eps = 0.0, JCache* cache = nullptr);

}  // namespace sasica
