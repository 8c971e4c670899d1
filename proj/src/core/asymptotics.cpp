#include "core/asymptotics.hpp"

#include "core/criteria.hpp"
#include "core/model.hpp"
#include "core/stable.hpp"
#include "core/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sasica {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Sum of i^alpha for i = 1..m. Direct below 2^16, Euler-Maclaurin tail above
// (the f^(5) term at the split point is ~alpha^5 2^{-80} relative).
double powsum(double m, double alpha) {
  constexpr double kDirect = 65536.0;
  const double head = std::min(m, kDirect);
  double acc = 0.0;
  for (double i = 1.0; i <= head; ++i) acc += std::pow(i, alpha);
  if (m <= kDirect) return acc;
  const double b = kDirect;
  auto f = [&](double x) { return std::pow(x, alpha); };
  auto f1 = [&](double x) { return alpha * std::pow(x, alpha - 1.0); };
  auto f3 = [&](double x) {
    return alpha * (alpha - 1.0) * (alpha - 2.0) * std::pow(x, alpha - 3.0);
  };
  double tail = (std::pow(m, alpha + 1.0) - std::pow(b, alpha + 1.0)) /
                (alpha + 1.0);
  tail += 0.5 * (f(m) + f(b));
  tail += (f1(m) - f1(b)) / 12.0;
  tail -= (f3(m) - f3(b)) / 720.0;
  return acc - f(b) + tail;
}

// (1 - rho^{2u}) / (1 - rho^2); the kappa = 0 limit is u itself.
double geom_sq_sum(double u, double rho) {
  const double e = 2.0 * u * std::log(rho);
  if (e < -745.0) return 1.0 / (1.0 - rho * rho);
  return -std::expm1(e) / (1.0 - rho * rho);
}

// log of the diagonal normalizer nu_k = sqrt((1-rho^2)/(1-rho^{2^{k+1}})).
double log_nu(int k, double rho) {
  if (rho == 1.0) return -0.5 * k * kLn2;
  const double e = std::exp2(static_cast<double>(k + 1)) * std::log(rho);
  const double log_denom = (e < -745.0) ? 0.0 : std::log1p(-std::exp(e));
  return 0.5 * (std::log1p(-rho * rho) - log_denom);
}

// log hbar of the scale-k wavelet atom (weight 2^{-k}); exact at finite N.
double log_hbar_wavelet(int k, double rho, double alpha) {
  const double m = std::exp2(static_cast<double>(k - 1));
  double log_inner;
  if (rho == 1.0) {
    const double inner = 2.0 * powsum(m - 1.0, alpha) + std::pow(m, alpha);
    log_inner = std::log(inner);
  } else {
    // 2 sum_{j=1}^{m-1} (rho^j G(m-j))^alpha + G(m)^alpha, truncated once
    // rho^{j alpha} is negligible against the accumulated sum.
    const double lr = std::log(rho);
    double acc = std::pow(geom_sq_sum(m, rho), alpha);
    for (double j = 1.0; j <= m - 1.0; ++j) {
      const double t =
          std::exp(alpha * j * lr) * std::pow(geom_sq_sum(m - j, rho), alpha);
      acc += 2.0 * t;
      if (t < acc * 1e-18) break;
    }
    log_inner = std::log(acc);
  }
  return log_nu(k, rho) + log_inner / alpha;
}

// log hbar of the coarse scaling atom at stage K (weight 2^{-K}).
double log_hbar_scaling(int K, double rho, double alpha) {
  const double m = std::exp2(static_cast<double>(K));
  double log_inner;
  if (rho == 1.0) {
    log_inner = std::log(powsum(m, alpha));
  } else {
    // sum_{i=1}^{m} (rho^{m-i} G(i))^alpha, accumulated from i = m down.
    const double lr = std::log(rho);
    double acc = 0.0;
    for (double j = 0.0; j <= m - 1.0; ++j) {
      const double t =
          std::exp(alpha * j * lr) * std::pow(geom_sq_sum(m - j, rho), alpha);
      acc += t;
      if (t < acc * 1e-18) break;
    }
    log_inner = std::log(acc);
  }
  return log_nu(K, rho) + log_inner / alpha;
}

void check_args(double kappa, double T, double alpha, int K) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("asymptotics: kappa < 0");
  if (!(T > 0.0)) throw std::invalid_argument("asymptotics: T <= 0");
  if (!(alpha > 0.0) || !(alpha <= 2.0))
    throw std::invalid_argument("asymptotics: alpha must lie in (0, 2]");
  if (K < 1) throw std::invalid_argument("asymptotics: K must be >= 1");
}

}  // namespace

double GammaSequence::weight(int k) const {
  if (k < 1 || k > K) throw std::invalid_argument("GammaSequence: bad k");
  return std::exp2(static_cast<double>(-k));
}

std::vector<double> GammaSequence::expand() const {
  if (K > 24) throw std::invalid_argument("GammaSequence::expand: K > 24");
  std::vector<double> out;
  out.reserve(1u << K);
  for (int k = 1; k <= K; ++k) {
    const std::size_t mult = 1u << (K - k);
    out.insert(out.end(), mult, gammas[static_cast<std::size_t>(k - 1)]);
  }
  out.push_back(scaling_gamma);
  return out;
}

GammaSequence gamma_sequence(double kappa, double T, double alpha, int K) {
  check_args(kappa, T, alpha, K);
  const double rho = std::exp(-kappa * T);
  GammaSequence seq;
  seq.kappa = kappa;
  seq.T = T;
  seq.alpha = alpha;
  seq.K = K;
  seq.gammas.resize(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k)
    seq.gammas[static_cast<std::size_t>(k - 1)] =
        std::exp(-log_hbar_wavelet(k, rho, alpha));
  seq.scaling_gamma = std::exp(-log_hbar_scaling(K, rho, alpha));
  return seq;
}

LimitValue limit_R_opwt(double kappa, double T, double alpha, int K) {
  check_args(kappa, T, alpha, K);
  const double rho = std::exp(-kappa * T);
  LimitValue out;
  out.K = K;
  double acc = 0.0;
  for (int k = 1; k <= K; ++k)
    acc += std::exp2(static_cast<double>(-k)) * log_hbar_wavelet(k, rho, alpha);
  out.value = acc;
  // log hbar_k <= (k/2 + k/alpha - 1) ln 2 at kappa = 0 and
  // (k/alpha) ln 2 + ln(1/(1-rho^2)) otherwise.
  const double two_mK = std::exp2(static_cast<double>(-K));
  if (kappa == 0.0) {
    out.tail_bound =
        kLn2 * two_mK * ((0.5 + 1.0 / alpha) * (K + 2.0) - 1.0);
  } else {
    out.tail_bound = two_mK * ((K + 2.0) * kLn2 / alpha -
                               std::log1p(-rho * rho));
  }
  return out;
}

LimitValue limit_mse_opwt(double kappa, double T, double alpha, double sigma,
                          int K) {
  check_args(kappa, T, alpha, K);
  if (!(sigma > 0.0))
    throw std::invalid_argument("limit_mse_opwt: sigma must be > 0");
  const double rho = std::exp(-kappa * T);
  LimitValue out;
  out.K = K;
  double acc = 0.0;
  for (int k = 1; k <= K; ++k) {
    // nu saturates at sigma^2 well before 1e6; clamping keeps the pdf grid
    // sane once hbar overflows any reasonable window.
    const double hbar =
        std::min(std::exp(log_hbar_wavelet(k, rho, alpha)), 1e6);
    acc += std::exp2(static_cast<double>(-k)) * nu(hbar, alpha, sigma);
  }
  out.value = acc;
  out.tail_bound = std::exp2(static_cast<double>(-K)) * sigma * sigma;
  return out;
}

double LimitSpectrum::density(double gamma) const {
  if (kind == SpectrumKind::PointMassAtZero) return 0.0;
  const double a = support_lo(), b = support_hi();
  if (gamma <= a || gamma >= b) return 0.0;
  return (2.0 / std::numbers::pi) * gamma /
         (std::sqrt(gamma * gamma - a * a) * std::sqrt(b * b - gamma * gamma));
}

double LimitSpectrum::mass(int panels) const {
  if (kind == SpectrumKind::PointMassAtZero) return 1.0;
  // gamma^2 = a^2 + (b^2-a^2) sin^2(theta) removes both edge singularities.
  const double a = support_lo(), b = support_hi();
  const double span = b * b - a * a;
  double acc = 0.0;
  const double dth = 0.5 * std::numbers::pi / panels;
  for (int i = 0; i < panels; ++i) {
    const double th = (i + 0.5) * dth;
    const double g = std::sqrt(a * a + span * std::sin(th) * std::sin(th));
    const double dg = span * std::sin(th) * std::cos(th) / g;
    acc += density(g) * dg * dth;
  }
  return acc;
}

LimitSpectrum limit_spectrum_dct(double kappa, double T, double alpha) {
  check_args(kappa, T, alpha, 1);
  LimitSpectrum s;
  s.rho = std::exp(-kappa * T);
  s.kind = (alpha == 2.0) ? SpectrumKind::ContinuousDensity
                          : SpectrumKind::PointMassAtZero;
  return s;
}

Theorem1Report theorem1_check(double kappa, double T, double alpha,
                              double sigma, const std::vector<int>& N_list) {
  check_args(kappa, T, alpha, 1);
  if (!(sigma > 0.0))
    throw std::invalid_argument("theorem1_check: sigma must be > 0");
  if (N_list.empty())
    throw std::invalid_argument("theorem1_check: empty N list");

  Theorem1Report rep;
  rep.kappa = kappa;
  rep.T = T;
  rep.alpha = alpha;
  rep.sigma = sigma;

  JCache cache(alpha, sigma);
  const double s2 = sigma * sigma;
  for (int n : N_list) {
    ModelParams p{alpha, kappa, T, n, sigma};
    const Matrix Linv = build_mixing(p);
    const Matrix dct = dct_matrix(n).entries;
    const Matrix opw = opwav_matrix(p).entries;
    Theorem1Row row;
    row.N = n;
    for (int which = 0; which < 2; ++which) {
      const Vector hb = row_alpha_norms(which == 0 ? dct : opw, Linv, alpha);
      const double r = hb.array().log().mean();
      double jsum = 0.0;
      for (Eigen::Index i = 0; i < hb.size(); ++i) jsum += cache.j(hb[i]);
      const double m = s2 - s2 * s2 * jsum / static_cast<double>(hb.size());
      if (which == 0) {
        row.r_dct = r;
        row.mse_dct = m;
      } else {
        row.r_opwt = r;
        row.mse_opwt = m;
      }
    }
    rep.rows.push_back(row);
  }

  const double rho = std::exp(-kappa * T);
  rep.r_opwt_bound = (2.0 / alpha) * kLn2;
  if (kappa > 0.0) rep.r_opwt_bound += 0.5 * std::log(1.0 / (1.0 - rho * rho));
  const double gamma1 = gamma_sequence(kappa, T, alpha, 1).gammas[0];
  rep.mse_opwt_bound = 0.5 * nu(1.0 / gamma1, alpha, sigma) + 0.5 * s2;

  rep.r_dct_increasing = true;
  rep.mse_dct_increasing = true;
  rep.r_opwt_bounded = true;
  rep.mse_opwt_bounded = true;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (i > 0) {
      rep.r_dct_increasing &= rep.rows[i].r_dct > rep.rows[i - 1].r_dct;
      rep.mse_dct_increasing &= rep.rows[i].mse_dct > rep.rows[i - 1].mse_dct;
    }
    rep.r_opwt_bounded &= rep.rows[i].r_opwt <= rep.r_opwt_bound + 1e-6;
    rep.mse_opwt_bounded &= rep.rows[i].mse_opwt <= rep.mse_opwt_bound + 1e-9;
  }
  return rep;
}

}  // namespace sasica
