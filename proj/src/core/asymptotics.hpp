// Computable content of the large-N theory: the gamma recursion for the
// operator-like wavelet atoms, the limit series for R and MSE, the DCT limit
// spectrum, and the finite-N trend table.

#pragma once

#include <string>
#include <vector>

namespace sasica {

// Atoms of the empirical distribution of hbar^{-1} for H_K L^{-1} at
// N = 2^K: gammas[k-1] has weight 2^{-k} (k = 1 is the finest wavelet
// scale), scaling_gamma is the weight-2^{-K} coarse residual.
struct GammaSequence {
  double kappa = 0.0;
  double T = 1.0;
  double alpha = 1.0;
  int K = 0;
  std::vector<double> gammas;
  double scaling_gamma = 0.0;

  double weight(int k) const;  // 2^{-k}, k in [1, K]
  // Full multiset of the 2^K reciprocal row norms (K <= 24).
  std::vector<double> expand() const;
};

GammaSequence gamma_sequence(double kappa, double T, double alpha, int K);

struct LimitValue {
  double value = 0.0;       // truncated series
  double tail_bound = 0.0;  // certified bound on the dropped tail
  int K = 0;
};

// sum_{k<=K} 2^{-k} log(1/gamma_k) with a closed-form tail certificate.
LimitValue limit_R_opwt(double kappa, double T, double alpha, int K = 40);

// sum_{k<=K} 2^{-k} nu(1/gamma_k); tail bounded by 2^{-K} sigma^2.
LimitValue limit_mse_opwt(double kappa, double T, double alpha, double sigma,
                          int K = 40);

enum class SpectrumKind { ContinuousDensity, PointMassAtZero };

// Limit empirical distribution of hbar^{-1} under the DCT/KLT family:
// a continuous density on [1-rho, 1+rho] at alpha = 2, a point mass at 0
// otherwise.
struct LimitSpectrum {
  SpectrumKind kind = SpectrumKind::PointMassAtZero;
  double rho = 1.0;

  double support_lo() const { return 1.0 - rho; }
  double support_hi() const { return 1.0 + rho; }
  double density(double gamma) const;  // alpha = 2 branch
  // Quadrature of density over its support (singularity-free substitution).
  double mass(int panels = 20000) const;
};

LimitSpectrum limit_spectrum_dct(double kappa, double T, double alpha);

struct Theorem1Row {
  int N = 0;
  double r_dct = 0.0;
  double r_opwt = 0.0;
  double mse_dct = 0.0;
  double mse_opwt = 0.0;
};

struct Theorem1Report {
  double kappa = 0.0, T = 1.0, alpha = 1.0, sigma = 1.0;
  std::vector<Theorem1Row> rows;
  double r_opwt_bound = 0.0;    // closed-form series bound
  double mse_opwt_bound = 0.0;  // nu(1/gamma_1)/2 + sigma^2/2
  bool r_dct_increasing = false;
  bool r_opwt_bounded = false;
  bool mse_dct_increasing = false;
  bool mse_opwt_bounded = false;
};

// Tabulates R and MSE of OpWT vs DCT over N_list and fills the trend flags.
Theorem1Report theorem1_check(double kappa, double T, double alpha,
                              double sigma, const std::vector<int>& N_list);

}  // namespace sasica
