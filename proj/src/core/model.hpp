// Discrete symmetric-alpha-stable AR(1) innovation model: parameter set,
// the causal mixing matrix and its bidiagonal inverse, path synthesis.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace sasica {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct ModelParams {
  double alpha = 2.0;  // stability exponent, 0 < alpha <= 2
  double kappa = 0.0;  // decay rate per unit time, >= 0
  double T = 1.0;      // sampling period, > 0
  int N = 64;          // signal length, >= 1
  double sigma = 1.0;  // AWGN std used by the MSE criterion, >= 0

  // rho = e^{-kappa T}, in (0, 1].
  double rho() const { return std::exp(-kappa * T); }

  // Throws std::invalid_argument on any violated range.
  void validate() const;
};

struct SignalPath {
  Vector samples;      // s, with s_k = rho s_{k-1} + w_k, s_0 = 0
  Vector innovations;  // w, iid SaS
  std::uint64_t seed = 0;
};

// Mixing matrix with l_ij = rho^{i-j} for i >= j, else 0.
// Unit diagonal, det = 1; samples = mixing * innovations.
Matrix build_mixing(const ModelParams& p);

// Inverse of build_mixing: 1 on the diagonal, -rho on the first subdiagonal.
Matrix build_whitening(const ModelParams& p);

// alpha-norm of the exponential B-spline beta_{kappa,T}: the innovation
// dispersion of the sampled process. Equals T^{1/alpha} at kappa = 0.
double bspline_alpha_norm(double kappa, double T, double alpha);

// Draws iid SaS innovations and runs the AR(1) recursion from s_0 = 0.
// unit_dispersion = true uses dispersion 1; false uses bspline_alpha_norm.
SignalPath synthesize(const ModelParams& p, std::uint64_t seed,
                      bool unit_dispersion = true);

}  // namespace sasica
