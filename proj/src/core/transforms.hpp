// Orthonormal analysis bases: identity, DCT-II, Haar, the operator-like
// wavelet recursion, and the exact KLT of the AR(1) model covariance.

#pragma once

#include "core/model.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sasica {

class RootBracketError : public std::runtime_error {
 public:
  explicit RootBracketError(const std::string& what)
      : std::runtime_error(what) {}
};

class OrthonormalityError : public std::runtime_error {
 public:
  explicit OrthonormalityError(const std::string& what)
      : std::runtime_error(what) {}
};

struct OrthMatrix {
  Matrix entries;
  std::string label;
};

// max |H H^T - I|
double orthonormality_residual(const Matrix& H);

OrthMatrix identity_matrix(int N);

// Orthonormal DCT-II: row 0 constant 1/sqrt(N),
// row i entry j = sqrt(2/N) cos(pi i (j + 1/2) / N).
OrthMatrix dct_matrix(int N);

// Scaling row first, wavelet rows coarse-to-fine, ordered by position within
// a scale. N must be a power of two.
OrthMatrix haar_matrix(int N);

// Recursive operator-like wavelet basis H_k matched to rho = e^{-kappa T}:
// top two rows are the normalized geometric pair, the rest recurse on the
// halves. At kappa = 0 the normalizer degenerates to 1/sqrt(2^k) and the
// basis equals haar_matrix up to row order and sign. N must be a power of two.
OrthMatrix opwav_matrix(const ModelParams& p);

// Exact KLT: eigenbasis of the model covariance L^{-1} L^{-T}, rows ordered
// by decreasing eigenvalue. Requires kappa > 0.
OrthMatrix klt_matrix(const ModelParams& p);

// Stationary-spectrum closed forms (asymptotic analysis support).
// |lambda(omega)|^{-1} = sqrt((1-rho)^2 + 4 rho sin^2(omega/2)).
double klt_lambda_inv(double rho, double omega);
// Residual of tan(N omega) = -(1-rho^2) sin(omega) / (cos(omega) - 2 rho
// + rho^2 cos(omega)), written sign-definite for bisection.
double klt_omega_residual(int N, double rho, double omega);
// The i-th positive root lies in ((i-1) pi/N, i pi/N); bisection per bracket.
std::vector<double> klt_omega_roots(int N, double rho);

}  // namespace sasica
