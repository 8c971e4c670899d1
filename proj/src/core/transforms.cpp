#include "core/transforms.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sasica {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_pow2(int n, const char* who) {
  if (!is_pow2(n))
    throw std::invalid_argument(std::string(who) +
                                ": N must be a power of two");
}

// Operator-like recursion body; rho = 1 handled by the limit normalizer.
Matrix opwav_rec(int n, double rho) {
  if (n == 1) return Matrix::Constant(1, 1, 1.0);
  const int half = n / 2;
  const double coupling = std::pow(rho, half);  // e^{-2^{k-1} kappa T}
  double nu;
  if (rho == 1.0) {
    nu = 1.0 / std::sqrt(static_cast<double>(n));
  } else {
    nu = std::sqrt((1.0 - rho * rho) /
                   (1.0 - std::pow(rho, 2.0 * n)));
  }
  Vector ell(half);
  double v = 1.0;
  for (int i = 0; i < half; ++i) {
    ell[i] = v;
    v *= rho;
  }
  const Matrix prev = opwav_rec(half, rho);
  Matrix h = Matrix::Zero(n, n);
  h.row(0).head(half) = nu * ell;
  h.row(0).tail(half) = nu * coupling * ell;
  h.row(1).head(half) = -nu * coupling * ell;
  h.row(1).tail(half) = nu * ell;
  const int m = half - 1;  // rows of H'_{k-1}
  if (m > 0) {
    h.block(2, 0, m, half) = prev.bottomRows(m);
    h.block(2 + m, half, m, half) = prev.bottomRows(m);
  }
  return h;
}

}  // namespace

double orthonormality_residual(const Matrix& H) {
  const Matrix g = H * H.transpose() - Matrix::Identity(H.rows(), H.cols());
  return g.cwiseAbs().maxCoeff();
}

OrthMatrix identity_matrix(int N) {
  if (N < 1) throw std::invalid_argument("identity: N must be >= 1");
  return {Matrix::Identity(N, N), "identity"};
}

OrthMatrix dct_matrix(int N) {
  if (N < 1) throw std::invalid_argument("dct: N must be >= 1");
  Matrix h(N, N);
  const double c0 = 1.0 / std::sqrt(static_cast<double>(N));
  const double c = std::sqrt(2.0 / N);
  for (int j = 0; j < N; ++j) h(0, j) = c0;
  for (int i = 1; i < N; ++i)
    for (int j = 0; j < N; ++j)
      h(i, j) = c * std::cos(kPi * i * (j + 0.5) / N);
  return {std::move(h), "dct"};
}

OrthMatrix haar_matrix(int N) {
  require_pow2(N, "haar");
  Matrix h = Matrix::Zero(N, N);
  h.row(0).setConstant(1.0 / std::sqrt(static_cast<double>(N)));
  int row = 1;
  for (int blocks = 1; blocks < N; blocks *= 2) {
    const int sup = N / blocks;  // support length at this scale
    const double amp = 1.0 / std::sqrt(static_cast<double>(sup));
    for (int b = 0; b < blocks; ++b, ++row) {
      for (int j = 0; j < sup / 2; ++j) h(row, b * sup + j) = amp;
      for (int j = sup / 2; j < sup; ++j) h(row, b * sup + j) = -amp;
    }
  }
  return {std::move(h), "haar"};
}

OrthMatrix opwav_matrix(const ModelParams& p) {
  p.validate();
  require_pow2(p.N, "opwav");
  return {opwav_rec(p.N, p.rho()), "opwav"};
}

OrthMatrix klt_matrix(const ModelParams& p) {
  p.validate();
  if (!(p.kappa > 0.0))
    throw std::invalid_argument("klt: kappa must be > 0 (spectrum degenerates "
                                "at the Levy limit)");
  const int n = p.N;
  const double rho = p.rho();
  // Covariance of the s_0 = 0 model: C_ij = rho^|i-j| (1-rho^{2 min})/(1-rho^2)
  // with 1-based min(i, j).
  Matrix cov(n, n);
  const double denom = 1.0 - rho * rho;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double g = (1.0 - std::pow(rho, 2.0 * (j + 1))) / denom;
      const double v = std::pow(rho, static_cast<double>(i - j)) * g;
      cov(i, j) = v;
      cov(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  if (eig.info() != Eigen::Success)
    throw OrthonormalityError("klt: eigendecomposition failed");
  // Ascending from Eigen; emit rows by decreasing eigenvalue.
  Matrix h(n, n);
  for (int i = 0; i < n; ++i) h.row(i) = eig.eigenvectors().col(n - 1 - i);
  const double resid = orthonormality_residual(h);
  if (resid > 1e-8)
    throw OrthonormalityError("klt: orthonormality residual " +
                              std::to_string(resid));
  return {std::move(h), "klt"};
}

double klt_lambda_inv(double rho, double omega) {
  const double s = std::sin(0.5 * omega);
  return std::sqrt((1.0 - rho) * (1.0 - rho) + 4.0 * rho * s * s);
}

double klt_omega_residual(int N, double rho, double omega) {
  // tan(N w) (cos w - 2 rho + rho^2 cos w) + (1 - rho^2) sin w, scaled by
  // cos(N w) to stay finite through the tangent poles:
  // sin(N w)(cos w - 2 rho + rho^2 cos w) + cos(N w)(1 - rho^2) sin w.
  return std::sin(N * omega) *
             ((1.0 + rho * rho) * std::cos(omega) - 2.0 * rho) +
         std::cos(N * omega) * (1.0 - rho * rho) * std::sin(omega);
}

std::vector<double> klt_omega_roots(int N, double rho) {
  if (N < 1) throw std::invalid_argument("klt_omega_roots: N must be >= 1");
  if (!(rho > 0.0) || !(rho < 1.0))
    throw std::invalid_argument("klt_omega_roots: rho must lie in (0, 1)");
  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i) {
    // One root per bracket ((i-1) pi/N, i pi/N); nudge off the endpoints
    // where the residual vanishes identically.
    double lo = (i - 1) * kPi / N + 1e-12;
    double hi = i * kPi / N - 1e-12;
    double flo = klt_omega_residual(N, rho, lo);
    double fhi = klt_omega_residual(N, rho, hi);
    if (flo == 0.0) {
      roots.push_back(lo);
      continue;
    }
    if (fhi == 0.0) {
      roots.push_back(hi);
      continue;
    }
    if (flo * fhi > 0.0)
      throw RootBracketError("klt_omega_roots: no sign change in bracket " +
                             std::to_string(i));
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = klt_omega_residual(N, rho, mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (flo * fm < 0.0) {
        hi = mid;
        fhi = fm;
      } else {
        lo = mid;
        flo = fm;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

}  // namespace sasica
