#include "core/model.hpp"

#include "core/stable.hpp"

#include <string>

namespace sasica {

void ModelParams::validate() const {
  if (!(alpha > 0.0) || !(alpha <= 2.0))
    throw std::invalid_argument("alpha must lie in (0, 2], got " +
                                std::to_string(alpha));
  if (!(kappa >= 0.0))
    throw std::invalid_argument("kappa must be >= 0, got " +
                                std::to_string(kappa));
  if (!(T > 0.0))
    throw std::invalid_argument("T must be > 0, got " + std::to_string(T));
  if (N < 1) throw std::invalid_argument("N must be >= 1, got " +
                                         std::to_string(N));
  if (!(sigma >= 0.0))
    throw std::invalid_argument("sigma must be >= 0, got " +
                                std::to_string(sigma));
}

Matrix build_mixing(const ModelParams& p) {
  p.validate();
  const int n = p.N;
  const double rho = p.rho();
  Matrix m = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double v = 1.0;
    for (int i = j; i < n; ++i) {
      m(i, j) = v;
      v *= rho;
    }
  }
  return m;
}

Matrix build_whitening(const ModelParams& p) {
  p.validate();
  const int n = p.N;
  const double rho = p.rho();
  Matrix m = Matrix::Identity(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = -rho;
  return m;
}

double bspline_alpha_norm(double kappa, double T, double alpha) {
  // ||beta_{kappa,T}||_alpha^alpha = int_0^T e^{-alpha kappa t} dt
  const double ak = alpha * kappa;
  if (ak * T < 1e-12) return std::pow(T, 1.0 / alpha);
  return std::pow(-std::expm1(-ak * T) / ak, 1.0 / alpha);
}

SignalPath synthesize(const ModelParams& p, std::uint64_t seed,
                      bool unit_dispersion) {
  p.validate();
  StableLaw law{p.alpha,
                unit_dispersion ? 1.0 : bspline_alpha_norm(p.kappa, p.T, p.alpha)};
  const std::vector<double> w = sample_sas(law, static_cast<std::size_t>(p.N),
                                           seed);
  SignalPath path;
  path.seed = seed;
  path.innovations = Eigen::Map<const Vector>(w.data(), p.N);
  path.samples.resize(p.N);
  const double rho = p.rho();
  double prev = 0.0;  // s_0 = 0
  for (int k = 0; k < p.N; ++k) {
    prev = rho * prev + w[static_cast<std::size_t>(k)];
    path.samples[k] = prev;
  }
  return path;
}

}  // namespace sasica
