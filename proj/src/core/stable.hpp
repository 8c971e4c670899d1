// SaS distribution machinery: characteristic function, FFT-sampled marginal
// pdfs with derivatives, Chambers-Mallows-Stuck variate generation, and the
// scalar MMSE function nu.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sasica {

class NormalizationError : public std::runtime_error {
 public:
  explicit NormalizationError(const std::string& what)
      : std::runtime_error(what) {}
};

struct StableLaw {
  double alpha = 2.0;  // in (0, 2]
  double c = 1.0;      // dispersion, > 0

  void validate() const;
};

// e^{-|c omega|^alpha}
double charfun(const StableLaw& law, double omega);

// Marginal pdf of hbar*w + z (w unit SaS, z Gaussian of std sigma) and its
// derivatives, sampled on the uniform grid x_i = x0 + i*dx, i = 0..M-1,
// x0 = -x_max. values[k] holds p^(k); orders above max_order stay empty.
struct PdfGrid {
  double x0 = 0.0;
  double dx = 0.0;
  int M = 0;
  int max_order = 0;
  double hbar = 0.0;
  double alpha = 2.0;
  double smoothing_sigma = 0.0;
  std::array<std::vector<double>, 4> values;

  double x(int i) const { return x0 + dx * i; }
  // Trapezoidal mass of p^(0) (half-weight endpoints).
  double mass() const;
};

// Default extent policy; the mass check below is the contract, not this.
double default_grid_x_max(double hbar, double alpha, double sigma);
inline constexpr int kDefaultGridM = 1 << 14;

// Inverse-FFT sampling of p^(k), k = 0..max_order (max 3). M must be a power
// of two. Throws NormalizationError when |trapezoidal mass - 1| > 1e-4.
PdfGrid pdf_grid(double hbar, double alpha, double sigma, int max_order,
                 int M, double x_max);
PdfGrid pdf_grid(double hbar, double alpha, double sigma, int max_order = 1);

// n iid draws with characteristic function e^{-|c omega|^alpha}.
// Deterministic in (law, seed); does not depend on std library distributions.
std::vector<double> sample_sas(const StableLaw& law, std::size_t n,
                               std::uint64_t seed);

// J(grid) = integral of (p^(1))^2 / p^(0); needs max_order >= 1.
double fisher_integral(const PdfGrid& grid);

// Scalar MMSE of estimating u*w from u*w + z: sigma^2 - sigma^4 J(u).
// nu(0) = 0 exactly; monotone in u and bounded by sigma^2.
double nu(double u, double alpha, double sigma);

// 256 log-spaced nodes on [1e-6, 1e6] with monotone (Fritsch-Carlson) cubic
// interpolation; clamps outside the node range.
class NuTable {
 public:
  NuTable(double alpha, double sigma);

  double operator()(double u) const;
  double alpha() const { return alpha_; }
  double sigma() const { return sigma_; }
  const std::vector<double>& nodes() const { return u_; }
  const std::vector<double>& node_values() const { return v_; }

 private:
  double alpha_;
  double sigma_;
  std::vector<double> u_;
  std::vector<double> v_;
  std::vector<double> d_;  // node slopes
};

}  // namespace sasica
