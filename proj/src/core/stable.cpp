#include "core/stable.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>

namespace sasica {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int m) { return m > 0 && (m & (m - 1)) == 0; }

// FFTW plans are not thread-safe to create; execution through the new-array
// interface is. Plans are cached per size with FFTW_UNALIGNED so any buffer
// is acceptable.
fftw_plan plan_for(int m) {
  static std::mutex mu;
  static std::map<int, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> tmp(static_cast<std::size_t>(m));
  fftw_plan plan = fftw_plan_dft_1d(
      m, reinterpret_cast<fftw_complex*>(tmp.data()),
      reinterpret_cast<fftw_complex*>(tmp.data()), FFTW_FORWARD,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(m, plan);
  return plan;
}

void fft_forward(std::vector<std::complex<double>>& buf) {
  fftw_plan plan = plan_for(static_cast<int>(buf.size()));
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(buf.data()));
}

// Strictly-in-(0,1) uniform from 53 high bits.
inline double u01(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

// splitmix64; used instead of std::mt19937_64 + distributions so sequences
// are identical across standard libraries.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return u01(next()); }
};

}  // namespace

void StableLaw::validate() const {
  if (!(alpha > 0.0) || !(alpha <= 2.0))
    throw std::invalid_argument("stable law: alpha must lie in (0, 2]");
  if (!(c > 0.0))
    throw std::invalid_argument("stable law: dispersion must be > 0");
}

double charfun(const StableLaw& law, double omega) {
  law.validate();
  return std::exp(-std::pow(std::abs(law.c * omega), law.alpha));
}

double PdfGrid::mass() const {
  const std::vector<double>& p = values[0];
  if (p.empty()) return 0.0;
  double s = 0.0;
  for (double v : p) s += v;
  s -= 0.5 * (p.front() + p.back());
  return s * dx;
}

double default_grid_x_max(double hbar, double alpha, double sigma) {
  double xm = 50.0 * hbar;
  if (alpha < 1.0) xm *= std::pow(10.0, 2.0 * (1.0 - alpha));
  return std::max(xm, 40.0 * sigma);
}

PdfGrid pdf_grid(double hbar, double alpha, double sigma, int max_order,
                 int M, double x_max) {
  if (!(hbar > 0.0)) throw std::invalid_argument("pdf_grid: hbar must be > 0");
  if (!(alpha > 0.0) || !(alpha <= 2.0))
    throw std::invalid_argument("pdf_grid: alpha must lie in (0, 2]");
  if (!(sigma >= 0.0)) throw std::invalid_argument("pdf_grid: sigma < 0");
  if (max_order < 0 || max_order > 3)
    throw std::invalid_argument("pdf_grid: max_order must be in 0..3");
  if (!is_pow2(M)) throw std::invalid_argument("pdf_grid: M not a power of 2");
  if (!(x_max > 0.0)) throw std::invalid_argument("pdf_grid: x_max <= 0");

  PdfGrid g;
  g.M = M;
  g.dx = 2.0 * x_max / M;
  g.x0 = -x_max;
  g.max_order = max_order;
  g.hbar = hbar;
  g.alpha = alpha;
  g.smoothing_sigma = sigma;

  const double dw = 2.0 * kPi / (M * g.dx);
  // chf[n] = e^{-|hbar w|^alpha - sigma^2 w^2 / 2} at w = (n - M/2) dw,
  // with the e^{-j w x0} shift folded in. p^(k) then needs one forward DFT
  // of (-j w)^k chf and the alternating-sign unwrap.
  std::vector<std::complex<double>> base(static_cast<std::size_t>(M));
  for (int n = 0; n < M; ++n) {
    const double w = (n - M / 2) * dw;
    const double mag =
        std::exp(-std::pow(std::abs(hbar * w), alpha) -
                 0.5 * sigma * sigma * w * w);
    const double phase = -w * g.x0;
    base[static_cast<std::size_t>(n)] =
        std::polar(mag, phase);
  }

  std::vector<std::complex<double>> buf(static_cast<std::size_t>(M));
  for (int k = 0; k <= max_order; ++k) {
    for (int n = 0; n < M; ++n) {
      const double w = (n - M / 2) * dw;
      std::complex<double> f = base[static_cast<std::size_t>(n)];
      const std::complex<double> jw(0.0, -w);
      for (int q = 0; q < k; ++q) f *= jw;
      buf[static_cast<std::size_t>(n)] = f;
    }
    fft_forward(buf);
    std::vector<double>& out = g.values[static_cast<std::size_t>(k)];
    out.resize(static_cast<std::size_t>(M));
    const double scale = dw / (2.0 * kPi);
    for (int m = 0; m < M; ++m) {
      const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
      out[static_cast<std::size_t>(m)] =
          scale * sgn * buf[static_cast<std::size_t>(m)].real();
    }
  }

  const double mass = g.mass();
  if (std::abs(mass - 1.0) > 1e-4)
    throw NormalizationError("pdf_grid: mass " + std::to_string(mass) +
                             " deviates from 1 by more than 1e-4 "
                             "(grid too small for the tail)");
  return g;
}

PdfGrid pdf_grid(double hbar, double alpha, double sigma, int max_order) {
  return pdf_grid(hbar, alpha, sigma, max_order, kDefaultGridM,
                  default_grid_x_max(hbar, alpha, sigma));
}

std::vector<double> sample_sas(const StableLaw& law, std::size_t n,
                               std::uint64_t seed) {
  law.validate();
  if (n < 1) throw std::invalid_argument("sample_sas: n must be >= 1");
  Rng rng(seed);
  std::vector<double> out(n);
  const double alpha = law.alpha;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = kPi * (rng.uniform() - 0.5);  // (-pi/2, pi/2)
    const double w = -std::log(rng.uniform());     // Exp(1)
    double x;
    if (alpha == 1.0) {
      x = std::tan(u);
    } else {
      // Chambers-Mallows-Stuck, symmetric case.
      x = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha) *
          std::pow(std::cos((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
    }
    out[i] = law.c * x;
  }
  return out;
}

double fisher_integral(const PdfGrid& grid) {
  if (grid.max_order < 1)
    throw std::invalid_argument("fisher_integral: needs derivative order 1");
  const std::vector<double>& p0 = grid.values[0];
  const std::vector<double>& p1 = grid.values[1];
  double s = 0.0;
  for (int i = 0; i < grid.M; ++i) {
    const double p = p0[static_cast<std::size_t>(i)];
    if (p < 1e-300) continue;  // 0/0 guard in the far tail
    const double d = p1[static_cast<std::size_t>(i)];
    double term = d * d / p;
    if (i == 0 || i == grid.M - 1) term *= 0.5;
    s += term;
  }
  return s * grid.dx;
}

double nu(double u, double alpha, double sigma) {
  if (u < 0.0) throw std::invalid_argument("nu: u must be >= 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("nu: sigma must be > 0");
  if (u == 0.0) return 0.0;
  const PdfGrid g = pdf_grid(u, alpha, sigma, 1);
  const double v = sigma * sigma - std::pow(sigma, 4) * fisher_integral(g);
  return std::clamp(v, 0.0, sigma * sigma);
}

NuTable::NuTable(double alpha, double sigma) : alpha_(alpha), sigma_(sigma) {
  constexpr int kNodes = 256;
  const double lo = std::log(1e-6), hi = std::log(1e6);
  u_.resize(kNodes);
  v_.resize(kNodes);
  for (int i = 0; i < kNodes; ++i) {
    u_[static_cast<std::size_t>(i)] =
        std::exp(lo + (hi - lo) * i / (kNodes - 1));
    v_[static_cast<std::size_t>(i)] = nu(u_[static_cast<std::size_t>(i)],
                                         alpha, sigma);
  }
  // nu is monotone; iron out sub-1e-12 quadrature wiggles so the
  // interpolant inherits it.
  for (int i = 1; i < kNodes; ++i)
    v_[static_cast<std::size_t>(i)] = std::max(
        v_[static_cast<std::size_t>(i)], v_[static_cast<std::size_t>(i - 1)]);

  // Fritsch-Carlson monotone slopes.
  d_.assign(kNodes, 0.0);
  std::vector<double> delta(kNodes - 1);
  for (int i = 0; i + 1 < kNodes; ++i)
    delta[static_cast<std::size_t>(i)] =
        (v_[static_cast<std::size_t>(i + 1)] - v_[static_cast<std::size_t>(i)]) /
        (u_[static_cast<std::size_t>(i + 1)] - u_[static_cast<std::size_t>(i)]);
  d_[0] = delta[0];
  d_[static_cast<std::size_t>(kNodes - 1)] = delta[static_cast<std::size_t>(kNodes - 2)];
  for (int i = 1; i + 1 < kNodes; ++i) {
    const double dl = delta[static_cast<std::size_t>(i - 1)];
    const double dr = delta[static_cast<std::size_t>(i)];
    d_[static_cast<std::size_t>(i)] =
        (dl * dr <= 0.0) ? 0.0 : 2.0 * dl * dr / (dl + dr);  // harmonic mean
  }
}

double NuTable::operator()(double u) const {
  if (u <= u_.front()) return v_.front() * (u / u_.front());
  if (u >= u_.back()) return v_.back();
  const auto it = std::upper_bound(u_.begin(), u_.end(), u);
  const std::size_t i = static_cast<std::size_t>(it - u_.begin()) - 1;
  const double h = u_[i + 1] - u_[i];
  const double t = (u - u_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return v_[i] * (2 * t3 - 3 * t2 + 1) + h * d_[i] * (t3 - 2 * t2 + t) +
         v_[i + 1] * (-2 * t3 + 3 * t2) + h * d_[i + 1] * (t3 - t2);
}

}  // namespace sasica
