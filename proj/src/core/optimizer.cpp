#include "core/optimizer.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>

namespace sasica {

namespace {

constexpr double kMuFloor = 1e-14;
constexpr int kTolWindow = 50;

Matrix random_orthogonal(int n, std::uint64_t seed) {
  // Gaussian fill then polar projection; mt19937_64 with Box-Muller kept
  // local so the stream is stable across standard libraries.
  std::mt19937_64 gen(seed);
  auto unif = [&gen]() {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
  };
  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double r = std::sqrt(-2.0 * std::log(unif()));
      A(i, j) = r * std::cos(2.0 * M_PI * unif());
    }
  return project_unitary(A);
}

}  // namespace

void OptimizerOptions::validate() const {
  if (!(mu0 > 0.0)) throw std::invalid_argument("optimizer: mu0 must be > 0");
  if (!(a >= 1.0)) throw std::invalid_argument("optimizer: a must be >= 1");
  if (!(b >= 0.0) || !(b <= 1.0))
    throw std::invalid_argument("optimizer: b must lie in [0, 1]");
  if (max_iters < 1)
    throw std::invalid_argument("optimizer: max_iters must be >= 1");
  if (!(tol >= 0.0)) throw std::invalid_argument("optimizer: tol must be >= 0");
}

Matrix project_unitary(const Matrix& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("project_unitary: matrix must be square");
  Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues().minCoeff() < 1e-12)
    throw RankDeficientError("project_unitary: singular value below 1e-12");
  return svd.matrixU() * svd.matrixV().transpose();
}

namespace {

// Newton polar iteration X <- (X + X^-T)/2 converges to the same U V^T for
// any nonsingular input and is several times cheaper than the SVD for the
// near-orthogonal matrices the descent loop produces. Falls back to the SVD
// when the iteration misbehaves.
Matrix polar_project(const Matrix& A) {
  Matrix x = A;
  for (int it = 0; it < 30; ++it) {
    Eigen::PartialPivLU<Matrix> lu(x);
    const double rcondish = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(rcondish > 1e-12)) return project_unitary(A);
    const Matrix next = 0.5 * (x + lu.inverse().transpose());
    const double step = (next - x).cwiseAbs().maxCoeff();
    x = next;
    if (step < 1e-15) return x;
  }
  return project_unitary(A);
}

}  // namespace

InitKind default_init(double alpha) {
  return alpha >= 1.5 ? InitKind::Dct : InitKind::OpWav;
}

Matrix make_init(InitKind kind, const ModelParams& p, std::uint64_t seed) {
  switch (kind) {
    case InitKind::Identity: return identity_matrix(p.N).entries;
    case InitKind::Dct: return dct_matrix(p.N).entries;
    case InitKind::Haar: return haar_matrix(p.N).entries;
    case InitKind::OpWav: return opwav_matrix(p).entries;
    case InitKind::RandomOrthogonal: return random_orthogonal(p.N, seed);
  }
  throw std::invalid_argument("make_init: unknown init kind");
}

OptResult optimize(const ModelParams& p, CriterionKind kind,
                   const OptimizerOptions& opts) {
  p.validate();
  opts.validate();
  if (kind == CriterionKind::MSE && !(p.sigma > 0.0))
    throw std::invalid_argument("optimize: MSE criterion needs sigma > 0");

  const Matrix Linv = build_mixing(p);
  JCache cache(p.alpha, p.sigma);

  // eps > 0 evaluates the smoothed surrogate ((a^2+eps^2)^{alpha/2} row
  // sums); eps = 0 the exact criterion. The surrogate decreases pointwise
  // as eps shrinks, so stage switches keep the accepted trace decreasing.
  auto value_of = [&](const Matrix& H, double eps) -> double {
    Vector hb;
    if (eps == 0.0) {
      hb = row_alpha_norms(H, Linv, p.alpha);
    } else {
      const Matrix A = H * Linv;
      hb.resize(A.rows());
      for (Eigen::Index i = 0; i < A.rows(); ++i) {
        double acc = 0.0;
        for (Eigen::Index r = 0; r < A.cols(); ++r) {
          const double q = A(i, r) * A(i, r) + eps * eps;
          acc += (p.alpha == 1.0)   ? std::sqrt(q)
                 : (p.alpha == 2.0) ? q
                                    : std::pow(q, 0.5 * p.alpha);
        }
        hb[i] = (p.alpha == 1.0)   ? acc
                : (p.alpha == 2.0) ? std::sqrt(acc)
                                   : std::pow(acc, 1.0 / p.alpha);
      }
    }
    if (kind == CriterionKind::R) return hb.array().log().mean();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < hb.size(); ++i) sum += cache.j(hb[i]);
    const double s2 = p.sigma * p.sigma;
    return s2 - s2 * s2 * sum / static_cast<double>(hb.size());
  };
  auto grad_of = [&](const Matrix& H, double eps) -> Matrix {
    if (kind == CriterionKind::R)
      return grad_R(H, Linv, p.alpha, nullptr, eps);
    return grad_MSE(H, Linv, p.alpha, p.sigma, nullptr, eps, &cache);
  };

  // Homotopy over the smoothing width; the last stage is the exact
  // criterion, so the returned value and acceptance behaviour match it.
  std::vector<double> stages = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5,
                                1e-7, 1e-9, 1e-11, 0.0};
  if (!opts.smooth_continuation) stages = {0.0};

  OptResult res;
  Matrix H = make_init(opts.init, p, opts.seed);
  std::size_t stage = 0;
  double c = value_of(H, stages[stage]);
  double mu = opts.mu0;
  std::vector<double> accepted;  // trailing window per stage
  long it = 0;

  auto advance_stage = [&]() -> bool {
    if (stage + 1 >= stages.size()) return false;
    ++stage;
    c = value_of(H, stages[stage]);
    mu = std::max(mu, 1e-3);
    accepted.clear();
    return true;
  };

  while (it < opts.max_iters) {
    ++it;
    const double eps = stages[stage];
    const Matrix Hn = polar_project(H - mu * grad_of(H, eps));
    const double cn = value_of(Hn, eps);
    const bool accept = cn < c;
    res.trace.push_back({it, cn, mu, accept});
    if (accept) {
      H = Hn;
      c = cn;
      mu *= opts.a;
      accepted.push_back(c);
      if (accepted.size() > static_cast<std::size_t>(kTolWindow)) {
        const double drop =
            accepted[accepted.size() - 1 - kTolWindow] - accepted.back();
        if (drop < opts.tol) {
          if (!advance_stage()) break;
        } else {
          accepted.erase(accepted.begin(),
                         accepted.end() - (kTolWindow + 1));
        }
      }
    } else {
      mu *= opts.b;
      if (mu < kMuFloor) {
        if (!advance_stage()) break;
      }
    }
  }
  const bool budget_out = (it >= opts.max_iters);

  res.H_opt = {std::move(H), "optimized"};
  res.value = value_of(res.H_opt.entries, 0.0);
  res.iterations = it;
  res.converged = !budget_out;
  return res;
}

OptResult optimize_multistart(const ModelParams& p, CriterionKind kind,
                              const OptimizerOptions& opts, int starts) {
  if (starts < 1) throw std::invalid_argument("optimize_multistart: starts");
  if (opts.init != InitKind::RandomOrthogonal) starts = 1;
  OptResult best;
  bool have = false;
  for (int s = 0; s < starts; ++s) {
    OptimizerOptions o = opts;
    o.seed = opts.seed + static_cast<std::uint64_t>(s);
    OptResult r = optimize(p, kind, o);
    if (!have || r.value < best.value) {
      best = std::move(r);
      have = true;
    }
  }
  return best;
}

MatchResult match_basis(const Matrix& H, const Matrix& Href) {
  if (H.rows() != Href.rows() || H.cols() != Href.cols())
    throw std::invalid_argument("match_basis: dimension mismatch");
  const Eigen::Index n = H.rows();
  const Matrix M = H * Href.transpose();
  MatchResult out;
  out.permutation.assign(static_cast<std::size_t>(n), -1);
  out.signs.assign(static_cast<std::size_t>(n), 1.0);

  // Strongest rows claim their reference row first.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return M.row(a).cwiseAbs().maxCoeff() > M.row(b).cwiseAbs().maxCoeff();
  });

  std::vector<bool> used(static_cast<std::size_t>(n), false);
  Matrix aligned(n, H.cols());
  for (Eigen::Index i : order) {
    Eigen::Index pick = -1;
    double bestmag = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double mag = std::abs(M(i, j));
      if (mag > bestmag) {
        bestmag = mag;
        pick = j;
      }
    }
    used[static_cast<std::size_t>(pick)] = true;
    const double sgn = M(i, pick) >= 0.0 ? 1.0 : -1.0;
    out.permutation[static_cast<std::size_t>(i)] = static_cast<int>(pick);
    out.signs[static_cast<std::size_t>(i)] = sgn;
    aligned.row(i) = sgn * Href.row(pick);
  }
  out.distance = (H - aligned).norm();
  return out;
}

}  // namespace sasica
