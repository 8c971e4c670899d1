// Model-based ICA: adaptive-step projected gradient descent over the
// orthogonal group, SVD projection, and basis-matching diagnostics.

#pragma once

#include "core/criteria.hpp"
#include "core/transforms.hpp"

#include <cstdint>
#include <vector>

namespace sasica {

class RankDeficientError : public std::runtime_error {
 public:
  explicit RankDeficientError(const std::string& what)
      : std::runtime_error(what) {}
};

enum class InitKind { Identity, Dct, Haar, OpWav, RandomOrthogonal };

struct OptimizerOptions {
  double mu0 = 0.1;        // initial step, > 0
  double a = 1.1;          // growth on accept, >= 1
  double b = 0.5;          // shrink on reject, in [0, 1]
  long max_iters = 100000;
  double tol = 1e-10;      // criterion-decrease window threshold
  InitKind init = InitKind::RandomOrthogonal;
  std::uint64_t seed = 0;  // for RandomOrthogonal
  // Anneal the gradient smoothing 1e-1 -> 0 on stalls; exact criterion is
  // always used for accept/reject. Needed to traverse the non-smooth
  // landscape at alpha <= 1; a no-op algebraically at alpha = 2.
  bool smooth_continuation = true;

  void validate() const;
};

struct TracePoint {
  long iter = 0;
  double value = 0.0;
  double mu = 0.0;
  bool accepted = false;
};

struct OptResult {
  OrthMatrix H_opt;
  double value = 0.0;
  std::vector<TracePoint> trace;
  long iterations = 0;
  bool converged = false;  // false only when max_iters ran out
};

// Nearest orthogonal matrix in Frobenius norm: U V^T from A = U S V^T.
// Throws RankDeficientError when any singular value < 1e-12.
Matrix project_unitary(const Matrix& A);

InitKind default_init(double alpha);
Matrix make_init(InitKind kind, const ModelParams& p, std::uint64_t seed);

OptResult optimize(const ModelParams& p, CriterionKind kind,
                   const OptimizerOptions& opts);

// Independent runs seeded seed+0 .. seed+starts-1, best criterion kept.
OptResult optimize_multistart(const ModelParams& p, CriterionKind kind,
                              const OptimizerOptions& opts, int starts);

struct MatchResult {
  double distance = 0.0;        // Frobenius after alignment
  std::vector<int> permutation; // row i of H matched Href row permutation[i]
  std::vector<double> signs;
};

// Greedy maximum-|inner product| row assignment with sign resolution.
MatchResult match_basis(const Matrix& H, const Matrix& Href);

}  // namespace sasica
