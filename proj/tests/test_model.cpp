#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/model.hpp"
#include "core/stable.hpp"

#include <cmath>
#include <numeric>

using namespace sasica;

TEST_CASE("params validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS((ModelParams{0.0, 0, 1, 4, 1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{2.5, 0, 1, 4, 1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{1, -0.1, 1, 4, 1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{1, 0, 0, 4, 1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{1, 0, 1, 0, 1}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{1, 0, 1, 4, -1}.validate()),
                  std::invalid_argument);
}

TEST_CASE("mixing matrix entries") {
  SUBCASE("kappa = 0 gives the all-ones triangle") {
    const Matrix m = build_mixing({1.0, 0.0, 1.0, 3, 0.0});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(m(i, j) == (i >= j ? 1.0 : 0.0));
  }
  SUBCASE("rho = 0.9 powers") {
    ModelParams p{1.0, -std::log(0.9), 1.0, 3, 0.0};
    const Matrix m = build_mixing(p);
    CHECK(m(0, 0) == doctest::Approx(1.0));
    CHECK(m(1, 0) == doctest::Approx(0.9));
    CHECK(m(2, 0) == doctest::Approx(0.81));
    CHECK(m(2, 1) == doctest::Approx(0.9));
    CHECK(m(0, 1) == 0.0);
    CHECK(m(0, 2) == 0.0);
    CHECK(m(1, 2) == 0.0);
  }
  SUBCASE("rho = 0.5, N = 64: unit determinant, max entry 1") {
    ModelParams p{1.0, std::log(2.0), 1.0, 64, 0.0};
    const Matrix m = build_mixing(p);
    // triangular: det is the diagonal product
    double det = 1.0;
    for (int i = 0; i < 64; ++i) det *= m(i, i);
    CHECK(det == 1.0);
    CHECK(m.cwiseAbs().maxCoeff() == 1.0);
  }
  CHECK_THROWS_AS(build_mixing({1.0, 0.0, 1.0, 0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("whitening is the bidiagonal inverse") {
  for (double kappa : {0.0, 0.1054, 1.0}) {
    ModelParams p{1.3, kappa, 1.0, 16, 0.0};
    const Matrix l = build_mixing(p);
    const Matrix w = build_whitening(p);
    CHECK((w * l - Matrix::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((l * w - Matrix::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(w(1, 0) == doctest::Approx(-p.rho()));
    CHECK(w(0, 1) == 0.0);
  }
}

TEST_CASE("synthesize recursion and determinism") {
  SUBCASE("kappa = 0: samples are the running sum of innovations") {
    ModelParams p{1.5, 0.0, 1.0, 256, 0.0};
    const SignalPath path = synthesize(p, 42);
    double acc = 0.0;
    for (int k = 0; k < p.N; ++k) {
      acc += path.innovations[k];
      CHECK(path.samples[k] == doctest::Approx(acc).epsilon(1e-12));
    }
  }
  SUBCASE("first sample equals first innovation") {
    ModelParams p{0.8, 0.3, 0.5, 32, 0.0};
    const SignalPath path = synthesize(p, 7);
    CHECK(path.samples[0] == path.innovations[0]);
  }
  SUBCASE("deterministic in (params, seed)") {
    ModelParams p{1.1, 0.05, 1.0, 128, 0.0};
    const SignalPath a = synthesize(p, 99);
    const SignalPath b = synthesize(p, 99);
    CHECK((a.samples - b.samples).cwiseAbs().maxCoeff() == 0.0);
    const SignalPath c = synthesize(p, 100);
    CHECK((a.samples - c.samples).cwiseAbs().maxCoeff() > 0.0);
  }
  SUBCASE("mixing matrix reproduces the path") {
    ModelParams p{1.7, 0.2, 1.0, 64, 0.0};
    const SignalPath path = synthesize(p, 5);
    const Matrix l = build_mixing(p);
    CHECK((l * path.innovations - path.samples).cwiseAbs().maxCoeff() <
          1e-12 * path.samples.cwiseAbs().maxCoeff());
  }
  SUBCASE("whitening recovers innovations to 1e-12 relative") {
    ModelParams p{0.9, 0.05, 1.0, 512, 0.0};
    const SignalPath path = synthesize(p, 11);
    const Vector rec = build_whitening(p) * path.samples;
    const double scale = path.innovations.cwiseAbs().maxCoeff();
    CHECK((rec - path.innovations).cwiseAbs().maxCoeff() < 1e-12 * scale);
  }
}

TEST_CASE("alpha = 2 increments have variance 2 (Monte Carlo)") {
  // Unit dispersion at alpha = 2 is Gaussian with variance 2.
  ModelParams p{2.0, 0.0, 1.0, 100000, 0.0};
  const SignalPath path = synthesize(p, 1234);
  double mean = path.innovations.mean();
  double var = (path.innovations.array() - mean).square().sum() / (p.N - 1);
  CHECK(var == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("b-spline dispersion") {
  CHECK(bspline_alpha_norm(0.0, 1.0, 1.3) == doctest::Approx(1.0));
  CHECK(bspline_alpha_norm(0.0, 2.0, 2.0) ==
        doctest::Approx(std::sqrt(2.0)));
  // int_0^1 e^{-t} dt = 1 - e^{-1}
  CHECK(bspline_alpha_norm(1.0, 1.0, 1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)));
  // scaled innovations carry the dispersion
  ModelParams p{2.0, 0.5, 1.0, 50000, 0.0};
  const SignalPath unit = synthesize(p, 3, true);
  const SignalPath scaled = synthesize(p, 3, false);
  const double c = bspline_alpha_norm(p.kappa, p.T, p.alpha);
  CHECK((scaled.innovations - c * unit.innovations).cwiseAbs().maxCoeff() <
        1e-12);
}
