#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "corrdyn/corr_core.hpp"
#include "corrdyn/render.hpp"
#include "corrdyn/rng.hpp"

using namespace corrdyn;

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// Plain bisection, independent of the library root finder.
double oracle_bisect(double (*f)(double), double a, double b, double tol) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > tol; ++i) {
    const double m = 0.5 * (a + b);
    if ((f(m) > 0.0) == (fa > 0.0)) {
      a = m;
      fa = f(m);
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double g_c02(double x) { return x * x * x - x + 0.2; }

cplx sample_off_axis(SplitMix64& rng) {
  const double m = 0.5 * std::exp(rng.uniform() * std::log(4.0));
  const double a = (2.0 * rng.uniform() - 1.0) * (kPi - 2e-2);
  return std::polar(m, a);
}

}  // namespace

TEST_SUITE_BEGIN("corr_core");

TEST_CASE("params validate p > q >= 1 and keep beta rational") {
  CHECK_THROWS_AS(CorrespondenceParams(2, 2, 0.0), ParameterError);
  CHECK_THROWS_AS(CorrespondenceParams(2, 3, 0.0), ParameterError);
  CHECK_THROWS_AS(CorrespondenceParams(3, 0, 0.0), ParameterError);
  const CorrespondenceParams p(6, 2, cplx(0.0, 0.2));
  CHECK(p.beta() == 3.0);
  CHECK(p.gamma() == 2.0);
  CHECK(p.integer_beta());
  CHECK_FALSE(CorrespondenceParams(3, 2, 0.0).integer_beta());
}

TEST_CASE("images of simple inputs") {
  const CorrespondenceParams p620(6, 2, 0.0);
  auto w = images(p620, 1.0);
  REQUIRE(w.size() == 2);
  CHECK(std::abs(w[0] - 1.0) < 1e-14);
  CHECK(std::abs(w[1] + 1.0) < 1e-14);

  const CorrespondenceParams fig(6, 2, cplx(0.0, 0.2));
  w = images(fig, 1.0);
  REQUIRE(w.size() == 2);
  CHECK(std::abs(w[0] - cplx(1.0, 0.2)) < 1e-14);
  CHECK(std::abs(w[1] - cplx(-1.0, 0.2)) < 1e-14);

  const CorrespondenceParams p320(3, 2, 0.0);
  w = images(p320, 4.0);
  REQUIRE(w.size() == 2);
  CHECK(std::abs(w[0] - 8.0) < 1e-12);
  CHECK(std::abs(w[1] + 8.0) < 1e-12);
}

TEST_CASE("images at the branch point") {
  const CorrespondenceParams integer_beta(6, 2, cplx(0.5, 0.0));
  const auto w = images(integer_beta, 0.0);
  REQUIRE(w.size() == 1);
  CHECK(w[0] == cplx(0.5, 0.0));
  const CorrespondenceParams fractional(3, 2, 0.0);
  CHECK_THROWS_AS(images(fractional, 0.0), BranchPointError);
}

TEST_CASE("preimages of simple inputs") {
  const CorrespondenceParams p220(2, 1, 0.0);
  // (w)^1 = z^2: preimages of w=1 are the square roots of 1.
  auto z = preimages(p220, 1.0);
  REQUIRE(z.size() == 2);
  CHECK(std::abs(z[0] - 1.0) < 1e-14);
  CHECK(std::abs(z[1] + 1.0) < 1e-14);

  const CorrespondenceParams p620(6, 2, 0.0);
  z = preimages(p620, 1.0);
  REQUIRE(z.size() == 6);
  for (int j = 0; j < 6; ++j)
    CHECK(std::abs(z[j] - std::polar(1.0, 2.0 * kPi * j / 6.0)) < 1e-12);

  // Shift rule: preimages at c=1 of w=2 solve zeta^2 = (2-1)^2.
  const CorrespondenceParams shifted(2, 1, 1.0);
  // p=2, q=1: zeta^2 = (w-1).
  auto zs = preimages(shifted, 2.0);
  REQUIRE(zs.size() == 2);
  CHECK(std::abs(zs[0] - 1.0) < 1e-14);
  CHECK(std::abs(zs[1] + 1.0) < 1e-14);

  CHECK_THROWS_AS(preimages(shifted, 1.0), BranchPointError);
}

TEST_CASE("branch_image uses the principal-argument labels") {
  const CorrespondenceParams p320(3, 2, 0.0);
  CHECK(std::abs(branch_image(p320, 1.0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(branch_image(p320, 1.0, 1) + 1.0) < 1e-14);
  CHECK_THROWS_AS(branch_image(p320, 0.0, 0), BranchPointError);

  // i has argument pi/2, so branch 0 gives i^3 and the figure parameters
  // place the image at c + i^3 = -0.8i.
  const CorrespondenceParams fig(6, 2, cplx(0.0, 0.2));
  const cplx w = branch_image(fig, cplx(0.0, 1.0), 0);
  CHECK(std::abs(w - cplx(0.0, -0.8)) < 1e-13);
  CHECK(correspondence_residual(fig, cplx(0.0, 1.0), w) < 1e-12);
}

TEST_CASE("moduli beyond the floating range overflow cleanly") {
  // Forward branches raise the modulus to p/q > 1 and can overflow; the
  // preimage exponent q/p < 1 only contracts, so no guard is needed there.
  const CorrespondenceParams p620(6, 2, 0.0);
  CHECK_THROWS_AS(branch_image(p620, cplx(1e200, 0.0), 0), OverflowError);
  CHECK_THROWS_AS(images(p620, cplx(0.0, 1e250)), OverflowError);
}

TEST_CASE("branch_derivative closed form and finite differences") {
  const CorrespondenceParams p620(6, 2, 0.0);
  CHECK(std::abs(branch_derivative(p620, 1.0, 1.0) - 3.0) < 1e-14);
  const CorrespondenceParams p320(3, 2, 0.0);
  CHECK(std::abs(branch_derivative(p320, 1.0, -1.0) + 1.5) < 1e-14);

  const CorrespondenceParams fig(6, 2, cplx(0.0, 0.2));
  const cplx w = cplx(1.0, 0.2);
  CHECK(std::abs(branch_derivative(fig, 1.0, w) - 3.0) < 1e-13);
  const double h = 1e-6;
  const int k = nearest_branch_index(fig, 1.0, w);
  const cplx fd = (branch_image(fig, 1.0 + h, k) - branch_image(fig, 1.0 - h, k)) / (2 * h);
  CHECK(std::abs(fd - 3.0) < 1e-6 * 3.0);

  CHECK_THROWS_AS(branch_derivative(p620, 1.0, cplx(2.0, 0.0)), InvalidPairError);
}

TEST_CASE("annulus bounds: degenerate, interior, and missing") {
  const AnnulusBounds at0 = annulus_bounds(CorrespondenceParams(6, 2, 0.0));
  CHECK(at0.valid);
  CHECK(at0.r_c == 0.0);
  CHECK(at0.R_c == 1.0);
  CHECK(at0.s_c == 1.0);

  // Oracle roots of x^3 - x + 0.2 on (0,1), bisected to 1e-10.
  const double r_oracle = oracle_bisect(g_c02, 1e-9, 0.5, 1e-10);
  const double R_oracle = oracle_bisect(g_c02, 0.5, 1.0 - 1e-9, 1e-10);
  CHECK(r_oracle == doctest::Approx(0.2092).epsilon(1e-3));
  CHECK(R_oracle == doctest::Approx(0.8790).epsilon(1e-3));

  const AnnulusBounds fig = annulus_bounds(CorrespondenceParams(6, 2, cplx(0.0, 0.2)));
  CHECK(fig.valid);
  CHECK(std::abs(fig.r_c - r_oracle) < 1e-6);
  CHECK(std::abs(fig.R_c - R_oracle) < 1e-6);
  CHECK(std::abs(fig.s_c - std::sqrt(1.2)) < 1e-12);
  CHECK(0.0 < fig.r_c);
  CHECK(fig.r_c < fig.R_c);
  CHECK(fig.R_c < 1.0);
  CHECK(1.0 < fig.s_c);

  const AnnulusBounds far = annulus_bounds(CorrespondenceParams(6, 2, 2.0));
  CHECK_FALSE(far.valid);
}

TEST_CASE("expansion estimates on the unit circle") {
  std::vector<cplx> circle;
  for (int i = 0; i < 64; ++i) circle.push_back(std::polar(1.0, 2.0 * kPi * i / 64.0));

  const auto est62 = estimate_expansion(CorrespondenceParams(6, 2, 0.0), circle, 1e-3);
  CHECK(est62.forward_min == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(est62.backward_max == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(est62.expanding);

  const auto est32 = estimate_expansion(CorrespondenceParams(3, 2, 0.0), circle, 1e-3);
  CHECK(est32.forward_min == doctest::Approx(1.5).epsilon(1e-12));

  // On sampled Julia points of the figure parameters the minimum forward
  // stretch stays in (1, 3.5); brute force over all branch values per sample.
  const CorrespondenceParams fig(6, 2, cplx(0.0, 0.2));
  const AnnulusBounds bounds = annulus_bounds(fig);
  const auto samples = inverse_ifs_sample(fig, 300, 50, 42, bounds);
  const auto estj = estimate_expansion(fig, samples, 1e-3);
  double brute = 1e300;
  for (const cplx& z : samples)
    for (const cplx& w : images(fig, z))
      brute = std::min(brute, 3.0 * std::abs(w - fig.c()) / std::abs(z));
  CHECK(estj.forward_min == doctest::Approx(brute).epsilon(1e-12));
  CHECK(estj.forward_min > 1.0);
  CHECK(estj.forward_min < 3.5);

  CHECK_THROWS_AS(estimate_expansion(fig, std::vector<cplx>{fig.c()}, 1e-3),
                  DegenerateSampleError);
}

TEST_CASE("image/preimage duality property") {
  SplitMix64 rng(7);
  const CorrespondenceParams params(5, 3, cplx(0.05, -0.02));
  for (int trial = 0; trial < 100; ++trial) {
    const cplx z = sample_off_axis(rng);
    for (const cplx& w : images(params, z)) {
      double best = 1e300;
      for (const cplx& zeta : preimages(params, w)) best = std::min(best, std::abs(zeta - z));
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("translation identity for preimages") {
  SplitMix64 rng(8);
  const CorrespondenceParams a(4, 3, cplx(0.1, 0.1));
  const CorrespondenceParams b(4, 3, cplx(-0.3, 0.25));
  for (int trial = 0; trial < 100; ++trial) {
    const cplx w = sample_off_axis(rng) + a.c();
    const auto pa = preimages(a, w);
    const auto pb = preimages(b, w - a.c() + b.c());
    for (std::size_t j = 0; j < pa.size(); ++j) CHECK(std::abs(pa[j] - pb[j]) <= 1e-12);
  }
}

TEST_CASE("derivative matches finite differences across the working annulus") {
  SplitMix64 rng(9);
  const CorrespondenceParams params(6, 2, cplx(0.12, -0.08));
  const double h = 1e-6;
  for (int trial = 0; trial < 200; ++trial) {
    const cplx z = sample_off_axis(rng);
    const int k = static_cast<int>(rng.index(params.q()));
    const cplx w = branch_image(params, z, k);
    const cplx fd = (branch_image(params, z + h, k) - branch_image(params, z - h, k)) / (2 * h);
    const cplx exact = branch_derivative(params, z, w);
    CHECK(std::abs(fd - exact) < 1e-6 * std::abs(exact));
  }
}

TEST_CASE("images are distinct with the root-of-unity separation") {
  SplitMix64 rng(10);
  const CorrespondenceParams params(7, 4, cplx(0.02, 0.06));
  for (int trial = 0; trial < 100; ++trial) {
    const cplx z = sample_off_axis(rng);
    const auto w = images(params, z);
    const double floor_sep =
        2.0 * std::sin(kPi / params.q()) * std::pow(std::abs(z), params.beta()) - 1e-9;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j)
        CHECK(std::abs(w[i] - w[j]) >= floor_sep);
  }
}

TEST_CASE("all images escape outward beyond s_c") {
  SplitMix64 rng(11);
  const CorrespondenceParams params(6, 2, cplx(0.0, 0.2));
  const AnnulusBounds bounds = annulus_bounds(params);
  for (int trial = 0; trial < 100; ++trial) {
    const double m = bounds.s_c * (1.0 + 1e-9) * (1.0 + 2.0 * rng.uniform());
    const cplx z = std::polar(m, 2.0 * kPi * rng.uniform());
    for (const cplx& w : images(params, z)) CHECK(std::abs(w) > std::abs(z));
  }
}

TEST_CASE("orbit helpers cycle the word and validate residuals") {
  const CorrespondenceParams params(6, 2, 0.0);
  const std::vector<int> word{0, 1};
  const OrbitSegment orbit = forward_orbit(params, std::polar(1.0, 0.3), word, 9);
  CHECK(orbit.points.size() == 10);
  CHECK(orbit.symbols.size() == 9);
  CHECK(orbit.symbols[2] == 0);
  CHECK(orbit.symbols[3] == 1);
  CHECK(orbit_residual(params, orbit) < 1e-10);
  const OrbitSegment cut = truncate_orbit(orbit, 4);
  CHECK(cut.points.size() == 5);
  CHECK_THROWS_AS(truncate_orbit(cut, 10), ShortOrbitError);
}

TEST_SUITE_END();
