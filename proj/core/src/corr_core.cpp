#include "corrdyn/corr_core.hpp"

#include <cmath>
#include <limits>

namespace corrdyn {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kLogMax = 709.0;  // exp overflows just above this

}  // namespace

CorrespondenceParams::CorrespondenceParams(int p, int q, cplx c)
    : p_(p), q_(q), c_(c) {
  if (q < 1 || p <= q) throw ParameterError("require p > q >= 1");
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    throw ParameterError("c must be finite");
}

double correspondence_residual(const CorrespondenceParams& params, cplx z, cplx w) {
  return std::abs(std::pow(w - params.c(), params.q()) - std::pow(z, params.p()));
}

bool satisfies_correspondence(const CorrespondenceParams& params, cplx z, cplx w) {
  const double scale = std::max(1.0, std::pow(std::abs(z), params.p()));
  return correspondence_residual(params, z, w) <= 1e-10 * scale;
}

cplx branch_image(const CorrespondenceParams& params, cplx z, int k) {
  if (k < 0 || k >= params.q()) throw ParameterError("branch index out of range");
  if (z == cplx(0.0, 0.0)) throw BranchPointError("branch image at z = 0");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw OverflowError("non-finite input");
  const cplx log_z = std::log(z);  // principal: Arg z in (-pi, pi]
  const cplx e = params.beta() * log_z + cplx(0.0, kTwoPi * k / params.q());
  if (e.real() > kLogMax) throw OverflowError("|z|^(p/q) out of floating range");
  return params.c() + std::exp(e);
}

std::vector<cplx> images(const CorrespondenceParams& params, cplx z) {
  if (z == cplx(0.0, 0.0)) {
    // (w - c)^q = 0 has the single solution w = c. With non-integer beta the
    // branch labelling is undefined here, so only the integer case returns.
    if (params.integer_beta()) return {params.c()};
    throw BranchPointError("images at the branch point z = 0");
  }
  std::vector<cplx> out;
  out.reserve(params.q());
  for (int k = 0; k < params.q(); ++k) out.push_back(branch_image(params, z, k));
  return out;
}

std::vector<cplx> preimages(const CorrespondenceParams& params, cplx w) {
  const cplx d = w - params.c();
  if (d == cplx(0.0, 0.0)) throw BranchPointError("preimages at w = c");
  if (!std::isfinite(d.real()) || !std::isfinite(d.imag()))
    throw OverflowError("non-finite input");
  const cplx log_d = std::log(d);
  const double qp = static_cast<double>(params.q()) / params.p();
  std::vector<cplx> out;
  out.reserve(params.p());
  for (int j = 0; j < params.p(); ++j) {
    const cplx e = qp * log_d + cplx(0.0, kTwoPi * j / params.p());
    if (e.real() > kLogMax) throw OverflowError("|w-c|^(q/p) out of floating range");
    out.push_back(std::exp(e));
  }
  return out;
}

cplx branch_derivative(const CorrespondenceParams& params, cplx z, cplx w) {
  if (z == cplx(0.0, 0.0) || w == params.c())
    throw BranchPointError("derivative undefined at a branch point");
  if (!satisfies_correspondence(params, z, w))
    throw InvalidPairError("(z, w) does not satisfy the correspondence");
  return params.beta() * (w - params.c()) / z;
}

double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double tol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw ParameterError("bisect_root: no sign change");
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

AnnulusBounds annulus_bounds(const CorrespondenceParams& params) {
  AnnulusBounds out;
  const double ac = std::abs(params.c());
  if (ac == 0.0) {
    // g(x) = x^beta - x is negative on all of (0,1); the roots are the
    // endpoints themselves and the escape radius collapses to 1.
    out.r_c = 0.0;
    out.R_c = 1.0;
    out.s_c = 1.0;
    out.valid = true;
    return out;
  }
  const double beta = params.beta();
  auto g = [&](double x) { return std::pow(x, beta) - x + ac; };

  const double lo = 1e-12;
  const double hi = 1.0 - 1e-12;
  const int kScan = 1024;
  std::vector<std::pair<double, double>> brackets;
  double x_prev = lo;
  double g_prev = g(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double x = lo + (hi - lo) * i / kScan;
    const double gx = g(x);
    if ((g_prev > 0.0) != (gx > 0.0)) brackets.emplace_back(x_prev, x);
    x_prev = x;
    g_prev = gx;
  }
  if (brackets.size() < 2) return out;  // |c| too large: no dip below zero
  out.r_c = bisect_root(g, brackets.front().first, brackets.front().second, 1e-12);
  out.R_c = bisect_root(g, brackets.back().first, brackets.back().second, 1e-12);
  out.s_c = std::pow(1.0 + ac, static_cast<double>(params.q()) / (params.p() - params.q()));
  out.valid = true;
  return out;
}

ExpansionEstimate estimate_expansion(const CorrespondenceParams& params,
                                     std::span<const cplx> samples, double radius) {
  if (samples.empty()) throw DegenerateSampleError("empty sample set");
  ExpansionEstimate est;
  est.forward_min = std::numeric_limits<double>::infinity();
  est.backward_max = 0.0;
  const double beta = params.beta();
  for (const cplx& z : samples) {
    if (std::abs(z) < radius || std::abs(z - params.c()) < radius)
      throw DegenerateSampleError("sample too close to a branch point");
    for (const cplx& w : images(params, z)) {
      const double fwd = beta * std::abs(w - params.c()) / std::abs(z);
      est.forward_min = std::min(est.forward_min, fwd);
    }
    for (const cplx& zeta : preimages(params, z)) {
      const double bwd = std::abs(zeta) / (beta * std::abs(z - params.c()));
      est.backward_max = std::max(est.backward_max, bwd);
    }
  }
  est.expanding = est.forward_min > 1.0;
  return est;
}

int nearest_branch_index(const CorrespondenceParams& params, cplx z, cplx w) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < params.q(); ++k) {
    const double d = std::abs(branch_image(params, z, k) - w);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

int nearest_preimage_index(const CorrespondenceParams& params, cplx w, cplx target) {
  const auto pre = preimages(params, w);
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int j = 0; j < params.p(); ++j) {
    const double d = std::abs(pre[j] - target);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

OrbitSegment forward_orbit(const CorrespondenceParams& params, cplx z0,
                           std::span<const int> word, std::size_t n) {
  if (word.empty()) throw ParameterError("empty branch word");
  OrbitSegment orbit;
  orbit.direction = OrbitDirection::forward;
  orbit.points.reserve(n + 1);
  orbit.symbols.reserve(n);
  orbit.points.push_back(z0);
  for (std::size_t i = 0; i < n; ++i) {
    const int k = word[i % word.size()];
    orbit.points.push_back(branch_image(params, orbit.points.back(), k));
    orbit.symbols.push_back(k);
  }
  return orbit;
}

OrbitSegment truncate_orbit(const OrbitSegment& orbit, std::size_t n) {
  if (orbit.steps() < n) throw ShortOrbitError("orbit shorter than requested cut");
  OrbitSegment out;
  out.direction = orbit.direction;
  out.points.assign(orbit.points.begin(), orbit.points.begin() + n + 1);
  out.symbols.assign(orbit.symbols.begin(), orbit.symbols.begin() + n);
  return out;
}

double orbit_residual(const CorrespondenceParams& params, const OrbitSegment& orbit) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < orbit.points.size(); ++i) {
    const cplx a = orbit.points[i];
    const cplx b = orbit.points[i + 1];
    // Forward: b is an image of a. Backward: b is a preimage of a.
    const cplx z = orbit.direction == OrbitDirection::forward ? a : b;
    const cplx w = orbit.direction == OrbitDirection::forward ? b : a;
    const double scale = std::max(1.0, std::pow(std::abs(z), params.p()));
    worst = std::max(worst, correspondence_residual(params, z, w) / scale);
  }
  return worst;
}

}  // namespace corrdyn
