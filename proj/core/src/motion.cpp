#include "corrdyn/motion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "corrdyn/solenoid.hpp"

namespace corrdyn {

double branch_separation(const CorrespondenceParams& params,
                         std::span<const cplx> samples) {
  double sep = std::numeric_limits<double>::infinity();
  auto min_gap = [&](const std::vector<cplx>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        sep = std::min(sep, std::abs(pts[i] - pts[j]));
  };
  for (const cplx& z : samples) {
    min_gap(images(params, z));
    min_gap(preimages(params, z));
  }
  return sep;
}

MotionConfig estimate_motion_config(const CorrespondenceParams& params_base,
                                    std::span<const cplx> samples, double ell) {
  if (samples.empty()) throw DegenerateSampleError("empty sample set");
  if (ell < 1.0) throw ParameterError("metric distortion ell must be >= 1");
  MotionConfig cfg;
  cfg.ell = ell;
  cfg.eps = std::min(0.1, branch_separation(params_base, samples) / (10.0 * ell));
  // Shadowed orbits stay within eps/3 of the base set, so the contraction
  // constant is measured over a radially fattened copy of the samples.
  const double fat = cfg.eps / 3.0;
  std::vector<cplx> fattened;
  fattened.reserve(samples.size() * 5);
  for (const cplx& z : samples)
    for (int j = -2; j <= 2; ++j) fattened.push_back(z * (1.0 + 0.5 * j * fat));
  const ExpansionEstimate est = estimate_expansion(params_base, fattened, 1e-6);
  cfg.lambda = est.backward_max;
  if (cfg.lambda >= 1.0)
    throw ParameterError("backward branches do not contract near the samples");
  cfg.U_radius = cfg.eps * (1.0 - cfg.lambda) / (6.0 * ell);
  return cfg;
}

ShadowedOrbit shadow_orbit(const CorrespondenceParams& params_u,
                           const CorrespondenceParams& params_v,
                           const OrbitSegment& orbit_u, const MotionConfig& cfg) {
  if (orbit_u.direction != OrbitDirection::forward)
    throw ParameterError("shadowing sweeps forward orbits");
  if (orbit_u.points.size() < 2) throw ShortOrbitError("orbit carries no step");
  const double dc = std::abs(params_u.c() - params_v.c());

  ShadowedOrbit out;
  out.certified = dc < cfg.U_radius;
  const std::size_t N = orbit_u.steps();
  out.entry_bounds.assign(N + 1, 0.0);

  if (params_u == params_v) {
    // The translated branch fixes the stored orbit, nothing moves.
    out.orbit = orbit_u;
    out.sup_deviation = 0.0;
    return out;
  }

  std::vector<cplx> w(N + 1);
  w[N] = orbit_u.points[N];
  for (std::size_t i = N; i > 0; --i) {
    const auto pre = preimages(params_v, w[i]);
    const cplx target = orbit_u.points[i - 1];
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < pre.size(); ++j) {
      const double d = std::abs(pre[j] - target);
      if (d < best) {
        second = best;
        best = d;
        best_j = j;
      } else if (d < second) {
        second = d;
      }
    }
    if (second - best < 1e-12)
      throw AmbiguousBranchError("two preimages equidistant from the shadowed entry");
    w[i - 1] = pre[best_j];
    const double dev = std::abs(w[i - 1] - target);
    if (dev >= cfg.eps)
      throw ShadowEscapeError("shadow drifted beyond eps from the source orbit");
    out.sup_deviation = std::max(out.sup_deviation, dev);
  }

  out.orbit.direction = OrbitDirection::forward;
  out.orbit.points = std::move(w);
  out.orbit.symbols.resize(N);
  for (std::size_t i = 0; i < N; ++i)
    out.orbit.symbols[i] =
        nearest_branch_index(params_v, out.orbit.points[i], out.orbit.points[i + 1]);

  const double unit = cfg.ell * dc / (1.0 - cfg.lambda);
  double factor = 1.0;
  for (std::size_t i = N + 1; i-- > 0;) {
    out.entry_bounds[i] = factor * unit;
    factor *= cfg.lambda;
  }
  return out;
}

MotionPoint motion_point(const CorrespondenceParams& params_base,
                         const CorrespondenceParams& params_target,
                         const BundleParams& bp, const BundlePoint& x,
                         const MotionConfig& cfg, std::size_t N) {
  if (x.direction() != OrbitDirection::forward)
    throw ParameterError("motion is computed on forward-encoded points");
  if (x.orbit.steps() < N + kMotionBuffer)
    throw ShortOrbitError("orbit too short for the requested truncation");
  const ShadowedOrbit sh = shadow_orbit(params_base, params_target, x.orbit, cfg);

  MotionPoint out;
  out.value.z = sh.orbit.points[0];
  out.base_bound = sh.entry_bounds[0];
  cplx s = 0.0;
  double weight = bp.r;
  double bound = 0.0;
  double max_mod = 0.0;
  for (std::size_t k = 1; k <= N; ++k) {
    s += weight * sh.orbit.points[k];
    bound += weight * sh.entry_bounds[k];
    max_mod = std::max(max_mod, std::abs(sh.orbit.points[k]));
    weight *= bp.delta;
  }
  out.value.w = s;
  out.fiber_bound = bound + bp.r * std::pow(bp.delta, static_cast<double>(N)) *
                                max_mod / (1.0 - bp.delta);
  return out;
}

std::vector<cplx> branched_motion(const CorrespondenceParams& params_base,
                                  const CorrespondenceParams& params_target, cplx z,
                                  std::span<const std::vector<int>> words,
                                  const MotionConfig& cfg, std::size_t N) {
  if (params_base == params_target) return {z};  // the motion at base is the identity

  // Points on the base circle lift through the angle recursion: composing
  // branch images directly would amplify any modulus error by beta^n and
  // overflow long before N + buffer steps.
  const bool on_circle =
      params_base.c() == cplx(0.0, 0.0) && std::abs(std::abs(z) - 1.0) <= 1e-9;
  std::vector<cplx> values;
  values.reserve(words.size());
  for (const auto& word : words) {
    const OrbitSegment orbit =
        on_circle ? circle_orbit(params_base, std::arg(z), word, N + kMotionBuffer)
                  : forward_orbit(params_base, z, word, N + kMotionBuffer);
    const ShadowedOrbit sh = shadow_orbit(params_base, params_target, orbit, cfg);
    values.push_back(sh.orbit.points[0]);
  }
  std::sort(values.begin(), values.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<cplx> out;
  for (const cplx& v : values) {
    bool dup = false;
    for (const cplx& kept : out)
      if (std::abs(kept - v) <= 1e-10) dup = true;
    if (!dup) out.push_back(v);
  }
  return out;
}

double CurveSample::grid_step() const {
  double step = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    step = std::max(step, samples[i + 1].first - samples[i].first);
  return step;
}

CurveSample curve_sample(const CorrespondenceParams& params_target,
                         std::span<const int> tau, double t0, double t1,
                         std::size_t M, const MotionConfig& cfg, std::size_t N) {
  if (M < 2) throw ParameterError("need at least two curve samples");
  if (t1 <= t0) throw ParameterError("empty parameter range");
  const CorrespondenceParams base(params_target.p(), params_target.q(), 0.0);
  CurveSample curve;
  curve.tau.assign(tau.begin(), tau.end());
  curve.c = params_target.c();
  curve.truncation = N;
  curve.eps = cfg.eps;
  curve.lambda = cfg.lambda;
  curve.samples.reserve(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double t = t0 + (t1 - t0) * static_cast<double>(j) / static_cast<double>(M - 1);
    const OrbitSegment lift = circle_orbit(base, t, tau, N + kMotionBuffer);
    const ShadowedOrbit sh = shadow_orbit(base, params_target, lift, cfg);
    curve.samples.emplace_back(t, sh.orbit.points[0]);
  }
  return curve;
}

double holomorphy_residual(const CorrespondenceParams& params_base,
                           const BundleParams& bp, const BundlePoint& x,
                           std::span<const cplx> c_grid, const MotionConfig& cfg,
                           std::size_t N) {
  // Expect the cross {center + h, center + ih, center - h, center - ih};
  // a center entry may also be present and is skipped. The mean of either
  // layout is the center itself.
  if (c_grid.size() != 4 && c_grid.size() != 5)
    throw ParameterError("stencil must contain the 4 cross points (plus optional center)");
  cplx mean = 0.0;
  for (const cplx& c : c_grid) mean += c;
  mean /= static_cast<double>(c_grid.size());

  double max_offset = 0.0;
  for (const cplx& c : c_grid) max_offset = std::max(max_offset, std::abs(c - mean));
  if (max_offset <= 0.0) throw ParameterError("degenerate stencil");
  std::vector<cplx> arms;
  for (const cplx& c : c_grid)
    if (std::abs(c - mean) > 0.5 * max_offset) arms.push_back(c);
  if (arms.size() != 4) throw ParameterError("stencil must have 4 arm points");
  double h = 0.0;
  for (const cplx& c : arms) h += std::abs(c - mean) / 4.0;

  const cplx rot(0.0, 1.0);
  // Order the arms as center + h * i^j.
  cplx sum_z = 0.0;
  cplx sum_w = 0.0;
  cplx dir = 1.0;
  for (int j = 0; j < 4; ++j, dir *= rot) {
    const cplx cj = mean + h * dir;
    const cplx* found = nullptr;
    for (const cplx& c : arms)
      if (std::abs(c - cj) <= 1e-9 * h) found = &c;
    if (!found) throw ParameterError("stencil is not an axis-aligned cross");
    const CorrespondenceParams target(params_base.p(), params_base.q(), *found);
    const MotionPoint m = motion_point(params_base, target, bp, x, cfg, N);
    sum_z += dir * m.value.z;
    sum_w += dir * m.value.w;
  }
  return std::max(std::abs(sum_z), std::abs(sum_w)) / (4.0 * h);
}

double dilatation_estimate(std::span<const std::pair<cplx, cplx>> samples,
                           std::span<const double> scales) {
  if (samples.size() < 3) throw InsufficientSamplesError("need at least 3 samples");
  if (scales.empty()) throw ParameterError("need at least one scale");
  double worst = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double best_over_scales = std::numeric_limits<double>::infinity();
    bool point_valid = false;
    for (double scale : scales) {
      double qmin = std::numeric_limits<double>::infinity();
      double qmax = 0.0;
      int partners = 0;
      for (std::size_t j = 0; j < samples.size(); ++j) {
        if (j == i) continue;
        const double d = std::abs(samples[i].first - samples[j].first);
        if (d < 0.9 * scale || d > 1.1 * scale) continue;
        const double quot = std::abs(samples[i].second - samples[j].second) / d;
        qmin = std::min(qmin, quot);
        qmax = std::max(qmax, quot);
        ++partners;
      }
      if (partners < 2 || qmin <= 0.0) continue;
      point_valid = true;
      best_over_scales = std::min(best_over_scales, qmax / qmin);
    }
    if (point_valid) {
      any = true;
      worst = std::max(worst, best_over_scales);
    }
  }
  if (!any)
    throw InsufficientSamplesError("no sample has enough partners at any scale");
  return worst;
}

bool injectivity_check(const CurveSample& curve, double tol) {
  if (curve.samples.size() < 2) throw ParameterError("need at least two samples");
  const double step = curve.grid_step() * (1.0 + 1e-9);
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    for (std::size_t j = i + 1; j < curve.samples.size(); ++j) {
      if (curve.samples[j].first - curve.samples[i].first <= step) continue;
      if (std::abs(curve.samples[i].second - curve.samples[j].second) < tol)
        return false;
    }
  }
  return true;
}

std::string curve_csv(const CurveSample& curve) {
  std::string out = "#tau=";
  for (int k : curve.tau) out += static_cast<char>('0' + k);
  char buf[160];
  std::snprintf(buf, sizeof buf, " c=%.17g%+.17gi N=%zu eps=%.17g lambda=%.17g\n",
                curve.c.real(), curve.c.imag(), curve.truncation, curve.eps,
                curve.lambda);
  out += buf;
  out += "t,z_re,z_im\n";
  for (const auto& [t, z] : curve.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t, z.real(), z.imag());
    out += buf;
  }
  return out;
}

}  // namespace corrdyn
