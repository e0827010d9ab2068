#include "corrdyn/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>

#include "corrdyn/bundle.hpp"
#include "corrdyn/cycles.hpp"
#include "corrdyn/motion.hpp"
#include "corrdyn/render.hpp"
#include "corrdyn/rng.hpp"
#include "corrdyn/solenoid.hpp"

namespace corrdyn {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 2.0 * kPi;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Random point with modulus in [0.5, 2], staying off the negative real axis
// so indexed branches are continuous around it.
cplx annulus_sample(SplitMix64& rng) {
  const double m = 0.5 * std::exp(rng.uniform() * std::log(4.0));
  const double a = (2.0 * rng.uniform() - 1.0) * (kPi - 2e-2);
  return std::polar(m, a);
}

struct Suite {
  VerifyReport report;

  void run(const std::string& name, const std::function<std::string()>& body) {
    CheckResult res;
    res.name = name;
    try {
      res.detail = body();  // empty string = pass, otherwise failure message
      res.pass = res.detail.empty();
    } catch (const NoConvergenceError& e) {
      res.detail = std::string("numeric: ") + e.what();
      report.numeric_failure = true;
    } catch (const ShadowEscapeError& e) {
      res.detail = std::string("numeric: ") + e.what();
      report.numeric_failure = true;
    } catch (const StarvationError& e) {
      res.detail = std::string("numeric: ") + e.what();
      report.numeric_failure = true;
    } catch (const ContinuationStuckError& e) {
      res.detail = std::string("numeric: ") + e.what();
      report.numeric_failure = true;
    } catch (const Error& e) {
      res.detail = std::string("error: ") + e.what();
    }
    report.checks.push_back(std::move(res));
  }
};

}  // namespace

VerifyReport run_invariant_suite(const CorrespondenceParams& params,
                                 std::uint64_t seed, unsigned threads) {
  Suite suite;
  const CorrespondenceParams base(params.p(), params.q(), 0.0);
  const AnnulusBounds bounds = annulus_bounds(params);
  const AnnulusBounds base_bounds = annulus_bounds(base);

  // --- corr_core -----------------------------------------------------------

  suite.run("corr_core/image_preimage_duality", [&] {
    SplitMix64 rng(seed);
    for (int trial = 0; trial < 32; ++trial) {
      const cplx z = annulus_sample(rng);
      for (const cplx& w : images(params, z)) {
        double best = std::numeric_limits<double>::infinity();
        for (const cplx& zeta : preimages(params, w)) best = std::min(best, std::abs(zeta - z));
        if (best > 1e-9) return "image not recovered among preimages, gap " + fmt(best);
      }
      if (std::abs(z - params.c()) < 1e-6) continue;
      for (const cplx& zeta : preimages(params, z)) {
        double best = std::numeric_limits<double>::infinity();
        for (const cplx& w : images(params, zeta)) best = std::min(best, std::abs(w - z));
        if (best > 1e-9) return "preimage not recovered among images, gap " + fmt(best);
      }
    }
    return std::string();
  });

  suite.run("corr_core/translation_identity", [&] {
    SplitMix64 rng(seed + 1);
    for (int trial = 0; trial < 32; ++trial) {
      const cplx w = annulus_sample(rng) + params.c();
      const cplx c2 = params.c() + cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
      const CorrespondenceParams other(params.p(), params.q(), c2);
      const auto a = preimages(params, w);
      const auto b = preimages(other, w - params.c() + c2);
      for (std::size_t j = 0; j < a.size(); ++j)
        if (std::abs(a[j] - b[j]) > 1e-12)
          return "translated preimages differ by " + fmt(std::abs(a[j] - b[j]));
    }
    return std::string();
  });

  suite.run("corr_core/derivative_matches_finite_difference", [&] {
    SplitMix64 rng(seed + 2);
    const double h = 1e-6;
    for (int trial = 0; trial < 128; ++trial) {
      const cplx z = annulus_sample(rng);
      const int k = static_cast<int>(rng.index(params.q()));
      const cplx w = branch_image(params, z, k);
      const cplx fd =
          (branch_image(params, z + h, k) - branch_image(params, z - h, k)) / (2.0 * h);
      const cplx exact = branch_derivative(params, z, w);
      if (std::abs(fd - exact) > 1e-6 * std::abs(exact))
        return "relative error " + fmt(std::abs(fd - exact) / std::abs(exact));
    }
    return std::string();
  });

  suite.run("corr_core/images_distinct", [&] {
    SplitMix64 rng(seed + 3);
    for (int trial = 0; trial < 32; ++trial) {
      const cplx z = annulus_sample(rng);
      const auto w = images(params, z);
      const double floor_sep =
          2.0 * std::sin(kPi / params.q()) * std::pow(std::abs(z), params.beta()) - 1e-9;
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
          if (std::abs(w[i] - w[j]) < floor_sep)
            return "image separation " + fmt(std::abs(w[i] - w[j])) + " below floor " +
                   fmt(floor_sep);
    }
    return std::string();
  });

  suite.run("corr_core/escape_region_invariance", [&] {
    if (!bounds.valid) return std::string();  // nothing to certify
    SplitMix64 rng(seed + 4);
    for (int trial = 0; trial < 64; ++trial) {
      const double m = bounds.s_c * (1.0 + 1e-9) * (1.0 + rng.uniform());
      const cplx z = std::polar(m, kTwoPi * rng.uniform());
      for (const cplx& w : images(params, z))
        if (std::abs(w) <= std::abs(z))
          return "image modulus " + fmt(std::abs(w)) + " did not grow from " + fmt(m);
    }
    return std::string();
  });

  // --- cycles ---------------------------------------------------------------

  suite.run("cycles/step_residuals_and_classification", [&] {
    const auto grid = default_seed_grid();
    const auto found = attracting_cycles_search(params, 2, grid);
    for (const Cycle& cyc : found) {
      bool through_origin = false;
      for (std::size_t i = 0; i < cyc.points.size(); ++i) {
        const cplx z = cyc.points[i];
        if (std::abs(z) <= 1e-9) {
          through_origin = true;
          continue;  // branch-point step, exempt from the residual rule
        }
        const cplx w = cyc.points[(i + 1) % cyc.points.size()];
        if (std::abs(w) <= 1e-9) continue;
        if (!satisfies_correspondence(params, z, w))
          return std::string("cycle step violates the correspondence residual");
      }
      if (through_origin && cyc.kind != CycleKind::attracting)
        return std::string("cycle through the branch point not classified attracting");
      if (!through_origin && std::abs(cyc.multiplier) >= 1.0)
        return std::string("non-attracting multiplier in attracting search output");
    }
    return std::string();
  });

  suite.run("cycles/census_realized_with_multipliers", [&] {
    for (int n = 1; n <= 2; ++n) {
      const auto census = unit_circle_periodic_points(base, n);
      const double expect_count = std::pow(params.p(), n) - std::pow(params.q(), n);
      if (static_cast<double>(census.size()) != expect_count)
        return "census count " + fmt(static_cast<double>(census.size()));

      // For d = gcd(p, q) > 1 the root-of-unity equation is necessary but not
      // sufficient: the branch words only close the angle recursion on the
      // sublattice of indices divisible by gcd(q^n, d^(n-1)). Those points
      // must all be realized; the others must be realized by no word.
      const std::int64_t d = std::gcd(params.p(), params.q());
      std::int64_t g = 1;
      for (int i = 0; i < n; ++i) g *= params.q();
      std::int64_t dpow = 1;
      for (int i = 0; i + 1 < n; ++i) dpow *= d;
      g = std::gcd(g, dpow);

      std::size_t checked = 0;
      for (std::size_t i = 0; i < census.size() && checked < 24; ++i, ++checked) {
        const cplx target = census[i];
        const bool genuine = static_cast<std::int64_t>(i) % g == 0;
        bool realized = false;
        std::vector<int> word(n, 0);
        while (!realized) {
          try {
            const Cycle cyc = cycle_from_symbols(base, word, target);
            for (const cplx& pt : cyc.points)
              if (std::abs(pt - target) <= 1e-9) {
                const double want = std::pow(params.beta(), n);
                if (std::abs(std::abs(cyc.multiplier) - want) > 1e-9 * want)
                  return std::string("census multiplier off: ") +
                         fmt(std::abs(cyc.multiplier));
                realized = true;
                break;
              }
          } catch (const Error&) {
          }
          int pos = n - 1;
          while (pos >= 0 && word[pos] == params.q() - 1) word[pos--] = 0;
          if (pos < 0) break;
          ++word[pos];
        }
        if (genuine && !realized)
          return std::string("census point not realized by any branch word");
        if (!genuine && realized)
          return std::string("spurious census point closed an orbit");
      }
    }
    return std::string();
  });

  suite.run("cycles/continuation_reversible", [&] {
    if (params.c() == cplx(0.0, 0.0)) return std::string();
    const std::vector<int> word{0};
    const Cycle at_base = cycle_from_symbols(base, word, cplx(1.0, 0.0));
    const Cycle moved = continue_cycle(base, params, at_base, 0.005);
    const Cycle back = continue_cycle(params, base, moved, 0.005);
    for (std::size_t i = 0; i < at_base.points.size(); ++i)
      if (std::abs(back.points[i] - at_base.points[i]) > 1e-8)
        return "return gap " + fmt(std::abs(back.points[i] - at_base.points[i]));
    if (moved.kind != at_base.kind) return std::string("kind changed along the path");
    return std::string();
  });

  // --- bundle ----------------------------------------------------------------

  const BundleParams bp_base = choose_bundle_params(base, base_bounds);

  suite.run("bundle/reconstruction_identity", [&] {
    SplitMix64 rng(seed + 6);
    const std::vector<int> tau{0, 1 % params.q(), 0, 0, 1 % params.q()};
    const OrbitSegment orbit = circle_orbit(base, kTwoPi * rng.uniform(), tau, 45);
    const BundlePoint x = bundle_point_from_orbit(bp_base, orbit);
    BundlePoint it = x;
    std::vector<cplx> projections;
    for (int n = 0; n < 40; ++n) {
      it = bundle_map(base, bp_base, it);
      projections.push_back(it.base);
    }
    cplx series = 0.0;
    double w = bp_base.r;
    for (const cplx& z : projections) {
      series += w * z;
      w *= bp_base.delta;
    }
    if (std::abs(series - x.series) > x.tail_bound + 1e-15)
      return "rebuilt series off by " + fmt(std::abs(series - x.series));
    return std::string();
  });

  suite.run("bundle/projection_semiconjugacy", [&] {
    const std::vector<int> tau{1 % params.q(), 0, 0};
    const OrbitSegment orbit = circle_orbit(base, 0.7, tau, 30);
    BundlePoint x = bundle_point_from_orbit(bp_base, orbit);
    for (int n = 0; n < 8; ++n) {
      const BundlePoint y = bundle_map(base, bp_base, x);
      if (y.base != x.orbit.points[1]) return std::string("projection does not shift the orbit");
      x = y;
    }
    return std::string();
  });

  suite.run("bundle/reencoding_roundtrip", [&] {
    const std::vector<int> tau{0, 0, 1 % params.q()};
    const OrbitSegment orbit = circle_orbit(base, 1.1, tau, 40);
    const BundlePoint x = bundle_point_from_orbit(bp_base, orbit);
    BundleParams other{0.5 * bp_base.r, 0.06};
    const BundlePoint there = reencode(other, x);
    const BundlePoint back = reencode(bp_base, there);
    if (back.base != x.base) return std::string("base changed");
    if (back.orbit.points != x.orbit.points) return std::string("orbit changed");
    if (std::abs(back.series - x.series) > x.tail_bound + back.tail_bound)
      return std::string("series outside combined tails");
    return std::string();
  });

  suite.run("bundle/metric_contracts_on_backward_step", [&] {
    const ExpansionEstimate est = estimate_expansion(
        base, std::vector<cplx>{std::polar(1.0, 0.3), std::polar(1.0, 2.1)}, 1e-3);
    const double lambda = 1.0 / est.forward_min;
    const double s = 0.5;
    const std::vector<int> tau{0};
    const BundlePoint x = bundle_point_from_orbit(bp_base, circle_orbit(base, 0.50, tau, 40));
    const BundlePoint y = bundle_point_from_orbit(bp_base, circle_orbit(base, 0.52, tau, 40));
    const MetricValue before = metric_ds(s, x, y, 25, 2.0 * base_bounds.s_c);
    const BundlePoint gx = bundle_backward_step(base, bp_base, x, 0);
    const BundlePoint gy = bundle_backward_step(base, bp_base, y, 0);
    const MetricValue after = metric_ds(s, gx, gy, 25, 2.0 * base_bounds.s_c);
    const double factor = lambda * (1.0 - s) + s;
    if (after.value > factor * before.value + before.tail + after.tail)
      return "contraction factor " + fmt(after.value / before.value) + " above " + fmt(factor);
    return std::string();
  });

  // --- solenoid ---------------------------------------------------------------

  suite.run("solenoid/angle_maps_follow_the_correspondence", [&] {
    SplitMix64 rng(seed + 8);
    for (int trial = 0; trial < 100; ++trial) {
      const double t = (rng.uniform() - 0.5) * 8.0 * kTwoPi;
      const int k = static_cast<int>(rng.index(params.q()));
      const cplx zq = std::pow(std::polar(1.0, theta(base, k, t)), params.q());
      const cplx zp = std::pow(std::polar(1.0, t), params.p());
      if (std::abs(zq - zp) > 1e-12)
        return "angle image off the correspondence by " + fmt(std::abs(zq - zp));
    }
    return std::string();
  });

  suite.run("solenoid/symbolic_points_inside_torus_cloud", [&] {
    SplitMix64 rng(seed + 9);
    // Raw angle compositions carry ~beta^N * eps of phase noise; keep the
    // truncation where that stays far below the 1e-4 angle matching slack.
    const std::size_t N = std::min<std::size_t>(
        20, static_cast<std::size_t>(std::log(7e9) / std::log(params.beta())));
    const double tail = bp_base.r * std::pow(bp_base.delta, static_cast<double>(N)) /
                        (1.0 - bp_base.delta);
    for (int trial = 0; trial < 100; ++trial) {
      const double t = kTwoPi * rng.uniform();
      std::vector<int> tau(N);
      for (auto& k : tau) k = static_cast<int>(rng.index(params.q()));
      const C2Point g = symbolic_point(bp_base, base, t, tau, N);

      // Walk the torus maps along the conjugate index word; the result is one
      // member of the N-fold iterate cloud seeded at the final angle. The
      // raw angle path mirrors the series construction.
      std::vector<double> angles(N + 1);
      angles[0] = t;
      for (std::size_t nn = 0; nn < N; ++nn)
        angles[nn + 1] = theta(base, tau[nn], angles[nn]);
      double seed_angle = std::fmod(angles[N], kTwoPi);
      if (seed_angle < 0.0) seed_angle += kTwoPi;
      TorusPoint pt{seed_angle, cplx(0.0, 0.0)};
      for (std::size_t nn = N; nn-- > 0;) {
        // Some map index undoes the expansion: the candidate angles are
        // 2 pi / p apart, while angles[nn] carries at most ~beta^N * eps of
        // accumulated phase error, so the nearest match is unambiguous.
        double best_diff = std::numeric_limits<double>::infinity();
        TorusPoint best_cand;
        for (int j = 0; j < params.p(); ++j) {
          const TorusPoint cand = torus_map(bp_base, base, j, pt);
          const double diff = std::abs(std::remainder(cand.t - angles[nn], kTwoPi));
          if (diff < best_diff) {
            best_diff = diff;
            best_cand = cand;
          }
        }
        if (best_diff > 1e-4) return std::string("no torus map matches the angle path");
        pt = best_cand;
      }
      const C2Point embedded{std::polar(1.0, pt.t), pt.disk};
      if (std::abs(embedded.z - g.z) > 1e-9 || std::abs(embedded.w - g.w) > tail + 1e-10)
        return "symbolic point misses the cloud by " + fmt(std::abs(embedded.w - g.w));
    }
    return std::string();
  });

  suite.run("solenoid/truncated_addresses_stay_separated", [&] {
    SplitMix64 rng(seed + 10);
    const std::size_t N = 20;
    const double tail = bp_base.r * std::pow(bp_base.delta, static_cast<double>(N)) /
                        (1.0 - bp_base.delta);
    for (int trial = 0; trial < 200; ++trial) {
      const double t1 = kTwoPi * rng.uniform();
      const double t2 = kTwoPi * rng.uniform();
      std::vector<int> a(N), b(N);
      for (auto& k : a) k = static_cast<int>(rng.index(params.q()));
      for (auto& k : b) k = static_cast<int>(rng.index(params.q()));
      if (std::abs(t1 - t2) < 1e-6 && a == b) continue;
      const C2Point ga = symbolic_point(bp_base, base, t1, a, N);
      const C2Point gb = symbolic_point(bp_base, base, t2, b, N);
      if (std::abs(ga.z - gb.z) <= 2e-7 && std::abs(ga.w - gb.w) <= 2.0 * tail)
        return std::string("two distinct truncated addresses collide");
    }
    return std::string();
  });

  // --- motion -----------------------------------------------------------------

  const std::vector<cplx> circle_cloud = [&] {
    std::vector<cplx> pts;
    for (int i = 0; i < 64; ++i) pts.push_back(std::polar(1.0, kTwoPi * i / 64.0));
    return pts;
  }();
  const MotionConfig cfg = estimate_motion_config(base, circle_cloud);

  suite.run("motion/base_identity_exact", [&] {
    const std::vector<int> tau{0, 1 % params.q()};
    const std::size_t N = 25;
    const OrbitSegment orbit = circle_orbit(base, 0.9, tau, N + kMotionBuffer);
    const BundlePoint x = bundle_point_from_orbit(bp_base, orbit);
    const MotionPoint m = motion_point(base, base, bp_base, x, cfg, N);
    const BundlePoint xN = bundle_point_from_orbit(bp_base, truncate_orbit(orbit, N));
    if (m.value.z != xN.base || m.value.w != xN.series)
      return std::string("identity motion moved the point");
    return std::string();
  });

  suite.run("motion/shadow_roundtrip_and_proximity", [&] {
    if (params.c() == cplx(0.0, 0.0)) return std::string();
    SplitMix64 rng(seed + 11);
    const std::size_t M = 60;
    std::vector<int> tau(8);
    for (auto& k : tau) k = static_cast<int>(rng.index(params.q()));
    const OrbitSegment orbit = circle_orbit(base, kTwoPi * rng.uniform(), tau, M);
    const ShadowedOrbit there = shadow_orbit(base, params, orbit, cfg);
    const double dc = std::abs(params.c());
    const double proximity = cfg.ell * dc / (1.0 - cfg.lambda);
    if (there.sup_deviation > proximity + 1e-9)
      return "deviation " + fmt(there.sup_deviation) + " above " + fmt(proximity);
    if (there.certified && there.sup_deviation >= cfg.eps / 3.0)
      return std::string("certified sweep exceeded eps/3");
    const ShadowedOrbit back = shadow_orbit(params, base, there.orbit, cfg);
    const double allow = 2.0 * std::pow(cfg.lambda, static_cast<double>(kMotionBuffer)) *
                             cfg.eps + 1e-12;
    for (std::size_t i = 0; i + kMotionBuffer < M; ++i)
      if (std::abs(back.orbit.points[i] - orbit.points[i]) > std::max(allow, 1e-8))
        return "roundtrip interior error " +
               fmt(std::abs(back.orbit.points[i] - orbit.points[i]));
    return std::string();
  });

  suite.run("motion/lipschitz_bound", [&] {
    if (params.c() == cplx(0.0, 0.0)) return std::string();
    const std::size_t N = 25;
    const std::vector<int> tau{0};
    const OrbitSegment orbit = circle_orbit(base, 0.4, tau, N + kMotionBuffer);
    const BundlePoint x = bundle_point_from_orbit(bp_base, orbit);
    const std::vector<cplx> targets{params.c(), 0.5 * params.c(), cplx(0.0, 0.0)};
    for (std::size_t i = 0; i < targets.size(); ++i) {
      for (std::size_t j = i + 1; j < targets.size(); ++j) {
        const CorrespondenceParams pu(params.p(), params.q(), targets[i]);
        const CorrespondenceParams pv(params.p(), params.q(), targets[j]);
        const MotionPoint mu = motion_point(base, pu, bp_base, x, cfg, N);
        const MotionPoint mv = motion_point(base, pv, bp_base, x, cfg, N);
        const double lhs = c2_dist(mu.value, mv.value);
        const double rhs = cfg.C0() * std::abs(targets[i] - targets[j]) + 1e-6;
        if (lhs > rhs) return "motion moved " + fmt(lhs) + " > " + fmt(rhs);
      }
    }
    return std::string();
  });

  suite.run("motion/sector_injectivity", [&] {
    const CurveSample curve =
        curve_sample(params, std::vector<int>{0}, 0.0, 0.9 * kPi, 160, cfg, 30);
    if (!injectivity_check(curve, 1e-8))
      return std::string("curve self-intersects at sample resolution");
    return std::string();
  });

  suite.run("motion/dilatation_toward_identity", [&] {
    std::vector<double> ks;
    for (int k = 0; k < 3; ++k) {
      const cplx ck = params.c() * std::pow(0.5, k);
      const CorrespondenceParams target(params.p(), params.q(), ck);
      const CurveSample curve =
          curve_sample(target, std::vector<int>{0}, 0.0, 0.5 * kPi, 120, cfg, 30);
      std::vector<std::pair<cplx, cplx>> pairs;
      pairs.reserve(curve.samples.size());
      for (const auto& [t, z] : curve.samples)
        pairs.emplace_back(std::polar(1.0, t), z);
      const double chord = std::abs(pairs[1].first - pairs[0].first);
      const std::vector<double> scales{4.0 * chord, 8.0 * chord, 16.0 * chord};
      ks.push_back(dilatation_estimate(pairs, scales));
    }
    for (std::size_t k = 0; k + 1 < ks.size(); ++k)
      if (ks[k + 1] > ks[k] * 1.05 + 1e-9)
        return "distortion grew from " + fmt(ks[k]) + " to " + fmt(ks[k + 1]);
    return std::string();
  });

  // --- render -----------------------------------------------------------------

  suite.run("render/survivors_inside_the_annulus", [&] {
    if (!bounds.valid) return std::string();
    Viewport vp{cplx(0.0, 0.0), 2.4 * bounds.s_c, 2.4 * bounds.s_c, 96, 96};
    const double tol = 0.01;
    const RasterGrid grid = membership_grid(params, vp, 8, bounds, tol, threads);
    const double fat = vp.pixel_diagonal();
    for (int iy = 0; iy < vp.ny; ++iy) {
      for (int ix = 0; ix < vp.nx; ++ix) {
        if (grid.at(ix, iy) == 0) continue;
        const double m = std::abs(vp.pixel_center(ix, iy));
        if (m < bounds.R_c * (1.0 - tol) - fat || m > bounds.s_c * (1.0 + tol) + fat)
          return std::string("shaded pixel outside the fattened annulus");
      }
    }
    return std::string();
  });

  suite.run("render/deeper_searches_only_shrink", [&] {
    if (!bounds.valid) return std::string();
    Viewport vp{cplx(0.0, 0.0), 2.4 * bounds.s_c, 2.4 * bounds.s_c, 96, 96};
    const RasterGrid shallow = membership_grid(params, vp, 4, bounds, 0.01, threads);
    const RasterGrid deep = membership_grid(params, vp, 8, bounds, 0.01, threads);
    for (std::size_t i = 0; i < deep.data.size(); ++i)
      if (deep.data[i] == 255 && shallow.data[i] != 255)
        return std::string("pixel survives deep but not shallow");
    return std::string();
  });

  suite.run("render/circle_ground_truth", [&] {
    Viewport vp{cplx(0.0, 0.0), 2.4, 2.4, 128, 128};
    const double tol = 0.01;
    const int depth = 16;
    const RasterGrid grid = membership_grid(base, vp, depth, base_bounds, tol, threads);
    const double shrink = std::pow(params.beta(), -static_cast<double>(depth));
    const double eta = std::pow(1.0 + tol, shrink) - 1.0;
    const double fat = vp.pixel_diagonal();
    for (int iy = 0; iy < vp.ny; ++iy)
      for (int ix = 0; ix < vp.nx; ++ix)
        if (grid.at(ix, iy) == 255) {
          const double m = std::abs(vp.pixel_center(ix, iy));
          if (std::abs(m - 1.0) > eta + fat)
            return std::string("full-depth survivor off the unit circle");
        }
    return std::string();
  });

  suite.run("render/backward_samples_survive_forward_search", [&] {
    if (!bounds.valid) return std::string();
    const auto pts = inverse_ifs_sample(params, 200, 50, seed + 12, bounds);
    for (const cplx& z : pts)
      if (!survives(params, z, 12, bounds, 0.01))
        return std::string("sampled point rejected by the survival search");
    return std::string();
  });

  // --- cli --------------------------------------------------------------------

  suite.run("cli/seeded_streams_are_reproducible", [&] {
    if (!bounds.valid) return std::string();
    const auto a = inverse_ifs_sample(params, 300, 20, seed + 13, bounds);
    const auto b = inverse_ifs_sample(params, 300, 20, seed + 13, bounds);
    if (a != b) return std::string("two identical seeds produced different streams");
    if (points_csv(a) != points_csv(b)) return std::string("CSV encoding not reproducible");
    return std::string();
  });

  return suite.report;
}

}  // namespace corrdyn
