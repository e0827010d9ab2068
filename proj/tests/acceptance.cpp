// Acceptance suite: every release criterion in one binary, one line each.
// Exit code 0 iff all criteria hold.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "corrdyn/bundle.hpp"
#include "corrdyn/cli.hpp"
#include "corrdyn/corr_core.hpp"
#include "corrdyn/cycles.hpp"
#include "corrdyn/motion.hpp"
#include "corrdyn/render.hpp"
#include "corrdyn/rng.hpp"
#include "corrdyn/solenoid.hpp"

using namespace corrdyn;

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 2.0 * kPi;

int g_failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (") + e.what() + ")";
  }
  if (!ok) ++g_failures;
  std::printf("criterion %2d %s: %s%s\n", number, ok ? "PASS" : "FAIL", label.c_str(),
              note.c_str());
  std::fflush(stdout);
}

double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a);
  for (int i = 0; i < 300 && b - a > tol; ++i) {
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

MotionConfig circle_config(const CorrespondenceParams& base) {
  std::vector<cplx> cloud;
  for (int i = 0; i < 64; ++i) cloud.push_back(std::polar(1.0, kTwoPi * i / 64.0));
  return estimate_motion_config(base, cloud);
}

BundlePoint random_circle_point(const CorrespondenceParams& base, const BundleParams& bp,
                                SplitMix64& rng, std::size_t steps) {
  std::vector<int> tau(10);
  for (auto& k : tau) k = static_cast<int>(rng.index(base.q()));
  return bundle_point_from_orbit(bp, circle_orbit(base, kTwoPi * rng.uniform(), tau, steps));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double curve_distortion(const CorrespondenceParams& target, const MotionConfig& cfg,
                        std::size_t M, std::size_t N) {
  const CurveSample curve =
      curve_sample(target, std::vector<int>{0}, 0.0, 0.5 * kPi, M, cfg, N);
  std::vector<std::pair<cplx, cplx>> pairs;
  pairs.reserve(curve.samples.size());
  for (const auto& [t, z] : curve.samples) pairs.emplace_back(std::polar(1.0, t), z);
  const double chord = std::abs(pairs[1].first - pairs[0].first);
  const std::vector<double> scales{4.0 * chord, 8.0 * chord, 16.0 * chord};
  return dilatation_estimate(pairs, scales);
}

}  // namespace

int main() {
  const CorrespondenceParams base62(6, 2, 0.0);
  const AnnulusBounds bounds62 = annulus_bounds(base62);

  criterion(1, "circle ground truth at c=0 under 60 s", [&] {
    const auto start = std::chrono::steady_clock::now();

    const auto pts = inverse_ifs_sample(base62, 10000, 100, 2024, bounds62);
    for (const cplx& z : pts)
      if (std::abs(std::abs(z) - 1.0) > 1e-9) return false;

    const int depth = 24;
    const double tol = 0.01;
    Viewport vp{cplx(0.0, 0.0), 2.4, 2.4, 512, 512};
    const RasterGrid grid = membership_grid(base62, vp, depth, bounds62, tol, 0);

    // The shaded set must agree with the analytic annulus mask up to a
    // one-pixel boundary band, and full-depth survivors must hug |z| = 1.
    const double fat = vp.pixel_diagonal();
    const double eta = std::pow(1.0 + tol, std::pow(3.0, -depth)) - 1.0;
    for (int iy = 0; iy < vp.ny; ++iy) {
      for (int ix = 0; ix < vp.nx; ++ix) {
        const double m = std::abs(vp.pixel_center(ix, iy));
        const bool in_mask = m >= 0.99 && m <= 1.01;
        const bool shaded = grid.at(ix, iy) != 0;
        if (shaded != in_mask && std::abs(m - 0.99) > fat && std::abs(m - 1.01) > fat)
          return false;
        if (grid.at(ix, iy) == 255 && std::abs(m - 1.0) > eta + fat) return false;
      }
    }

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return elapsed < 60.0;
  });

  criterion(2, "periodic-point census for (3,2)", [&] {
    const CorrespondenceParams base32(3, 2, 0.0);
    for (int n = 1; n <= 2; ++n) {
      const auto census = unit_circle_periodic_points(base32, n);
      if (census.size() != (n == 1 ? 1u : 5u)) return false;
      for (const cplx& target : census) {
        bool realized = false;
        std::vector<int> word(n, 0);
        while (true) {
          try {
            const Cycle cyc = cycle_from_symbols(base32, word, target);
            for (const cplx& pt : cyc.points) {
              if (std::abs(pt - target) <= 1e-9) {
                const double want = std::pow(1.5, n);
                if (std::abs(std::abs(cyc.multiplier) - want) > 1e-9 * want) return false;
                realized = true;
              }
            }
          } catch (const Error&) {
          }
          if (realized) break;
          int pos = n - 1;
          while (pos >= 0 && word[pos] == 1) word[pos--] = 0;
          if (pos < 0) break;
          ++word[pos];
        }
        if (!realized) return false;
      }
    }
    return true;
  });

  criterion(3, "branch derivative vs central differences", [&] {
    SplitMix64 rng(3);
    const double h = 1e-6;
    for (int trial = 0; trial < 1000; ++trial) {
      const double m = 0.5 * std::exp(rng.uniform() * std::log(4.0));
      const double a = (2.0 * rng.uniform() - 1.0) * (kPi - 2e-2);
      const cplx z = std::polar(m, a);
      const cplx c = std::polar(0.3 * rng.uniform(), kTwoPi * rng.uniform());
      const CorrespondenceParams params(6, 2, c);
      const int k = static_cast<int>(rng.index(2));
      const cplx w = branch_image(params, z, k);
      const cplx fd =
          (branch_image(params, z + h, k) - branch_image(params, z - h, k)) / (2.0 * h);
      const cplx exact = branch_derivative(params, z, w);
      if (std::abs(fd - exact) >= 1e-6 * std::abs(exact)) return false;
    }
    return true;
  });

  criterion(4, "annulus radii at c=0.2i and sample containment", [&] {
    const CorrespondenceParams fig(6, 2, cplx(0.0, 0.2));
    const AnnulusBounds b = annulus_bounds(fig);
    if (!b.valid) return false;
    auto g = [](double x) { return x * x * x - x + 0.2; };
    const double r_oracle = bisect(g, 1e-9, 0.5, 1e-12);
    const double R_oracle = bisect(g, 0.5, 1.0 - 1e-9, 1e-12);
    if (std::abs(b.r_c - r_oracle) > 1e-9) return false;
    if (std::abs(b.R_c - R_oracle) > 1e-9) return false;
    if (std::abs(b.r_c - 0.2092) > 1e-3) return false;
    if (std::abs(b.R_c - 0.8790) > 1e-3) return false;
    if (std::abs(b.s_c - 1.09545) > 1e-5) return false;
    const auto pts = inverse_ifs_sample(fig, 10000, 100, 2024, b);
    for (const cplx& z : pts) {
      if (std::abs(z) < b.R_c - 0.05) return false;
      if (std::abs(z) > b.s_c + 0.05) return false;
    }
    return true;
  });

  criterion(5, "shadowing: conjugacy, identity, round trip", [&] {
    const MotionConfig cfg = circle_config(base62);
    const BundleParams bp = choose_bundle_params(base62, bounds62);
    const std::size_t N = 40;
    SplitMix64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const BundlePoint x = random_circle_point(base62, bp, rng, N + kMotionBuffer + 1);
      const cplx c = std::polar(0.02 * rng.uniform(), kTwoPi * rng.uniform());
      const CorrespondenceParams target(6, 2, c);

      const MotionPoint self = motion_point(base62, base62, bp, x, cfg, N);
      const BundlePoint xN = bundle_point_from_orbit(bp, truncate_orbit(x.orbit, N));
      if (self.value.z != xN.base || self.value.w != xN.series) return false;

      const MotionPoint hx = motion_point(base62, target, bp, x, cfg, N);
      const MotionPoint hfx =
          motion_point(base62, target, bp, bundle_map(base62, bp, x), cfg, N);
      const ShadowedOrbit sh = shadow_orbit(base62, target, x.orbit, cfg);
      const cplx phi = branch_image(target, sh.orbit.points[0], sh.orbit.symbols[0]);
      const C2Point rhs{phi, hx.value.w / bp.delta - bp.r * phi / bp.delta};
      if (c2_dist(hfx.value, rhs) > 1e-8) return false;

      const ShadowedOrbit back = shadow_orbit(target, base62, sh.orbit, cfg);
      for (std::size_t i = 0; i + kMotionBuffer < x.orbit.points.size(); ++i)
        if (std::abs(back.orbit.points[i] - x.orbit.points[i]) > 1e-8) return false;
    }
    return true;
  });

  criterion(6, "Lipschitz constant and Hausdorff decay", [&] {
    const MotionConfig cfg = circle_config(base62);
    if (cfg.lambda < 1.0 / 3.0 || cfg.lambda > 0.35) return false;
    const double c0 = cfg.C0();
    if (c0 < 1.5 || c0 > 1.55) return false;

    const BundleParams bp = choose_bundle_params(base62, bounds62);
    const std::size_t N = 30;
    SplitMix64 rng(6);
    std::vector<cplx> grid;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        grid.emplace_back(-0.014 + 0.007 * i, -0.014 + 0.007 * j);
    for (int trial = 0; trial < 6; ++trial) {
      const BundlePoint x = random_circle_point(base62, bp, rng, N + kMotionBuffer + 1);
      std::vector<C2Point> values;
      values.reserve(grid.size());
      for (const cplx& c : grid) {
        const CorrespondenceParams target(6, 2, c);
        values.push_back(motion_point(base62, target, bp, x, cfg, N).value);
      }
      for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j)
          if (c2_dist(values[i], values[j]) > c0 * std::abs(grid[i] - grid[j]) + 1e-6)
            return false;
    }

    std::vector<cplx> circle;
    for (int i = 0; i < 1024; ++i) circle.push_back(std::polar(1.0, kTwoPi * i / 1024.0));
    double prev = 1e300;
    for (int k = 0; k <= 3; ++k) {
      const cplx c = cplx(0.0, 0.2) * std::pow(0.5, k);
      const CorrespondenceParams params(6, 2, c);
      const auto pts = inverse_ifs_sample(params, 3000, 100, 60 + k, annulus_bounds(params));
      const double dist = hausdorff_distance(pts, circle);
      if (dist >= prev) return false;
      prev = dist;
    }
    return true;
  });

  criterion(7, "holomorphy of the motion in c", [&] {
    const MotionConfig cfg = circle_config(base62);
    const BundleParams bp = choose_bundle_params(base62, bounds62);
    const std::size_t N = 40;
    SplitMix64 rng(7);
    auto stencil = [](double h) {
      return std::vector<cplx>{cplx(h, 0.0), cplx(0.0, h), cplx(-h, 0.0), cplx(0.0, -h)};
    };
    for (int trial = 0; trial < 20; ++trial) {
      const BundlePoint x = random_circle_point(base62, bp, rng, N + kMotionBuffer + 1);
      if (holomorphy_residual(base62, bp, x, stencil(1e-3), cfg, N) > 1e-4) return false;
      if (holomorphy_residual(base62, bp, x, stencil(5e-4), cfg, N) > 2.5e-5) return false;
    }
    return true;
  });

  criterion(8, "solenoid: symbolic vs solid-torus construction", [&] {
    const BundleParams bp = choose_bundle_params(base62, bounds62);
    const std::size_t N = 20;
    const double tail =
        bp.r * std::pow(bp.delta, static_cast<double>(N)) / (1.0 - bp.delta);
    SplitMix64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      const double t = kTwoPi * rng.uniform();
      std::vector<int> tau(N);
      for (auto& k : tau) k = static_cast<int>(rng.index(2));
      const C2Point g = symbolic_point(bp, base62, t, tau, N);

      std::vector<double> angles(N + 1);
      angles[0] = t;
      for (std::size_t n = 0; n < N; ++n) angles[n + 1] = theta(base62, tau[n], angles[n]);
      double seed_angle = std::fmod(angles[N], kTwoPi);
      if (seed_angle < 0.0) seed_angle += kTwoPi;
      TorusPoint pt{seed_angle, cplx(0.0, 0.0)};
      for (std::size_t n = N; n-- > 0;) {
        double best = 1e300;
        TorusPoint chosen;
        for (int j = 0; j < 6; ++j) {
          const TorusPoint cand = torus_map(bp, base62, j, pt);
          const double diff = std::abs(std::remainder(cand.t - angles[n], kTwoPi));
          if (diff < best) {
            best = diff;
            chosen = cand;
          }
        }
        if (best > 1e-4) return false;
        pt = chosen;
      }
      if (std::abs(std::polar(1.0, pt.t) - g.z) > 1e-9) return false;
      if (std::abs(pt.disk - g.w) > tail + 1e-10) return false;
    }

    // Shared fixed point of both constructions.
    const std::vector<int> zeros(N, 0);
    const C2Point sym = symbolic_point(bp, base62, 0.0, zeros, N);
    if (std::abs(sym.z - 1.0) > 1e-12) return false;
    if (std::abs(sym.w - bp.r / (1.0 - bp.delta)) > 1e-12) return false;
    TorusPoint star{0.0, cplx(bp.r / (1.0 - bp.delta), 0.0)};
    for (int i = 0; i < 20; ++i) star = torus_map(bp, base62, 0, star);
    if (std::abs(star.t) > 1e-12) return false;
    if (std::abs(star.disk - cplx(bp.r / (1.0 - bp.delta), 0.0)) > 1e-12) return false;

    // Injectivity spot check on truncated addresses.
    for (int trial = 0; trial < 200; ++trial) {
      const double t1 = kTwoPi * rng.uniform();
      const double t2 = kTwoPi * rng.uniform();
      std::vector<int> a(N), b(N);
      for (auto& k : a) k = static_cast<int>(rng.index(2));
      for (auto& k : b) k = static_cast<int>(rng.index(2));
      if (std::abs(t1 - t2) < 1e-6 && a == b) continue;
      const C2Point ga = symbolic_point(bp, base62, t1, a, N);
      const C2Point gb = symbolic_point(bp, base62, t2, b, N);
      if (std::abs(ga.z - gb.z) <= 2e-7 && std::abs(ga.w - gb.w) <= 2.0 * tail)
        return false;
    }
    return true;
  });

  criterion(9, "quartic example: branch-point cycle and escape radius", [&] {
    const CorrespondenceParams quartic(4, 2, cplx(-1.0, 0.0));
    const auto found = attracting_cycles_search(quartic, 2, default_seed_grid());
    bool has_pair = false;
    for (const Cycle& cyc : found) {
      if (cyc.period() != 2 || cyc.kind != CycleKind::attracting) continue;
      bool zero = false, minus_one = false;
      for (const cplx& pt : cyc.points) {
        if (std::abs(pt) <= 1e-9) zero = true;
        if (std::abs(pt + 1.0) <= 1e-9) minus_one = true;
      }
      if (zero && minus_one) has_pair = true;
    }
    if (!has_pair) return false;

    auto g2 = [](double x) { return x * x - x - 1.0; };
    const double R2 = bisect(g2, 1.0, 2.0, 1e-12);
    if (std::abs(R2 - 1.6180339887) > 1e-8) return false;

    // Second branch out of -1 escapes: 0 -> -1 -> -2 with |-2| > R2.
    const auto w = images(quartic, cplx(-1.0, 0.0));
    bool escaping = false;
    for (const cplx& value : w)
      if (std::abs(value + 2.0) < 1e-12 && std::abs(value) > R2) escaping = true;
    return escaping;
  });

  criterion(10, "dilatation regression along shrinking c", [&] {
    const MotionConfig cfg = circle_config(base62);
    const double k_at_0 = curve_distortion(base62, cfg, 400, 40);
    if (std::abs(k_at_0 - 1.0) > 1e-9) return false;
    std::vector<double> ks;
    for (int k = 0; k <= 4; ++k) {
      const CorrespondenceParams target(6, 2, cplx(0.0, 0.02) * std::pow(0.5, k));
      ks.push_back(curve_distortion(target, cfg, 400, 40));
    }
    if (ks[0] > 1.5) return false;
    for (std::size_t k = 0; k + 1 < ks.size(); ++k)
      if (ks[k + 1] > ks[k] * 1.05) return false;
    return true;
  });

  criterion(11, "renders at 0.2i and 0.35i differ and stay in their annuli", [&] {
    const int size = 512;
    const int depth = 24;
    const double tol = 0.01;
    Viewport vp{cplx(0.0, 0.0), 2.6, 2.6, size, size};
    std::vector<RasterGrid> grids;
    for (const double im : {0.2, 0.35}) {
      const CorrespondenceParams params(6, 2, cplx(0.0, im));
      const AnnulusBounds b = annulus_bounds(params);
      if (!b.valid) return false;
      const RasterGrid grid = membership_grid(params, vp, depth, b, tol, 0);
      const double fat = vp.pixel_diagonal();
      int nonzero = 0;
      for (int iy = 0; iy < size; ++iy) {
        for (int ix = 0; ix < size; ++ix) {
          if (grid.at(ix, iy) == 0) continue;
          ++nonzero;
          const double m = std::abs(vp.pixel_center(ix, iy));
          if (m < b.R_c * (1.0 - tol) - fat || m > b.s_c * (1.0 + tol) + fat) return false;
        }
      }
      if (nonzero == 0) return false;
      grids.push_back(grid);
    }
    write_pgm(grids[0], "julia_c0.2i.pgm");
    write_pgm(grids[1], "julia_c0.35i.pgm");
    std::size_t differing = 0;
    for (std::size_t i = 0; i < grids[0].data.size(); ++i)
      if (grids[0].data[i] != grids[1].data[i]) ++differing;
    return differing > static_cast<std::size_t>(0.01 * size * size);
  });

  criterion(12, "seeded commands are byte-identical across runs and threads", [&] {
#ifdef CORRDYN_CLI_PATH
    const std::string cli = CORRDYN_CLI_PATH;
#else
    const std::string cli;
    return false;
#endif
    const auto dir = std::filesystem::temp_directory_path();
    auto path = [&](const char* name) { return (dir / name).string(); };
    auto shell = [&](const std::string& cmd) { return std::system(cmd.c_str()) == 0; };

    const std::string common = " --p 6 --q 2 --c 0+0.2i --seed 11 ";
    struct Pair {
      std::string cmd;
      std::string a;
      std::string b;
    };
    const std::vector<Pair> runs{
        {"sample-julia" + common + "--n 2000 --out ", path("acc_s_a.csv"), path("acc_s_b.csv")},
        {"dual-julia" + common + "--n 500 --max-period 1 --cycles-out /dev/null --out ",
         path("acc_d_a.csv"), path("acc_d_b.csv")},
        {"curve --p 6 --q 2 --c 0+0.02i --tau 0 --M 60 --N 30 --out ", path("acc_c_a.csv"),
         path("acc_c_b.csv")},
        {"solenoid --p 6 --q 2 --samples 12 --iters 2 --out ", path("acc_o_a.csv"),
         path("acc_o_b.csv")},
        {"motion-check --p 6 --q 2 --c 0+0.01i --points 6 --seed 17 > ",
         path("acc_m_a.txt"), path("acc_m_b.txt")},
    };
    for (const Pair& r : runs) {
      if (!shell(cli + " " + r.cmd + r.a)) return false;
      if (!shell(cli + " " + r.cmd + r.b)) return false;
      const std::string a = slurp(r.a);
      if (a.empty() || a != slurp(r.b)) return false;
      std::filesystem::remove(r.a);
      std::filesystem::remove(r.b);
    }

    const std::string render = " render-julia --p 6 --q 2 --c 0+0.2i --size 256 --depth 12";
    if (!shell(cli + render + " --threads 1 --out " + path("acc_r1.pgm") + " > /dev/null"))
      return false;
    if (!shell(cli + render + " --threads 4 --out " + path("acc_r4.pgm") + " > /dev/null"))
      return false;
    if (!shell(cli + render + " --threads 4 --out " + path("acc_r4b.pgm") + " > /dev/null"))
      return false;
    const std::string r1 = slurp(path("acc_r1.pgm"));
    const bool same = !r1.empty() && r1 == slurp(path("acc_r4.pgm")) &&
                      r1 == slurp(path("acc_r4b.pgm"));
    std::filesystem::remove(path("acc_r1.pgm"));
    std::filesystem::remove(path("acc_r4.pgm"));
    std::filesystem::remove(path("acc_r4b.pgm"));
    return same;
  });

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
