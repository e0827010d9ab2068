#include "corrdyn/render.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

#include "corrdyn/cycles.hpp"
#include "corrdyn/parallel.hpp"
#include "corrdyn/rng.hpp"

namespace corrdyn {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct SurvivalSearch {
  const CorrespondenceParams& params;
  double lo;
  double hi;
  int depth;

  bool in_band(cplx z) const {
    const double m = std::abs(z);
    return m >= lo && m <= hi;
  }

  // One-step images of a point with modulus in [a, b] have moduli inside
  // [a^beta - |c|, b^beta + |c|]; iterating this outer interval bounds every
  // continuation at once. Close to beta = 1 the branch tree hardly thins per
  // step, so these interval shortcuts are what keep the search polynomial.

  // True when every continuation of a point with modulus m stays in band for
  // all `remaining` steps.
  bool forced_survival(double m, int remaining) const {
    const double beta = params.beta();
    const double ac = std::abs(params.c());
    double a = m;
    double b = m;
    for (int j = 0; j < remaining; ++j) {
      a = std::max(0.0, std::pow(a, beta) - ac);
      b = std::pow(b, beta) + ac;
      if (a < lo || b > hi) return false;
    }
    return true;
  }

  // Upper bound on the number of further in-band steps from modulus m.
  int run_bound(double m, int remaining) const {
    const double beta = params.beta();
    const double ac = std::abs(params.c());
    double a = m;
    double b = m;
    for (int j = 0; j < remaining; ++j) {
      a = std::max(0.0, std::pow(a, beta) - ac);
      b = std::pow(b, beta) + ac;
      if (b < lo || a > hi) return j;  // the whole image interval left the band
    }
    return remaining;
  }

  // Longest in-band continuation from z with `remaining` steps left.
  // Branches leaving the band are cut immediately; a full-depth branch
  // short-circuits the rest; interval bounds accept or cap whole subtrees
  // without changing any result.
  int explore(cplx z, int remaining) const {
    if (remaining == 0) return 0;
    if (forced_survival(std::abs(z), remaining)) return remaining;
    int deepest = 0;
    for (int k = 0; k < params.q(); ++k) {
      const cplx w = branch_image(params, z, k);
      if (!in_band(w)) continue;
      if (1 + run_bound(std::abs(w), remaining - 1) <= deepest) continue;
      const int d = 1 + explore(w, remaining - 1);
      deepest = std::max(deepest, d);
      if (deepest == remaining) break;
    }
    return deepest;
  }
};

}  // namespace

int survival_depth(const CorrespondenceParams& params, cplx z, int depth,
                   const AnnulusBounds& bounds, double tol) {
  if (!bounds.valid) throw InvalidAnnulusError("annulus bounds are not valid");
  if (depth < 1) throw ParameterError("depth must be >= 1");
  SurvivalSearch search{params, bounds.R_c * (1.0 - tol), bounds.s_c * (1.0 + tol),
                        depth};
  if (!search.in_band(z) || z == cplx(0.0, 0.0)) return -1;
  return search.explore(z, depth);
}

bool survives(const CorrespondenceParams& params, cplx z, int depth,
              const AnnulusBounds& bounds, double tol) {
  return survival_depth(params, z, depth, bounds, tol) == depth;
}

RasterGrid membership_grid(const CorrespondenceParams& params, const Viewport& vp,
                           int depth, const AnnulusBounds& bounds, double tol,
                           unsigned threads) {
  if (vp.nx < 1 || vp.ny < 1 || vp.width <= 0.0 || vp.height <= 0.0)
    throw ParameterError("empty viewport");
  RasterGrid grid;
  grid.viewport = vp;
  grid.data.assign(static_cast<std::size_t>(vp.nx) * vp.ny, 0);
  parallel_for(0, static_cast<std::size_t>(vp.ny), threads, [&](std::size_t iy) {
    for (int ix = 0; ix < vp.nx; ++ix) {
      const int d = survival_depth(params, vp.pixel_center(ix, static_cast<int>(iy)),
                                   depth, bounds, tol);
      std::uint8_t byte = 0;
      if (d == depth) {
        byte = 255;
      } else if (d >= 0) {
        byte = static_cast<std::uint8_t>(
            std::min(254.0, std::floor(255.0 * (d + 1) / (depth + 1))));
      }
      grid.data[iy * vp.nx + ix] = byte;
    }
  });
  return grid;
}

std::vector<cplx> inverse_ifs_sample(const CorrespondenceParams& params,
                                     std::size_t n_points, std::size_t burn_in,
                                     std::uint64_t seed, const AnnulusBounds& bounds) {
  if (!bounds.valid) throw InvalidAnnulusError("annulus bounds are not valid");
  SplitMix64 rng(seed);
  const double band_fat = 1e-6 * std::max(1.0, bounds.s_c);
  const double lo = bounds.R_c - band_fat;
  const double hi = bounds.s_c + band_fat;

  std::vector<cplx> out;
  out.reserve(n_points);
  cplx z = std::polar(1.0, kTwoPi * rng.uniform());
  std::size_t accepted = 0;
  int consecutive_restarts = 0;
  while (out.size() < n_points) {
    const auto pre = preimages(params, z);
    bool moved = false;
    for (int attempt = 0; attempt < 32; ++attempt) {
      const cplx zeta = pre[rng.index(params.p())];
      const double m = std::abs(zeta);
      if (m >= lo && m <= hi) {
        z = zeta;
        moved = true;
        break;
      }
    }
    if (!moved) {
      z = std::polar(1.0, kTwoPi * rng.uniform());
      if (++consecutive_restarts > 1000)
        throw StarvationError("backward walk cannot stay inside the annulus");
      continue;
    }
    consecutive_restarts = 0;
    if (++accepted > burn_in) out.push_back(z);
  }
  return out;
}

std::vector<cplx> dual_ifs_sample(const CorrespondenceParams& params,
                                  std::size_t n_points, std::uint64_t seed) {
  const AnnulusBounds bounds = annulus_bounds(params);

  // Acceptance region for the chaos game: the forward-invariant disk
  // |z| <= R_c when the annulus exists, otherwise a tube around an
  // attracting cycle through the branch point (the remaining way for an
  // attracting region to exist).
  std::function<bool(cplx)> accept;
  if (bounds.valid) {
    accept = [limit = bounds.R_c](cplx w) { return std::abs(w) <= limit; };
  } else {
    const auto grid = default_seed_grid();
    const auto cycles = attracting_cycles_search(params, 2, grid);
    const Cycle* anchor = nullptr;
    for (const Cycle& cyc : cycles) {
      for (const cplx& pt : cyc.points)
        if (std::abs(pt) <= 1e-6) anchor = &cyc;
    }
    if (anchor == nullptr)
      throw NoAttractorError("no trapping annulus and no attracting cycle through 0");
    double gap = 1.0;
    for (std::size_t i = 0; i < anchor->points.size(); ++i)
      for (std::size_t j = i + 1; j < anchor->points.size(); ++j)
        gap = std::min(gap, std::abs(anchor->points[i] - anchor->points[j]));
    const double rho = 0.3 * gap;
    accept = [pts = anchor->points, rho](cplx w) {
      for (const cplx& pt : pts)
        if (std::abs(w - pt) <= rho) return true;
      return false;
    };
  }

  constexpr std::size_t kBurnIn = 100;
  SplitMix64 rng(seed);
  std::vector<cplx> out;
  out.reserve(n_points);
  cplx z = 0.0;
  std::size_t accepted = 0;
  int consecutive_restarts = 0;
  while (out.size() < n_points) {
    cplx w;
    if (z == cplx(0.0, 0.0)) {
      w = params.c();
    } else {
      bool moved = false;
      for (int attempt = 0; attempt < 32; ++attempt) {
        const cplx candidate = branch_image(params, z, static_cast<int>(rng.index(params.q())));
        if (accept(candidate)) {
          w = candidate;
          moved = true;
          break;
        }
      }
      if (!moved) {
        z = 0.0;
        if (++consecutive_restarts > 1000)
          throw StarvationError("forward game cannot stay inside the attracting region");
        continue;
      }
    }
    consecutive_restarts = 0;
    z = w;
    if (++accepted > kBurnIn) out.push_back(z);
  }
  return out;
}

void write_pgm(const RasterGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string());
  out << "P5\n" << grid.viewport.nx << ' ' << grid.viewport.ny << "\n255\n";
  out.write(reinterpret_cast<const char*>(grid.data.data()),
            static_cast<std::streamsize>(grid.data.size()));
  if (!out) throw IoError("short write to " + path.string());
}

void write_ppm(const RasterGrid& red, const RasterGrid& green,
               const RasterGrid& blue, const std::filesystem::path& path) {
  const std::size_t n = red.data.size();
  if (green.data.size() != n || blue.data.size() != n)
    throw ParameterError("channel sizes differ");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string());
  out << "P6\n" << red.viewport.nx << ' ' << red.viewport.ny << "\n255\n";
  std::vector<std::uint8_t> row(n * 3);
  for (std::size_t i = 0; i < n; ++i) {
    row[3 * i] = red.data[i];
    row[3 * i + 1] = green.data[i];
    row[3 * i + 2] = blue.data[i];
  }
  out.write(reinterpret_cast<const char*>(row.data()),
            static_cast<std::streamsize>(row.size()));
  if (!out) throw IoError("short write to " + path.string());
}

std::string points_csv(std::span<const cplx> points) {
  std::string out = "z_re,z_im\n";
  char buf[80];
  for (const cplx& z : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
    out += buf;
  }
  return out;
}

}  // namespace corrdyn
