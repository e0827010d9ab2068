#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "corrdyn/corr_core.hpp"

namespace corrdyn {

struct Viewport {
  cplx center;
  double width = 0.0;
  double height = 0.0;
  int nx = 0;
  int ny = 0;

  /// Center of pixel (ix, iy); row iy = 0 is the top of the image.
  cplx pixel_center(int ix, int iy) const {
    const double x = center.real() + ((ix + 0.5) / nx - 0.5) * width;
    const double y = center.imag() + (0.5 - (iy + 0.5) / ny) * height;
    return {x, y};
  }

  double pixel_diagonal() const {
    const double px = width / nx;
    const double py = height / ny;
    return std::sqrt(px * px + py * py);
  }
};

/// Row-major bytes from the top-left pixel. 0 = escapes/trapped immediately,
/// 255 = survives the full search depth, intermediate values shade how many
/// steps the best orbit lasted.
struct RasterGrid {
  Viewport viewport;
  std::vector<std::uint8_t> data;

  std::uint8_t at(int ix, int iy) const {
    return data[static_cast<std::size_t>(iy) * viewport.nx + ix];
  }
};

/// Deepest step count (capped at depth) reachable from z by a pruned DFS
/// over the q forward branches, keeping every orbit point inside
/// {R_c (1 - tol) <= |.| <= s_c (1 + tol)}. Returns -1 when z itself is
/// outside the band.
int survival_depth(const CorrespondenceParams& params, cplx z, int depth,
                   const AnnulusBounds& bounds, double tol);

/// True iff some orbit from z stays in the band for the full depth.
bool survives(const CorrespondenceParams& params, cplx z, int depth,
              const AnnulusBounds& bounds, double tol);

/// Per-pixel survival search over the viewport; rows are computed in
/// parallel, each pixel independently, so any thread count produces
/// identical bytes.
RasterGrid membership_grid(const CorrespondenceParams& params, const Viewport& vp,
                           int depth, const AnnulusBounds& bounds, double tol,
                           unsigned threads = 0);

/// Random backward orbit: starts on |z| = 1, repeatedly jumps to a uniformly
/// chosen preimage kept inside the trapping annulus (32 in-place retries,
/// then a fresh start on the circle; StarvationError after 1000 consecutive
/// restarts). The first burn_in accepted steps are discarded.
std::vector<cplx> inverse_ifs_sample(const CorrespondenceParams& params,
                                     std::size_t n_points, std::size_t burn_in,
                                     std::uint64_t seed, const AnnulusBounds& bounds);

/// Forward chaos game toward the attracting region: uniform branch choice
/// restricted to {|z| <= R_c}, burn-in 100, starting at the branch point.
std::vector<cplx> dual_ifs_sample(const CorrespondenceParams& params,
                                  std::size_t n_points, std::uint64_t seed);

/// Binary PGM (P5, maxval 255), row-major from the top-left, byte-exact
/// across platforms.
void write_pgm(const RasterGrid& grid, const std::filesystem::path& path);

/// Binary PPM (P6) with the three channels given per pixel.
void write_ppm(const RasterGrid& red, const RasterGrid& green,
               const RasterGrid& blue, const std::filesystem::path& path);

/// CSV "z_re,z_im".
std::string points_csv(std::span<const cplx> points);

}  // namespace corrdyn
