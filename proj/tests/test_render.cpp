#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "corrdyn/corr_core.hpp"
#include "corrdyn/render.hpp"

using namespace corrdyn;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE_BEGIN("render");

TEST_CASE("survival of circle, interior, and exterior points") {
  const CorrespondenceParams p620(6, 2, 0.0);
  const AnnulusBounds bounds = annulus_bounds(p620);
  CHECK(survives(p620, cplx(1.0, 0.0), 24, bounds, 0.01));
  CHECK(survival_depth(p620, cplx(0.5, 0.0), 8, bounds, 0.01) == -1);
  CHECK(survival_depth(p620, cplx(1.5, 0.0), 8, bounds, 0.01) == -1);
  // Slightly off the circle: enters the band but dies before depth 12.
  const int d = survival_depth(p620, cplx(1.003, 0.0), 12, bounds, 0.01);
  CHECK(d >= 1);
  CHECK(d < 12);
}

TEST_CASE("membership grid marks exactly the in-band pixels nonzero") {
  const CorrespondenceParams p620(6, 2, 0.0);
  const AnnulusBounds bounds = annulus_bounds(p620);
  // A 3x1 strip whose pixel centers are 0.5, 1.0, 1.5.
  Viewport vp{cplx(1.0, 0.0), 1.5, 0.5, 3, 1};
  CHECK(std::abs(vp.pixel_center(0, 0) - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(vp.pixel_center(1, 0) - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(vp.pixel_center(2, 0) - cplx(1.5, 0.0)) < 1e-15);
  const RasterGrid grid = membership_grid(p620, vp, 16, bounds, 0.01);
  CHECK(grid.at(0, 0) == 0);
  CHECK(grid.at(1, 0) == 255);
  CHECK(grid.at(2, 0) == 0);
}

TEST_CASE("deeper searches only lose pixels") {
  const CorrespondenceParams fig(6, 2, cplx(0.0, 0.2));
  const AnnulusBounds bounds = annulus_bounds(fig);
  Viewport vp{cplx(0.0, 0.0), 2.4, 2.4, 96, 96};
  const RasterGrid d6 = membership_grid(fig, vp, 6, bounds, 0.01);
  const RasterGrid d12 = membership_grid(fig, vp, 12, bounds, 0.01);
  int survivors12 = 0;
  for (std::size_t i = 0; i < d12.data.size(); ++i) {
    if (d12.data[i] == 255) {
      ++survivors12;
      CHECK(d6.data[i] == 255);
    }
  }
  CHECK(survivors12 > 0);
}

TEST_CASE("thread count cannot change the raster") {
  const CorrespondenceParams fig(6, 2, cplx(0.0, 0.2));
  const AnnulusBounds bounds = annulus_bounds(fig);
  Viewport vp{cplx(0.0, 0.0), 2.4, 2.4, 64, 64};
  const RasterGrid a = membership_grid(fig, vp, 10, bounds, 0.01, 1);
  const RasterGrid b = membership_grid(fig, vp, 10, bounds, 0.01, 4);
  CHECK(a.data == b.data);
}

TEST_CASE("backward samples stay on the circle at c = 0") {
  const CorrespondenceParams p620(6, 2, 0.0);
  const AnnulusBounds bounds = annulus_bounds(p620);
  const auto pts = inverse_ifs_sample(p620, 2000, 100, 7, bounds);
  REQUIRE(pts.size() == 2000);
  for (const cplx& z : pts) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-9);

  const auto again = inverse_ifs_sample(p620, 2000, 100, 7, bounds);
  CHECK(pts == again);
  const auto other_seed = inverse_ifs_sample(p620, 2000, 100, 8, bounds);
  CHECK(pts != other_seed);
}

TEST_CASE("backward samples stay in the annulus at the figure parameter") {
  const CorrespondenceParams fig(6, 2, cplx(0.0, 0.2));
  const AnnulusBounds bounds = annulus_bounds(fig);
  const auto pts = inverse_ifs_sample(fig, 1500, 100, 11, bounds);
  for (const cplx& z : pts) {
    CHECK(std::abs(z) >= bounds.R_c - 0.05);
    CHECK(std::abs(z) <= bounds.s_c + 0.05);
  }
  // Sampled points pass the forward survival search.
  for (std::size_t i = 0; i < pts.size(); i += 100)
    CHECK(survives(fig, pts[i], 12, bounds, 0.01));
}

TEST_CASE("forward game collapses to the origin at c = 0") {
  const CorrespondenceParams p620(6, 2, 0.0);
  const auto pts = dual_ifs_sample(p620, 500, 3);
  for (const cplx& z : pts) CHECK(std::abs(z) < 1e-6);
}

TEST_CASE("forward game clusters near the attracting point at 0.2i") {
  const CorrespondenceParams fig(6, 2, cplx(0.0, 0.2));
  const AnnulusBounds bounds = annulus_bounds(fig);
  const auto pts = dual_ifs_sample(fig, 800, 5);
  // Forward-iteration oracle for the attracting fixed point of w = c + w^3.
  cplx w_star = fig.c();
  for (int i = 0; i < 200; ++i) w_star = fig.c() + w_star * w_star * w_star;
  double spread = 0.0;
  for (const cplx& z : pts) {
    CHECK(std::abs(z) <= bounds.R_c + 1e-12);
    spread = std::max(spread, std::abs(z - w_star));
  }
  CHECK(spread < 0.15);  // the dual set hugs the attractor at this c

  const auto again = dual_ifs_sample(fig, 800, 5);
  CHECK(pts == again);
}

TEST_CASE("forward game around the branch-point two-cycle") {
  // No annulus at c = -1, but the attracting cycle {0, -1} anchors the game.
  const CorrespondenceParams quartic(4, 2, cplx(-1.0, 0.0));
  REQUIRE_FALSE(annulus_bounds(quartic).valid);
  const auto pts = dual_ifs_sample(quartic, 400, 9);
  REQUIRE(pts.size() == 400);
  for (const cplx& z : pts) {
    const double d = std::min(std::abs(z), std::abs(z + 1.0));
    CHECK(d <= 0.3);
  }
}

TEST_CASE("no attractor without a trapping annulus") {
  CHECK_THROWS_AS(dual_ifs_sample(CorrespondenceParams(6, 2, cplx(2.0, 0.0)), 10, 1),
                  NoAttractorError);
}

TEST_CASE("PGM writer is byte exact") {
  RasterGrid grid;
  grid.viewport = Viewport{cplx(0.0, 0.0), 1.0, 1.0, 1, 1};
  grid.data = {255};
  const auto path = temp_file("corrdyn_test_1x1.pgm");
  write_pgm(grid, path);
  const std::string bytes = slurp(path);
  CHECK(bytes == std::string("P5\n1 1\n255\n\xFF", 12));
  std::filesystem::remove(path);
}

TEST_CASE("PPM writer interleaves three channels") {
  RasterGrid r, g, b;
  r.viewport = g.viewport = b.viewport = Viewport{cplx(0.0, 0.0), 1.0, 1.0, 2, 1};
  r.data = {1, 2};
  g.data = {3, 4};
  b.data = {5, 6};
  const auto path = temp_file("corrdyn_test_2x1.ppm");
  write_ppm(r, g, b, path);
  const std::string bytes = slurp(path);
  CHECK(bytes == std::string("P6\n2 1\n255\n\x01\x03\x05\x02\x04\x06", 17));
  std::filesystem::remove(path);
}

TEST_CASE("nonzero pixels of a circle render form a thin annular band") {
  const CorrespondenceParams p620(6, 2, 0.0);
  const AnnulusBounds bounds = annulus_bounds(p620);
  Viewport vp{cplx(0.0, 0.0), 2.4, 2.4, 256, 256};
  const int depth = 24;
  const RasterGrid grid = membership_grid(p620, vp, depth, bounds, 0.01);
  int nonzero = 0;
  for (int iy = 0; iy < vp.ny; ++iy) {
    for (int ix = 0; ix < vp.nx; ++ix) {
      if (grid.at(ix, iy) == 0) continue;
      ++nonzero;
      // Band pixels sit inside the tolerance annulus around |z| = 1.
      const double m = std::abs(vp.pixel_center(ix, iy));
      CHECK(m >= 0.99 - 1e-12);
      CHECK(m <= 1.01 + 1e-12);
    }
  }
  CHECK(nonzero > 0);
}

TEST_CASE("points CSV uses the documented header") {
  const std::vector<cplx> pts{cplx(0.5, -0.25)};
  const std::string csv = points_csv(pts);
  CHECK(csv == "z_re,z_im\n0.5,-0.25\n");
}

TEST_SUITE_END();
