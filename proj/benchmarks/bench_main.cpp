#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "corrdyn/bundle.hpp"
#include "corrdyn/corr_core.hpp"
#include "corrdyn/motion.hpp"
#include "corrdyn/render.hpp"
#include "corrdyn/solenoid.hpp"

namespace {

using namespace corrdyn;

constexpr double kTwoPi = 6.283185307179586476925286766559;

void BM_Images(benchmark::State& state) {
  const CorrespondenceParams params(6, 2, cplx(0.0, 0.2));
  cplx z = std::polar(1.0, 0.7);
  for (auto _ : state) {
    auto w = images(params, z);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_Images);

void BM_Preimages(benchmark::State& state) {
  const CorrespondenceParams params(6, 2, cplx(0.0, 0.2));
  cplx w = std::polar(1.0, 1.3);
  for (auto _ : state) {
    auto z = preimages(params, w);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BM_Preimages);

void BM_AnnulusBounds(benchmark::State& state) {
  const CorrespondenceParams params(6, 2, cplx(0.0, 0.2));
  for (auto _ : state) {
    auto b = annulus_bounds(params);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_AnnulusBounds);

void BM_ShadowSweep(benchmark::State& state) {
  const CorrespondenceParams base(6, 2, 0.0);
  const CorrespondenceParams target(6, 2, cplx(0.0, 0.01));
  std::vector<cplx> cloud;
  for (int i = 0; i < 64; ++i) cloud.push_back(std::polar(1.0, kTwoPi * i / 64.0));
  const MotionConfig cfg = estimate_motion_config(base, cloud);
  const OrbitSegment orbit =
      circle_orbit(base, 0.9, std::vector<int>{0, 1, 0}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto sh = shadow_orbit(base, target, orbit, cfg);
    benchmark::DoNotOptimize(sh);
  }
}
BENCHMARK(BM_ShadowSweep)->Arg(30)->Arg(60)->Arg(120);

void BM_SymbolicPoint(benchmark::State& state) {
  const CorrespondenceParams base(6, 2, 0.0);
  const BundleParams bp = choose_bundle_params(base, annulus_bounds(base));
  std::vector<int> tau(40, 1);
  for (auto _ : state) {
    auto g = symbolic_point(bp, base, 0.37, tau, tau.size());
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_SymbolicPoint);

void BM_MembershipTile(benchmark::State& state) {
  const CorrespondenceParams params(6, 2, cplx(0.0, 0.2));
  const AnnulusBounds bounds = annulus_bounds(params);
  Viewport vp{cplx(0.0, 0.0), 2.4, 2.4, 64, 64};
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto grid = membership_grid(params, vp, depth, bounds, 0.01, 1);
    benchmark::DoNotOptimize(grid);
  }
}
BENCHMARK(BM_MembershipTile)->Arg(8)->Arg(16)->Arg(24);

void BM_InverseIfs(benchmark::State& state) {
  const CorrespondenceParams params(6, 2, cplx(0.0, 0.2));
  const AnnulusBounds bounds = annulus_bounds(params);
  for (auto _ : state) {
    auto pts = inverse_ifs_sample(params, 1000, 100, 7, bounds);
    benchmark::DoNotOptimize(pts);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_InverseIfs);

}  // namespace

BENCHMARK_MAIN();
