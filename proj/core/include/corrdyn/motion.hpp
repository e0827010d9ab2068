#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corrdyn/bundle.hpp"
#include "corrdyn/corr_core.hpp"

namespace corrdyn {

/// Constants governing the parameter motion. U_radius <= eps(1-lambda)/(6 ell)
/// is the certified domain; sweeps beyond it are attempted and flagged
/// uncertified, with the eps deviation check still enforced.
struct MotionConfig {
  double eps = 0.0;
  double lambda = 0.0;
  double ell = 1.0;
  double U_radius = 0.0;

  double C0() const { return ell / (1.0 - lambda); }
};

/// lambda from the measured backward contraction over the samples,
/// eps = min(0.1, separation/(10 ell)), U_radius = eps(1-lambda)/(6 ell).
MotionConfig estimate_motion_config(const CorrespondenceParams& params_base,
                                    std::span<const cplx> samples, double ell = 1.0);

/// Minimum pairwise distance among images and among preimages, over samples.
double branch_separation(const CorrespondenceParams& params,
                         std::span<const cplx> samples);

/// Extra orbit steps absorbed by the backward sweep before the entries that
/// are read off.
inline constexpr std::size_t kMotionBuffer = 20;

struct ShadowedOrbit {
  OrbitSegment orbit;
  std::vector<double> entry_bounds;  // lambda^(N-i) * ell |dc| / (1-lambda)
  double sup_deviation = 0.0;        // sup_i |w_i - z_i|
  bool certified = false;            // |dc| < U_radius
};

/// Backward sweep: w_N = z_N, then w_{i-1} is the preimage of w_i under the
/// target parameter nearest to z_{i-1}. Throws ShadowEscapeError when any
/// entry drifts by eps or more, AmbiguousBranchError on a preimage tie.
ShadowedOrbit shadow_orbit(const CorrespondenceParams& params_u,
                           const CorrespondenceParams& params_v,
                           const OrbitSegment& orbit_u, const MotionConfig& cfg);

struct MotionPoint {
  C2Point value;
  double base_bound = 0.0;
  double fiber_bound = 0.0;
};

/// Shadows the stored orbit to the target parameter and reassembles the
/// fiber series at truncation N. Needs orbit length >= N + kMotionBuffer.
MotionPoint motion_point(const CorrespondenceParams& params_base,
                         const CorrespondenceParams& params_target,
                         const BundleParams& bp, const BundlePoint& x,
                         const MotionConfig& cfg, std::size_t N);

/// Plane multifunction value: each word lifts z to the orbit with that
/// forward address, the shadowed base point is its image. Deduplicated at
/// 1e-10 and sorted by (re, im).
std::vector<cplx> branched_motion(const CorrespondenceParams& params_base,
                                  const CorrespondenceParams& params_target, cplx z,
                                  std::span<const std::vector<int>> words,
                                  const MotionConfig& cfg, std::size_t N);

/// A sampled plane curve gamma(t) for one address tau.
struct CurveSample {
  std::vector<int> tau;
  cplx c;
  std::vector<std::pair<double, cplx>> samples;  // (t, z), t increasing
  std::size_t truncation = 0;
  double eps = 0.0;
  double lambda = 0.0;

  double grid_step() const;
};

/// Samples t uniformly on [t0, t1] (M points), builds the circle orbit for
/// tau at the base c = 0, shadows to the target and projects. At the base
/// parameter the samples are exactly e^{it}.
CurveSample curve_sample(const CorrespondenceParams& params_target,
                         std::span<const int> tau, double t0, double t1,
                         std::size_t M, const MotionConfig& cfg, std::size_t N);

/// Max 4-point Cauchy-Riemann residual |d/d(c conj)| of c -> motion value
/// over a cross stencil {center +/- h, center +/- ih} (center optional).
double holomorphy_residual(const CorrespondenceParams& params_base,
                           const BundleParams& bp, const BundlePoint& x,
                           std::span<const cplx> c_grid, const MotionConfig& cfg,
                           std::size_t N);

/// Circle-distortion estimate over (domain, image) pairs: per point and
/// scale, the max/min ratio of difference quotients across partners at
/// domain distance within [0.9, 1.1] of the scale; the reported K is the
/// max over points of the min over scales.
double dilatation_estimate(std::span<const std::pair<cplx, cplx>> samples,
                           std::span<const double> scales);

/// True iff no two samples separated in t by more than one grid step are
/// closer than tol in the plane.
bool injectivity_check(const CurveSample& curve, double tol);

/// CSV with a metadata header line (#tau=..., c=..., N=..., eps=...,
/// lambda=...) followed by "t,z_re,z_im" rows.
std::string curve_csv(const CurveSample& curve);

}  // namespace corrdyn
