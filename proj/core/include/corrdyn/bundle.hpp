#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corrdyn/corr_core.hpp"

namespace corrdyn {

/// Series weights for the fiber encoding s = r * sum delta^(n-1) z_n.
/// Constraints: r < min(1/sqrt(2), 1/(4|c|)) and delta < 1/4 with delta below
/// half the scaled separation of branch values over the working set.
struct BundleParams {
  double r = 0.0;
  double delta = 0.0;
};

/// r at 95% of its ceiling; delta = min(1/8, r*rho/4) where rho is the
/// analytic lower bound 2 sin(pi/max(p,q)) * R_c^(p/q) for the separation of
/// images/preimages over the annulus.
BundleParams choose_bundle_params(const CorrespondenceParams& params,
                                  const AnnulusBounds& working_annulus);

/// A fiber point over base = orbit.points[0]: the truncated series value
/// together with a bound on every admissible continuation of the tail.
struct BundlePoint {
  cplx base;
  OrbitSegment orbit;
  cplx series = 0.0;
  double tail_bound = 0.0;

  OrbitDirection direction() const { return orbit.direction; }
  C2Point value() const { return {base, series}; }
};

BundlePoint bundle_point_from_orbit(const BundleParams& bp, const OrbitSegment& orbit);

/// One step of the fiber dynamics: (z, w) -> (z1, w/delta - r*z1/delta),
/// realized exactly as the orbit shift (z1, r(z2 + delta z3 + ...)).
BundlePoint bundle_map(const CorrespondenceParams& params, const BundleParams& bp,
                       const BundlePoint& x);

/// The closed-form fiber image delta^-1 w - r delta^-1 phi(z); agrees with
/// the shifted series of bundle_map to within delta^-1 * tail_bound.
cplx bundle_map_formula_value(const BundleParams& bp, const BundlePoint& x);

/// det Jac of one bundle-map step through (z, z_next): phi'(z)/delta.
cplx bundle_step_jacobian_det(const CorrespondenceParams& params,
                              const BundleParams& bp, cplx z, cplx z_next);

/// Prepends the j-th preimage of the base, shifting the series to
/// r*z0 + delta*series. Inverse of bundle_map up to branch choice.
BundlePoint bundle_backward_step(const CorrespondenceParams& params,
                                 const BundleParams& bp, const BundlePoint& x,
                                 int preimage_index);

/// Re-encodes the same orbit under different series weights. Identity on
/// (base, orbit); the round trip reproduces the series within combined tails.
BundlePoint reencode(const BundleParams& to, const BundlePoint& x);

struct MetricValue {
  double value = 0.0;
  double tail = 0.0;
};

/// d_s(x, y) truncated at `depth` terms: sum s^n |x_n - y_n| over the orbit
/// projections, plus the geometric tail bound s^depth * diam / (1 - s).
MetricValue metric_ds(double s, const BundlePoint& x, const BundlePoint& y,
                      std::size_t depth, double diam);

/// Finite-depth sections over a base sample L: one section per branch word of
/// the given length. `separated` reports whether distinct sections stay
/// pairwise farther apart than the combined tail bounds at every base point.
struct SectionTable {
  std::size_t depth = 0;
  std::map<std::vector<int>, std::vector<BundlePoint>> sections;
  bool separated = false;
  double min_separation = 0.0;
};

SectionTable enumerate_sections(const CorrespondenceParams& params,
                                const BundleParams& bp, std::span<const cplx> L,
                                std::size_t depth);

/// Least n <= max_n such that the n-fold image of `arc` (clipped to the
/// eps-fattening of lambda_sample) forms an eps-net of lambda_sample;
/// nullopt when no such n exists.
std::optional<int> mixing_diagnostic(const CorrespondenceParams& params,
                                     std::span<const cplx> lambda_sample,
                                     std::span<const cplx> arc, double eps,
                                     int max_n);

std::string bundle_points_to_jsonl(std::span<const BundlePoint> points);

}  // namespace corrdyn
