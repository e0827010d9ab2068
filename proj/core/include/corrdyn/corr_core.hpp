#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "corrdyn/errors.hpp"

namespace corrdyn {

using cplx = std::complex<double>;

/// A point of C^2, stored as (z, w).
struct C2Point {
  cplx z;
  cplx w;
};

inline double c2_dist(const C2Point& a, const C2Point& b) {
  return std::max(std::abs(a.z - b.z), std::abs(a.w - b.w));
}

/// The defining triple of the correspondence (w - c)^q = z^p. The exponent
/// beta = p/q is kept as the integer pair; it is never materialized as a
/// rounded constant, every evaluation uses p and q directly.
class CorrespondenceParams {
 public:
  CorrespondenceParams(int p, int q, cplx c);

  int p() const { return p_; }
  int q() const { return q_; }
  cplx c() const { return c_; }

  double beta() const { return static_cast<double>(p_) / q_; }
  /// gamma = beta - 1 = (p - q)/q.
  double gamma() const { return static_cast<double>(p_ - q_) / q_; }
  bool integer_beta() const { return p_ % q_ == 0; }

  bool operator==(const CorrespondenceParams& o) const {
    return p_ == o.p_ && q_ == o.q_ && c_ == o.c_;
  }

 private:
  int p_;
  int q_;
  cplx c_;
};

/// Trapping radii of the invariant annulus. r_c and R_c are the two roots of
/// g(x) = x^(p/q) - x + |c| on (0,1); s_c = (1+|c|)^(q/(p-q)) bounds the
/// escape region {|z| > s_c}. At c = 0 the annulus degenerates to
/// (0, 1, 1) and is still reported as valid.
struct AnnulusBounds {
  double r_c = 0.0;
  double R_c = 0.0;
  double s_c = 0.0;
  bool valid = false;
};

/// Scale-aware residual |(w-c)^q - z^p|.
double correspondence_residual(const CorrespondenceParams& params, cplx z, cplx w);

/// True when the residual is below 1e-10 * max(1, |z|^p).
bool satisfies_correspondence(const CorrespondenceParams& params, cplx z, cplx w);

/// The q images of z: w_k = c + exp((p/q) Log z + 2 pi i k / q), with the
/// principal logarithm (Arg z in (-pi, pi]). Branch index k is the stable
/// label used by every downstream module.
std::vector<cplx> images(const CorrespondenceParams& params, cplx z);

/// The p preimages of w: roots of zeta^p = (w-c)^q, indexed by
/// zeta_j = exp((q/p) Log(w - c) + 2 pi i j / p).
std::vector<cplx> preimages(const CorrespondenceParams& params, cplx w);

/// The k-th forward branch value at z (k in 0..q-1).
cplx branch_image(const CorrespondenceParams& params, cplx z, int k);

/// Derivative of the branch through the pair (z, w): (p/q)(w - c)/z.
/// Throws InvalidPairError when (z, w) does not satisfy the correspondence.
cplx branch_derivative(const CorrespondenceParams& params, cplx z, cplx w);

AnnulusBounds annulus_bounds(const CorrespondenceParams& params);

struct ExpansionEstimate {
  double forward_min = 0.0;   // min |phi'| over samples and forward branches
  double backward_max = 0.0;  // max |psi'| over samples and backward branches
  bool expanding = false;     // forward_min > 1
};

/// Euclidean expansion statistics over a sample cloud. Every sample must
/// keep distance >= radius from both branch points 0 and c.
ExpansionEstimate estimate_expansion(const CorrespondenceParams& params,
                                     std::span<const cplx> samples, double radius);

/// Branch index whose image of z is nearest to w.
int nearest_branch_index(const CorrespondenceParams& params, cplx z, cplx w);

/// Preimage index whose value is nearest to target.
int nearest_preimage_index(const CorrespondenceParams& params, cplx w, cplx target);

enum class OrbitDirection { forward, backward };

/// A finite orbit with branch annotations. points[0] is the base; for a
/// forward orbit points[i+1] = branch_image(points[i], symbols[i]); for a
/// backward orbit points[i+1] is the preimage of points[i] selected by
/// symbols[i].
struct OrbitSegment {
  OrbitDirection direction = OrbitDirection::forward;
  std::vector<cplx> points;
  std::vector<int> symbols;

  std::size_t steps() const { return symbols.size(); }
};

/// Builds the forward orbit of z0 along `word`, cycling the word when it is
/// shorter than n steps.
OrbitSegment forward_orbit(const CorrespondenceParams& params, cplx z0,
                           std::span<const int> word, std::size_t n);

/// First n steps of the segment (n+1 points).
OrbitSegment truncate_orbit(const OrbitSegment& orbit, std::size_t n);

/// Max per-step residual of the segment under its direction.
double orbit_residual(const CorrespondenceParams& params, const OrbitSegment& orbit);

/// Bracketed bisection for a continuous sign change; |f| at the returned
/// point is driven below the local resolution of the bracket.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double tol, int max_iter = 200);

}  // namespace corrdyn
