#pragma once

#include <span>
#include <string>
#include <vector>

#include "corrdyn/bundle.hpp"
#include "corrdyn/corr_core.hpp"

namespace corrdyn {

/// A point of the solid torus S^1 x closed disk: base angle t (radians,
/// reduced mod 2 pi) and fiber coordinate with |disk| <= 1.
struct TorusPoint {
  double t = 0.0;
  cplx disk = 0.0;
};

/// Angle maps theta_k(t) = p t / q + 2 pi k / q, k in 0..q-1, not reduced.
double theta(const CorrespondenceParams& params, int k, double t);

/// The k-th solid-torus contraction (k in 0..p-1):
/// (e^{it}, z) -> (e^{i(q t / p + 2 k pi / p)}, delta z + r e^{it}).
/// Requires r + delta <= 1 so the torus maps into itself.
TorusPoint torus_map(const BundleParams& bp, const CorrespondenceParams& params,
                     int k, const TorusPoint& x);

/// n-fold union of all p maps; output size is cloud.size() * p^n.
std::vector<TorusPoint> torus_iterate(const BundleParams& bp,
                                      const CorrespondenceParams& params,
                                      std::span<const TorusPoint> cloud, int n,
                                      std::size_t cap = std::size_t{1} << 22);

/// Forward orbit on the unit circle at c = 0 addressed by tau: angles are the
/// compositions theta_{k_{n-1}} o ... o theta_{k_0}(t). The word cycles when
/// shorter than n.
OrbitSegment circle_orbit(const CorrespondenceParams& params, double t,
                          std::span<const int> tau, std::size_t n);

/// Symbolic encoding (e^{it}, r sum delta^(n-1) e^{i angle_n}) truncated at N
/// terms; tail bound r delta^N / (1 - delta).
C2Point symbolic_point(const BundleParams& bp, const CorrespondenceParams& params,
                       double t, std::span<const int> tau, std::size_t N);

/// Componentwise surrogate for the quotient identification: true iff both
/// coordinates agree within tol.
bool quotient_equal(const C2Point& a, const C2Point& b, double tol);

/// CSV "t,disk_re,disk_im".
std::string torus_points_csv(std::span<const TorusPoint> cloud);

/// CSV "z_re,z_im,w_re,w_im" of the C^2 embedding (e^{it}, disk).
std::string torus_points_embedded_csv(std::span<const TorusPoint> cloud);

}  // namespace corrdyn
