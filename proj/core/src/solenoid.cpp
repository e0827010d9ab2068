#include "corrdyn/solenoid.hpp"

#include <cmath>
#include <cstdio>

namespace corrdyn {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double reduce_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

}  // namespace

double theta(const CorrespondenceParams& params, int k, double t) {
  if (k < 0 || k >= params.q()) throw ParameterError("angle index out of range");
  return params.beta() * t + kTwoPi * k / params.q();
}

TorusPoint torus_map(const BundleParams& bp, const CorrespondenceParams& params,
                     int k, const TorusPoint& x) {
  if (bp.r + bp.delta > 1.0)
    throw ParameterError("need r + delta <= 1 for the torus to map into itself");
  if (k < 0 || k >= params.p()) throw ParameterError("torus map index out of range");
  TorusPoint y;
  y.t = reduce_angle(static_cast<double>(params.q()) * x.t / params.p() +
                     kTwoPi * k / params.p());
  y.disk = bp.delta * x.disk + bp.r * std::polar(1.0, x.t);
  return y;
}

std::vector<TorusPoint> torus_iterate(const BundleParams& bp,
                                      const CorrespondenceParams& params,
                                      std::span<const TorusPoint> cloud, int n,
                                      std::size_t cap) {
  if (n < 0) throw ParameterError("iteration count must be >= 0");
  double size_est = static_cast<double>(cloud.size());
  for (int i = 0; i < n; ++i) size_est *= params.p();
  if (size_est > static_cast<double>(cap))
    throw CapExceededError("torus cloud would exceed the configured cap");
  std::vector<TorusPoint> current(cloud.begin(), cloud.end());
  for (int step = 0; step < n; ++step) {
    std::vector<TorusPoint> next;
    next.reserve(current.size() * params.p());
    for (const TorusPoint& x : current)
      for (int k = 0; k < params.p(); ++k) next.push_back(torus_map(bp, params, k, x));
    current = std::move(next);
  }
  return current;
}

OrbitSegment circle_orbit(const CorrespondenceParams& params, double t,
                          std::span<const int> tau, std::size_t n) {
  if (params.c() != cplx(0.0, 0.0))
    throw ParameterError("circle orbits require c = 0");
  if (tau.empty()) throw ShortSequenceError("empty address");
  OrbitSegment orbit;
  orbit.direction = OrbitDirection::forward;
  orbit.points.reserve(n + 1);
  orbit.symbols.reserve(n);
  // Angles are reduced every step: the raw compositions grow like beta^n and
  // would break the correspondence between consecutive points past n ~ 35.
  // For integer beta the reduction is exact leafwise; for fractional beta it
  // may reselect an equivalent leaf at a winding boundary, which leaves every
  // produced segment a valid orbit.
  double angle = t;
  orbit.points.push_back(std::polar(1.0, angle));
  for (std::size_t i = 0; i < n; ++i) {
    const int k = tau[i % tau.size()];
    angle = reduce_angle(theta(params, k, angle));
    const cplx next = std::polar(1.0, angle);
    orbit.symbols.push_back(nearest_branch_index(params, orbit.points.back(), next));
    orbit.points.push_back(next);
  }
  return orbit;
}

C2Point symbolic_point(const BundleParams& bp, const CorrespondenceParams& params,
                       double t, std::span<const int> tau, std::size_t N) {
  if (tau.size() < N) throw ShortSequenceError("address shorter than the truncation");
  C2Point g;
  g.z = std::polar(1.0, t);
  cplx s = 0.0;
  double w = bp.r;
  double angle = t;
  // Term n carries the composition of the first n angle maps. The raw
  // composition is kept: for fractional p/q the angle maps live on the real
  // line, not the circle, so reducing mod 2 pi would change later terms.
  // Growth beta^n costs ~beta^n * eps of phase per term, which the delta^n
  // series weights suppress for the truncations used here.
  for (std::size_t n = 0; n < N; ++n) {
    angle = theta(params, tau[n], angle);
    s += w * std::polar(1.0, angle);
    w *= bp.delta;
  }
  g.w = s;
  return g;
}

bool quotient_equal(const C2Point& a, const C2Point& b, double tol) {
  return std::abs(a.z - b.z) <= tol && std::abs(a.w - b.w) <= tol;
}

namespace {

void append_g17(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string torus_points_csv(std::span<const TorusPoint> cloud) {
  std::string out = "t,disk_re,disk_im\n";
  for (const TorusPoint& x : cloud) {
    append_g17(out, x.t);
    out += ',';
    append_g17(out, x.disk.real());
    out += ',';
    append_g17(out, x.disk.imag());
    out += '\n';
  }
  return out;
}

std::string torus_points_embedded_csv(std::span<const TorusPoint> cloud) {
  std::string out = "z_re,z_im,w_re,w_im\n";
  for (const TorusPoint& x : cloud) {
    const cplx z = std::polar(1.0, x.t);
    append_g17(out, z.real());
    out += ',';
    append_g17(out, z.imag());
    out += ',';
    append_g17(out, x.disk.real());
    out += ',';
    append_g17(out, x.disk.imag());
    out += '\n';
  }
  return out;
}

}  // namespace corrdyn
