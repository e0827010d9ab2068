#include "corrdyn/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace corrdyn {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

double max_modulus(std::span<const cplx> pts) {
  double m = 0.0;
  for (const cplx& z : pts) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

BundleParams choose_bundle_params(const CorrespondenceParams& params,
                                  const AnnulusBounds& working_annulus) {
  if (!working_annulus.valid) throw InvalidAnnulusError("annulus bounds are not valid");
  const double ac = std::abs(params.c());
  double ceiling = 1.0 / std::sqrt(2.0);
  if (ac > 0.0) ceiling = std::min(ceiling, 1.0 / (4.0 * ac));
  BundleParams bp;
  bp.r = 0.95 * ceiling;
  const double r_inner = working_annulus.R_c;
  const double rho = 2.0 * std::sin(kPi / std::max(params.p(), params.q())) *
                     std::pow(r_inner, params.beta());
  bp.delta = std::min(0.125, bp.r * rho / 4.0);
  return bp;
}

BundlePoint bundle_point_from_orbit(const BundleParams& bp, const OrbitSegment& orbit) {
  if (orbit.points.size() < 2) throw EmptyOrbitError("orbit carries no step");
  BundlePoint x;
  x.base = orbit.points[0];
  x.orbit = orbit;
  cplx s = 0.0;
  double w = bp.r;
  for (std::size_t n = 1; n < orbit.points.size(); ++n) {
    s += w * orbit.points[n];
    w *= bp.delta;
  }
  x.series = s;
  const std::size_t N = orbit.steps();
  x.tail_bound = bp.r * std::pow(bp.delta, static_cast<double>(N)) *
                 max_modulus(orbit.points) / (1.0 - bp.delta);
  return x;
}

BundlePoint bundle_map(const CorrespondenceParams& /*params*/, const BundleParams& bp,
                       const BundlePoint& x) {
  // The branch applied to the base is the one recorded in the orbit, so the
  // image is exactly the shifted segment.
  if (x.orbit.steps() < 2) throw ShortOrbitError("bundle map needs at least two steps");
  OrbitSegment shifted;
  shifted.direction = x.orbit.direction;
  shifted.points.assign(x.orbit.points.begin() + 1, x.orbit.points.end());
  shifted.symbols.assign(x.orbit.symbols.begin() + 1, x.orbit.symbols.end());
  return bundle_point_from_orbit(bp, shifted);
}

cplx bundle_map_formula_value(const BundleParams& bp, const BundlePoint& x) {
  if (x.orbit.steps() < 1) throw ShortOrbitError("orbit carries no step");
  const cplx z1 = x.orbit.points[1];
  return x.series / bp.delta - bp.r * z1 / bp.delta;
}

cplx bundle_step_jacobian_det(const CorrespondenceParams& params,
                              const BundleParams& bp, cplx z, cplx z_next) {
  return branch_derivative(params, z, z_next) / bp.delta;
}

BundlePoint bundle_backward_step(const CorrespondenceParams& params,
                                 const BundleParams& bp, const BundlePoint& x,
                                 int preimage_index) {
  const auto pre = preimages(params, x.base);
  if (preimage_index < 0 || preimage_index >= static_cast<int>(pre.size()))
    throw ParameterError("preimage index out of range");
  const cplx zeta = pre[preimage_index];
  OrbitSegment extended;
  extended.direction = x.orbit.direction;
  extended.points.reserve(x.orbit.points.size() + 1);
  extended.points.push_back(zeta);
  extended.points.insert(extended.points.end(), x.orbit.points.begin(),
                         x.orbit.points.end());
  extended.symbols.reserve(x.orbit.symbols.size() + 1);
  extended.symbols.push_back(nearest_branch_index(params, zeta, x.base));
  extended.symbols.insert(extended.symbols.end(), x.orbit.symbols.begin(),
                          x.orbit.symbols.end());
  return bundle_point_from_orbit(bp, extended);
}

BundlePoint reencode(const BundleParams& to, const BundlePoint& x) {
  return bundle_point_from_orbit(to, x.orbit);
}

MetricValue metric_ds(double s, const BundlePoint& x, const BundlePoint& y,
                      std::size_t depth, double diam) {
  if (s <= 0.0 || s >= 1.0) throw ParameterError("s must lie in (0,1)");
  if (x.orbit.direction != y.orbit.direction)
    throw DepthError("orbit directions differ");
  if (x.orbit.points.size() < depth || y.orbit.points.size() < depth)
    throw DepthError("orbits shorter than the requested depth");
  MetricValue out;
  double w = 1.0;
  for (std::size_t n = 0; n < depth; ++n) {
    out.value += w * std::abs(x.orbit.points[n] - y.orbit.points[n]);
    w *= s;
  }
  out.tail = w * diam / (1.0 - s);
  return out;
}

SectionTable enumerate_sections(const CorrespondenceParams& params,
                                const BundleParams& bp, std::span<const cplx> L,
                                std::size_t depth) {
  if (depth < 1) throw ParameterError("depth must be >= 1");
  if (L.empty()) throw ParameterError("empty base sample");
  SectionTable table;
  table.depth = depth;

  for (const cplx& z : L)
    if (std::abs(z) < 1e-9)
      throw BranchCollapseError("base sample touches the branch point");

  std::vector<int> word(depth, 0);
  while (true) {
    std::vector<BundlePoint> section;
    section.reserve(L.size());
    for (const cplx& z : L)
      section.push_back(bundle_point_from_orbit(bp, forward_orbit(params, z, word, depth)));
    table.sections.emplace(word, std::move(section));
    std::size_t pos = depth;
    while (pos > 0 && word[pos - 1] == params.q() - 1) word[--pos] = 0;
    if (pos == 0) break;
    ++word[pos - 1];
  }

  // Pointwise disjointness over the shared base sample.
  table.min_separation = std::numeric_limits<double>::infinity();
  table.separated = true;
  for (auto ia = table.sections.begin(); ia != table.sections.end(); ++ia) {
    for (auto ib = std::next(ia); ib != table.sections.end(); ++ib) {
      for (std::size_t i = 0; i < L.size(); ++i) {
        const BundlePoint& a = ia->second[i];
        const BundlePoint& b = ib->second[i];
        const double d = std::abs(a.series - b.series);
        table.min_separation = std::min(table.min_separation, d);
        if (d <= 2.0 * std::max(a.tail_bound, b.tail_bound)) table.separated = false;
      }
    }
  }
  if (table.sections.size() < 2) {
    table.min_separation = 0.0;
    table.separated = true;
  }
  return table;
}

namespace {

// Sorted greedy thinning; merging radius is far below eps so net queries are
// unaffected.
std::vector<cplx> dedupe_points(std::vector<cplx> pts, double merge_radius) {
  std::sort(pts.begin(), pts.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<cplx> out;
  for (const cplx& z : pts) {
    bool keep = true;
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      if (z.real() - it->real() > merge_radius) break;
      if (std::abs(z - *it) <= merge_radius) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(z);
  }
  return out;
}

bool is_eps_net(std::span<const cplx> cover, std::span<const cplx> target, double eps) {
  for (const cplx& y : target) {
    double best = std::numeric_limits<double>::infinity();
    for (const cplx& x : cover) {
      best = std::min(best, std::abs(x - y));
      if (best <= eps) break;
    }
    if (best > eps) return false;
  }
  return true;
}

}  // namespace

std::optional<int> mixing_diagnostic(const CorrespondenceParams& params,
                                     std::span<const cplx> lambda_sample,
                                     std::span<const cplx> arc, double eps,
                                     int max_n) {
  if (eps <= 0.0) throw ParameterError("eps must be positive");
  std::vector<cplx> current(arc.begin(), arc.end());
  current = dedupe_points(std::move(current), eps / 100.0);
  if (is_eps_net(current, lambda_sample, eps)) return 0;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<cplx> next;
    next.reserve(current.size() * params.q());
    for (const cplx& z : current) {
      for (const cplx& w : images(params, z)) {
        double best = std::numeric_limits<double>::infinity();
        for (const cplx& y : lambda_sample) {
          best = std::min(best, std::abs(w - y));
          if (best <= eps) break;
        }
        if (best <= eps) next.push_back(w);
      }
    }
    current = dedupe_points(std::move(next), eps / 100.0);
    if (current.empty()) return std::nullopt;
    if (is_eps_net(current, lambda_sample, eps)) return n;
  }
  return std::nullopt;
}

std::string bundle_points_to_jsonl(std::span<const BundlePoint> points) {
  std::ostringstream out;
  for (const BundlePoint& x : points) {
    nlohmann::json j;
    j["base"] = {x.base.real(), x.base.imag()};
    j["series"] = {x.series.real(), x.series.imag()};
    j["tail_bound"] = x.tail_bound;
    j["direction"] = x.direction() == OrbitDirection::forward ? "forward" : "backward";
    j["symbols"] = x.orbit.symbols;
    auto pts = nlohmann::json::array();
    for (const cplx& z : x.orbit.points) pts.push_back({z.real(), z.imag()});
    j["orbit"] = std::move(pts);
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace corrdyn
