#include "corrdyn/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace corrdyn {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kBranchPointRadius = 1e-9;

CycleKind classify(std::span<const cplx> points, cplx& multiplier) {
  for (const cplx& z : points) {
    if (std::abs(z) <= kBranchPointRadius) {
      multiplier = 0.0;
      return CycleKind::attracting;
    }
  }
  return std::abs(multiplier) > 1.0 ? CycleKind::repelling : CycleKind::attracting;
}

// Orbit of the exact branch-point cycle 0 -> c -> ... for a rotation of the
// word; the first step out of 0 is branch independent.
Cycle branch_point_cycle(const CorrespondenceParams& params,
                         std::span<const int> symbols) {
  const std::size_t n = symbols.size();
  for (std::size_t rot = 0; rot < n; ++rot) {
    std::vector<int> word(n);
    for (std::size_t i = 0; i < n; ++i) word[i] = symbols[(rot + i) % n];
    std::vector<cplx> pts(n + 1);
    pts[0] = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i + 1 <= n && ok; ++i) {
      if (pts[i] == cplx(0.0, 0.0)) {
        pts[i + 1] = params.c();
        continue;
      }
      try {
        pts[i + 1] = branch_image(params, pts[i], word[i]);
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok || std::abs(pts[n]) > 1e-8) continue;
    Cycle cyc;
    cyc.points.assign(pts.begin(), pts.begin() + n);
    cyc.symbols = std::move(word);
    cyc.multiplier = 0.0;
    cyc.kind = CycleKind::attracting;
    return cyc;
  }
  throw BranchCollapseError("orbit collapsed onto a branch point");
}

struct OrbitEval {
  std::vector<cplx> points;  // n+1 entries
  cplx derivative;           // product of branch derivatives
  bool near_branch_point = false;
};

OrbitEval eval_word(const CorrespondenceParams& params, std::span<const int> symbols,
                    cplx z) {
  OrbitEval ev;
  ev.points.resize(symbols.size() + 1);
  ev.points[0] = z;
  ev.derivative = 1.0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const cplx zi = ev.points[i];
    // An orbit image within 1e-9 of c certifies a pass through the branch
    // point; the seed itself may legitimately sit near c.
    if (std::abs(zi) < kBranchPointRadius ||
        (i > 0 && std::abs(zi - params.c()) < kBranchPointRadius)) {
      ev.near_branch_point = true;
      return ev;
    }
    const cplx w = branch_image(params, zi, symbols[i]);
    ev.derivative *= params.beta() * (w - params.c()) / zi;
    ev.points[i + 1] = w;
  }
  return ev;
}

}  // namespace

std::vector<cplx> unit_circle_periodic_points(const CorrespondenceParams& params,
                                              int n, std::int64_t cap) {
  if (params.c() != cplx(0.0, 0.0))
    throw ParameterError("unit-circle census requires c = 0");
  if (n < 1) throw ParameterError("period must be >= 1");
  const double count_est =
      std::pow(static_cast<double>(params.p()), n) - std::pow(static_cast<double>(params.q()), n);
  if (count_est > static_cast<double>(cap))
    throw OverflowError("p^n - q^n exceeds the census cap");
  std::int64_t m = 1;
  for (int i = 0; i < n; ++i) m *= params.p();
  std::int64_t qn = 1;
  for (int i = 0; i < n; ++i) qn *= params.q();
  m -= qn;
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < m; ++j)
    out.push_back(std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(m)));
  return out;
}

Cycle cycle_from_symbols(const CorrespondenceParams& params,
                         std::span<const int> symbols, cplx seed) {
  if (symbols.empty()) throw ParameterError("empty branch word");
  for (int k : symbols)
    if (k < 0 || k >= params.q()) throw ParameterError("branch index out of range");

  cplx z = seed;
  if (std::abs(z) < kBranchPointRadius) return branch_point_cycle(params, symbols);

  const int kMaxIter = 50;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    OrbitEval ev = eval_word(params, symbols, z);
    if (ev.near_branch_point) return branch_point_cycle(params, symbols);
    const cplx f = ev.points.back() - z;
    // Accept on residual before stepping: cycles sitting on the branch cut
    // (argument exactly pi) would be destabilized by any Newton update that
    // crosses to the other sheet.
    if (std::abs(f) <= 1e-12 * std::max(1.0, std::abs(z))) {
      Cycle cyc;
      cyc.points.assign(ev.points.begin(), ev.points.end() - 1);
      cyc.symbols.assign(symbols.begin(), symbols.end());
      cyc.multiplier = ev.derivative;
      cyc.kind = classify(cyc.points, cyc.multiplier);
      return cyc;
    }
    const cplx df = ev.derivative - 1.0;
    if (std::abs(df) < 1e-14) throw NoConvergenceError("degenerate Newton step");
    const cplx dz = f / df;
    z -= dz;
    if (std::abs(dz) <= 1e-12 * std::max(1.0, std::abs(z))) {
      OrbitEval fin = eval_word(params, symbols, z);
      if (fin.near_branch_point) return branch_point_cycle(params, symbols);
      if (std::abs(fin.points.back() - z) > 1e-9 * std::max(1.0, std::abs(z)))
        throw NoConvergenceError("Newton stalled away from a cycle");
      Cycle cyc;
      cyc.points.assign(fin.points.begin(), fin.points.end() - 1);
      cyc.symbols.assign(symbols.begin(), symbols.end());
      cyc.multiplier = fin.derivative;
      cyc.kind = classify(cyc.points, cyc.multiplier);
      return cyc;
    }
  }
  throw NoConvergenceError("cycle solve did not converge in 50 iterations");
}

Cycle continue_cycle(const CorrespondenceParams& params_from,
                     const CorrespondenceParams& params_to, const Cycle& cycle,
                     double max_step) {
  if (params_from.p() != params_to.p() || params_from.q() != params_to.q())
    throw ParameterError("continuation only moves c");
  if (max_step <= 0.0) throw ParameterError("max_step must be positive");
  if (cycle.points.empty()) throw ParameterError("empty cycle");

  Cycle current = cycle;
  cplx c_now = params_from.c();
  const cplx c_goal = params_to.c();
  double step = max_step;
  while (c_now != c_goal) {
    const cplx remaining = c_goal - c_now;
    const double dist = std::abs(remaining);
    const cplx c_next = dist <= step ? c_goal : c_now + remaining * (step / dist);
    const CorrespondenceParams sub(params_from.p(), params_from.q(), c_next);
    try {
      current = cycle_from_symbols(sub, current.symbols, current.points[0]);
      c_now = c_next;
    } catch (const Error&) {
      step *= 0.5;
      if (step < 1e-8)
        throw ContinuationStuckError("continuation step underflow; left the motion domain");
    }
  }
  return current;
}

std::vector<cplx> default_seed_grid() {
  std::vector<cplx> grid;
  grid.reserve(256);
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i)
      grid.emplace_back(-1.0 + (i + 0.5) / 8.0, -1.0 + (j + 0.5) / 8.0);
  return grid;
}

double hausdorff_distance(std::span<const cplx> a, std::span<const cplx> b) {
  auto one_sided = [](std::span<const cplx> from, std::span<const cplx> to) {
    double worst = 0.0;
    for (const cplx& x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const cplx& y : to) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

std::vector<Cycle> attracting_cycles_search(const CorrespondenceParams& params,
                                            int max_period,
                                            std::span<const cplx> grid) {
  if (max_period < 1) throw ParameterError("max_period must be >= 1");
  std::vector<Cycle> found;
  std::vector<int> word;
  // Words enumerated by length then lexicographically; seeds in input order.
  for (int n = 1; n <= max_period; ++n) {
    word.assign(n, 0);
    while (true) {
      for (const cplx& seed : grid) {
        Cycle cyc;
        try {
          cyc = cycle_from_symbols(params, word, seed);
        } catch (const Error&) {
          continue;
        }
        if (cyc.kind != CycleKind::attracting) continue;
        bool dup = false;
        for (const Cycle& prev : found) {
          if (hausdorff_distance(prev.points, cyc.points) < 1e-8) {
            dup = true;
            break;
          }
        }
        if (!dup) found.push_back(std::move(cyc));
      }
      int pos = n - 1;
      while (pos >= 0 && word[pos] == params.q() - 1) word[pos--] = 0;
      if (pos < 0) break;
      ++word[pos];
    }
  }
  return found;
}

std::string cycles_to_jsonl(std::span<const Cycle> cycles) {
  std::ostringstream out;
  for (const Cycle& c : cycles) {
    nlohmann::json j;
    j["period"] = c.period();
    j["symbols"] = c.symbols;
    auto pts = nlohmann::json::array();
    for (const cplx& z : c.points) pts.push_back({z.real(), z.imag()});
    j["points"] = std::move(pts);
    j["multiplier"] = {c.multiplier.real(), c.multiplier.imag()};
    j["kind"] = c.kind == CycleKind::repelling ? "repelling" : "attracting";
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace corrdyn
