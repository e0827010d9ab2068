#pragma once

#include <span>
#include <string>
#include <vector>

#include "corrdyn/corr_core.hpp"

namespace corrdyn {

enum class CycleKind { repelling, attracting };

/// A periodic orbit. points[i+1 mod n] is the symbols[i]-branch image of
/// points[i]; orbits through a branch point carry multiplier 0 and are
/// attracting by convention.
struct Cycle {
  std::vector<cplx> points;
  std::vector<int> symbols;
  cplx multiplier;
  CycleKind kind = CycleKind::repelling;

  std::size_t period() const { return points.size(); }
};

/// Periodic points of period n on the unit circle at c = 0: the
/// (p^n - q^n)-th roots of unity. The count p^n - q^n must not exceed cap.
std::vector<cplx> unit_circle_periodic_points(const CorrespondenceParams& params,
                                              int n, std::int64_t cap = 1000000);

/// Newton solve for the cycle whose branch word is `symbols`, started at
/// `seed`. Orbits that collapse onto a branch point are accepted only when
/// the exact branch-point cycle closes up; otherwise BranchCollapseError.
Cycle cycle_from_symbols(const CorrespondenceParams& params,
                         std::span<const int> symbols, cplx seed);

/// Predictor-corrector continuation of a cycle in c, with step halving down
/// to 1e-8 before ContinuationStuckError.
Cycle continue_cycle(const CorrespondenceParams& params_from,
                     const CorrespondenceParams& params_to, const Cycle& cycle,
                     double max_step);

/// Tries every branch word up to max_period from every seed, deduplicates by
/// unordered Hausdorff distance (1e-8) and keeps the attracting ones. Output
/// order is by word (length, then lexicographic), then seed order.
std::vector<Cycle> attracting_cycles_search(const CorrespondenceParams& params,
                                            int max_period,
                                            std::span<const cplx> grid);

/// 16 x 16 seed grid on [-1,1]^2 (cell centers).
std::vector<cplx> default_seed_grid();

double hausdorff_distance(std::span<const cplx> a, std::span<const cplx> b);

/// One JSON object per line: period, symbols, points, multiplier, kind.
std::string cycles_to_jsonl(std::span<const Cycle> cycles);

}  // namespace corrdyn
