#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rlsa/energy.hpp"
#include "rlsa/sampler.hpp"

namespace rlsa {

/// Repeatedly flips the coordinate with the largest energy drop (lowest
/// index on ties) until no flip strictly lowers the energy. For MIS/MCL
/// with beta > 1 the fixed point is feasible.
Solution greedy_decode(const EnergyModel& model, Solution x);

/// Normalized distance between an energy and a reference energy:
/// |h - ref| / max(|h|, |ref|) when both have the same sign (or one is 0),
/// 1 when the signs differ, and 0 when both are 0.
double primal_gap(double h, double h_star) noexcept;

struct GapRecord {
  std::size_t step = 0;
  double gap = 0.0;
};

/// Primal gap of the best-so-far energy at every trajectory step.
std::vector<GapRecord> gap_trajectory(std::span<const TrajectoryRecord> trajectory,
                                      double h_star);

struct Summary {
  std::size_t instances = 0;
  /// Objective statistics over results that have an objective.
  std::size_t with_objective = 0;
  double mean_objective = 0.0;
  std::int64_t min_objective = 0;
  std::int64_t max_objective = 0;
  double mean_best_energy = 0.0;
  double total_wall_time_s = 0.0;
  std::size_t with_reference = 0;
  std::optional<double> mean_primal_gap;
};

/// `references`, when non-empty, is parallel to `results`; entries without
/// a value are left out of the gap mean. Throws on an empty result list.
Summary summarize(std::span<const RunResult> results,
                  std::span<const std::optional<double>> references = {});

}  // namespace rlsa
