#include "rlsa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rlsa {

Solution greedy_decode(const EnergyModel& model, Solution x) {
  Evaluation ev;
  std::vector<double> drop(x.size());
  evaluate(model, x, ev);
  for (;;) {
    delta_from_gradient(x, ev.gradient, drop);
    // max_element returns the first maximum, i.e. the lowest index on ties
    const auto best = std::max_element(drop.begin(), drop.end());
    if (best == drop.end() || *best <= 0.0) break;
    const auto i = static_cast<std::size_t>(best - drop.begin());
    const double before = ev.energy;
    x[i] ^= 1;
    evaluate(model, x, ev);
    // rounding on real-weighted qubo models can report a drop that is not there
    if (!(ev.energy < before)) {
      x[i] ^= 1;
      break;
    }
  }
  return x;
}

double primal_gap(double h, double h_star) noexcept {
  if (h == h_star) return 0.0;
  if (h * h_star < 0.0) return 1.0;
  return std::abs(h - h_star) / std::max(std::abs(h), std::abs(h_star));
}

std::vector<GapRecord> gap_trajectory(std::span<const TrajectoryRecord> trajectory,
                                      double h_star) {
  std::vector<GapRecord> gaps;
  gaps.reserve(trajectory.size());
  for (const auto& rec : trajectory) gaps.push_back({rec.step, primal_gap(rec.best_energy, h_star)});
  return gaps;
}

Summary summarize(std::span<const RunResult> results,
                  std::span<const std::optional<double>> references) {
  if (results.empty()) throw std::invalid_argument("cannot summarize an empty result list");
  if (!references.empty() && references.size() != results.size()) {
    throw std::invalid_argument("references must be parallel to results");
  }
  Summary s;
  s.instances = results.size();
  s.min_objective = std::numeric_limits<std::int64_t>::max();
  s.max_objective = std::numeric_limits<std::int64_t>::min();
  double objective_sum = 0.0, energy_sum = 0.0, gap_sum = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    energy_sum += r.best_energy;
    s.total_wall_time_s += r.wall_time_s;
    if (r.objective) {
      ++s.with_objective;
      objective_sum += static_cast<double>(*r.objective);
      s.min_objective = std::min(s.min_objective, *r.objective);
      s.max_objective = std::max(s.max_objective, *r.objective);
    }
    if (!references.empty() && references[i]) {
      ++s.with_reference;
      gap_sum += primal_gap(r.best_energy, *references[i]);
    }
  }
  s.mean_best_energy = energy_sum / static_cast<double>(results.size());
  if (s.with_objective > 0) {
    s.mean_objective = objective_sum / static_cast<double>(s.with_objective);
  } else {
    s.min_objective = s.max_objective = 0;
  }
  if (s.with_reference > 0) s.mean_primal_gap = gap_sum / static_cast<double>(s.with_reference);
  return s;
}

}  // namespace rlsa
