#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rlsa/energy.hpp"
#include "rlsa/random.hpp"

namespace rlsa {

/// Which per-coordinate flip rule a regularized run uses.
enum class FlipKernel {
  Threshold,   ///< sigmoid((Delta_i - Delta_(d) + eps) / 2 tau)
  Normalized,  ///< sigmoid outputs rescaled to sum to d, clamped to [0, 1]
};

FlipKernel parse_kernel(const std::string& name);
const char* kernel_name(FlipKernel kernel) noexcept;

struct SamplerConfig {
  double tau0 = 0.01;
  std::size_t d = 5;
  double epsilon = 1e-6;
  std::size_t steps = 100;
  std::size_t chains = 1;
  std::uint64_t seed = 0;
  FlipKernel kernel = FlipKernel::Threshold;
  /// Worker threads for the chains; 0 picks the hardware concurrency.
  /// Results never depend on this value.
  std::size_t threads = 1;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// One annealing chain. `gradient` caches dH/dx at `x` so each step costs
/// a single sparse matvec.
struct ChainState {
  Solution x;
  double energy = 0.0;
  Solution best_x;
  double best_energy = 0.0;
  Engine rng;
  std::vector<double> gradient;

  /// Chain `chain` of a run seeded with `master_seed`. Without `init` the
  /// start point is uniform on {0,1}^N, one engine draw per coordinate.
  static ChainState start(const EnergyModel& model, std::uint64_t master_seed,
                          std::size_t chain, const Solution* init = nullptr);
};

struct TrajectoryRecord {
  std::size_t step = 0;
  double tau = 0.0;
  double best_energy = 0.0;  ///< min over chains of the best energy so far
  double mean_energy = 0.0;  ///< mean current energy over chains
};

/// Per-step history of a single chain.
struct ChainRun {
  ChainState state;
  std::vector<double> energies;
  std::vector<double> best_energies;
};

struct RunResult {
  Solution best_x;  ///< greedy-decoded global best
  double best_energy = 0.0;
  std::optional<std::int64_t> objective;  ///< empty for QUBO or infeasible output
  std::uint64_t violation = 0;
  std::vector<TrajectoryRecord> trajectory;
  double wall_time_s = 0.0;

  std::size_t best_chain = 0;
  Solution raw_best_x;  ///< global best before decoding
  double raw_best_energy = 0.0;
};

/// Linear schedule tau0 (1 - (t - 1) / T) for 1-based step t.
double temperature(std::size_t t, double tau0, std::size_t steps);

/// d-th largest entry (1-based, duplicates occupy consecutive ranks).
double kth_largest(std::span<const double> values, std::size_t d);
/// Same, using `scratch` as the selection buffer.
double kth_largest(std::span<const double> values, std::size_t d, std::vector<double>& scratch);

/// Numerically stable logistic function.
double sigmoid(double z) noexcept;

/// Shared sigmoid rule of both Langevin samplers: sigmoid((delta - shift) / 2 tau).
/// The regularized sampler uses shift = Delta_(d) - eps, the constant-step
/// sampler shift = tau / alpha.
inline double langevin_flip_probability(double delta, double shift, double tau) noexcept {
  return sigmoid((delta - shift) / (2.0 * tau));
}

std::vector<double> flip_probabilities(std::span<const double> delta, double dth,
                                       double epsilon, double tau);

/// p_i = clamp(d sigmoid(s_i (1 - 2 x_i) / 2) / sum_j sigmoid(s_j (1 - 2 x_j) / 2), 0, 1)
std::vector<double> normalized_flip_probabilities(std::span<const double> score,
                                                  std::span<const std::uint8_t> x,
                                                  std::size_t d);

/// One regularized step at temperature `tau`: computes Delta and Delta_(d)
/// once, draws one uniform per coordinate in ascending order, flips, then
/// re-evaluates and updates the chain best on strict improvement.
void rlsa_step(ChainState& state, const EnergyModel& model, double tau,
               const SamplerConfig& cfg);

/// Runs chain `chain` alone for cfg.steps steps.
ChainRun run_rlsa_chain(const EnergyModel& model, const SamplerConfig& cfg, std::size_t chain,
                        const std::optional<Solution>& init = std::nullopt);

/// Regularized Langevin simulated annealing over cfg.chains independent
/// chains. The lowest chain best (ties to the lowest chain index) is greedy
/// decoded before the objective is read off.
RunResult run_rlsa(const EnergyModel& model, const SamplerConfig& cfg,
                   const std::optional<Solution>& init = std::nullopt);

}  // namespace rlsa
