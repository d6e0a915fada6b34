#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rlsa/energy.hpp"
#include "rlsa/sampler.hpp"

namespace rlsa {

/// Discrete Langevin sampler with a constant step size alpha. Used as the
/// unregularized ablation baseline; everything except the flip rule is
/// shared with run_rlsa.
struct LDConfig {
  double alpha = 0.01;
  double tau0 = 0.01;
  std::size_t steps = 100;
  std::size_t chains = 1;
  std::uint64_t seed = 0;
  std::size_t threads = 1;

  void validate() const;
};

/// sigmoid(Delta_i / 2 tau - 1 / 2 alpha), since s(x)_i (1 - 2 x_i) = Delta_i / tau.
std::vector<double> ld_flip_probabilities(std::span<const double> delta, double alpha,
                                          double tau);

void ld_step(ChainState& state, const EnergyModel& model, double tau, double alpha);

RunResult run_ld(const EnergyModel& model, const LDConfig& cfg,
                 const std::optional<Solution>& init = std::nullopt);

}  // namespace rlsa
