#pragma once

// Chain driver shared by the regularized and constant-step samplers. The two
// differ only in the per-step flip rule, supplied as a stepper object.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "rlsa/energy.hpp"
#include "rlsa/sampler.hpp"

namespace rlsa::detail {

struct Schedule {
  double tau0 = 0.0;
  std::size_t steps = 0;
  std::size_t chains = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

/// Chain best update on strict improvement.
inline void keep_best(ChainState& s) {
  if (s.energy < s.best_energy) {
    s.best_energy = s.energy;
    s.best_x = s.x;
  }
}

std::size_t resolve_threads(std::size_t requested, std::size_t chains);

/// `stepper(state, tau)` advances one chain by one step.
template <class Stepper>
ChainRun drive_chain(const EnergyModel& model, const Schedule& s, std::size_t chain,
                     const std::optional<Solution>& init, Stepper& stepper) {
  ChainRun run{ChainState::start(model, s.seed, chain, init ? &*init : nullptr), {}, {}};
  run.energies.reserve(s.steps);
  run.best_energies.reserve(s.steps);
  for (std::size_t t = 1; t <= s.steps; ++t) {
    stepper(run.state, temperature(t, s.tau0, s.steps));
    run.energies.push_back(run.state.energy);
    run.best_energies.push_back(run.state.best_energy);
  }
  return run;
}

/// Reduces finished chains into a RunResult (trajectory, global best, decode).
RunResult finish_run(const EnergyModel& model, const Schedule& s, std::vector<ChainRun> runs);

RunResult empty_graph_result(const EnergyModel& model, const Schedule& s);

/// Runs all chains, each with its own stepper from `make_stepper()`.
/// Chains are claimed dynamically by the workers, but every chain draws only
/// from its own derived stream, so the result is independent of scheduling.
template <class MakeStepper>
RunResult run_annealing(const EnergyModel& model, const Schedule& s,
                        const std::optional<Solution>& init, MakeStepper make_stepper) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult result;
  if (model.num_nodes() == 0) {
    result = empty_graph_result(model, s);
  } else {
    std::vector<ChainRun> runs(s.chains);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      try {
        auto stepper = make_stepper();
        for (std::size_t k = next++; k < s.chains; k = next++) {
          runs[k] = drive_chain(model, s, k, init, stepper);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = s.chains;
      }
    };
    const std::size_t workers = resolve_threads(s.threads, s.chains);
    if (workers <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    result = finish_run(model, s, std::move(runs));
  }
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace rlsa::detail
