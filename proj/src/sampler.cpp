#include "rlsa/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "annealing.hpp"
#include "rlsa/metrics.hpp"

namespace rlsa {

FlipKernel parse_kernel(const std::string& name) {
  if (name == "threshold") return FlipKernel::Threshold;
  if (name == "normalized") return FlipKernel::Normalized;
  throw std::invalid_argument("unknown flip kernel '" + name + "'");
}

const char* kernel_name(FlipKernel kernel) noexcept {
  return kernel == FlipKernel::Normalized ? "normalized" : "threshold";
}

void SamplerConfig::validate() const {
  if (!(tau0 > 0.0) || !std::isfinite(tau0)) throw std::invalid_argument("tau0 must be positive");
  if (d < 1) throw std::invalid_argument("d must be a positive integer");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be non-negative");
  }
  if (steps < 1) throw std::invalid_argument("steps must be at least 1");
  if (chains < 1) throw std::invalid_argument("chains must be at least 1");
}

ChainState ChainState::start(const EnergyModel& model, std::uint64_t master_seed,
                             std::size_t chain, const Solution* init) {
  const std::size_t n = model.num_nodes();
  ChainState s;
  s.rng = Engine(derive_seed(master_seed, chain));
  if (init) {
    if (init->size() != n) throw std::invalid_argument("initial solution has wrong length");
    if (std::any_of(init->begin(), init->end(), [](auto v) { return v > 1; })) {
      throw std::invalid_argument("initial solution must be binary");
    }
    s.x = *init;
  } else {
    s.x.resize(n);
    for (auto& v : s.x) v = coin(s.rng) ? 1 : 0;
  }
  Evaluation ev = evaluate(model, s.x);
  s.energy = ev.energy;
  s.gradient = std::move(ev.gradient);
  s.best_x = s.x;
  s.best_energy = s.energy;
  return s;
}

double temperature(std::size_t t, double tau0, std::size_t steps) {
  return tau0 * (1.0 - static_cast<double>(t - 1) / static_cast<double>(steps));
}

double kth_largest(std::span<const double> values, std::size_t d, std::vector<double>& scratch) {
  if (d < 1 || d > values.size()) {
    throw std::invalid_argument("rank " + std::to_string(d) + " out of range for " +
                                std::to_string(values.size()) + " values");
  }
  scratch.assign(values.begin(), values.end());
  auto nth = scratch.begin() + static_cast<std::ptrdiff_t>(d - 1);
  std::nth_element(scratch.begin(), nth, scratch.end(), std::greater<>{});
  return *nth;
}

double kth_largest(std::span<const double> values, std::size_t d) {
  std::vector<double> scratch;
  return kth_largest(values, d, scratch);
}

double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::vector<double> flip_probabilities(std::span<const double> delta, double dth,
                                       double epsilon, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("temperature must be positive");
  std::vector<double> p(delta.size());
  const double shift = dth - epsilon;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    p[i] = langevin_flip_probability(delta[i], shift, tau);
  }
  return p;
}

namespace {

// s_i (1 - 2 x_i) is the signed score of flipping bit i
void normalized_into(std::span<const double> signed_score, std::size_t d, std::span<double> out) {
  double total = 0.0;
  for (std::size_t i = 0; i < signed_score.size(); ++i) {
    out[i] = sigmoid(0.5 * signed_score[i]);
    total += out[i];
  }
  const double scale = static_cast<double>(d) / total;
  for (auto& p : out) p = std::clamp(p * scale, 0.0, 1.0);
}

}  // namespace

std::vector<double> normalized_flip_probabilities(std::span<const double> score,
                                                  std::span<const std::uint8_t> x,
                                                  std::size_t d) {
  if (score.size() != x.size()) throw std::invalid_argument("score and solution lengths differ");
  std::vector<double> p(score.size());
  if (p.empty()) return p;
  std::vector<double> signed_score(score.size());
  for (std::size_t i = 0; i < score.size(); ++i) signed_score[i] = x[i] ? -score[i] : score[i];
  normalized_into(signed_score, d, p);
  return p;
}

namespace detail {

std::size_t resolve_threads(std::size_t requested, std::size_t chains) {
  std::size_t n = requested;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return std::min(n, chains);
}

/// Per-worker scratch for regularized steps.
class RlsaStepper {
 public:
  RlsaStepper(const EnergyModel& model, const SamplerConfig& cfg) : model_(model), cfg_(cfg) {}

  void operator()(ChainState& s, double tau) {
    const std::size_t n = s.x.size();
    delta_.resize(n);
    prob_.resize(n);
    delta_from_gradient(s.x, s.gradient, delta_);
    if (cfg_.kernel == FlipKernel::Threshold) {
      const double shift = kth_largest(delta_, cfg_.d, scratch_) - cfg_.epsilon;
      for (std::size_t i = 0; i < n; ++i) {
        prob_[i] = langevin_flip_probability(delta_[i], shift, tau);
      }
    } else {
      // s_tau(x)_i (1 - 2 x_i) = Delta_i / tau
      for (std::size_t i = 0; i < n; ++i) delta_[i] /= tau;
      normalized_into(delta_, cfg_.d, prob_);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (uniform01(s.rng) < prob_[i]) s.x[i] ^= 1;
    }
    evaluate(model_, s.x, eval_);
    s.energy = eval_.energy;
    std::swap(s.gradient, eval_.gradient);
    keep_best(s);
  }

 private:
  const EnergyModel& model_;
  const SamplerConfig& cfg_;
  std::vector<double> delta_, prob_, scratch_;
  Evaluation eval_;
};

RunResult empty_graph_result(const EnergyModel& model, const Schedule& s) {
  RunResult r;
  r.trajectory.reserve(s.steps);
  for (std::size_t t = 1; t <= s.steps; ++t) {
    r.trajectory.push_back({t, temperature(t, s.tau0, s.steps), 0.0, 0.0});
  }
  if (model.kind() != ProblemKind::QUBO) r.objective = 0;
  return r;
}

RunResult finish_run(const EnergyModel& model, const Schedule& s, std::vector<ChainRun> runs) {
  RunResult r;
  r.trajectory.resize(s.steps);
  for (std::size_t t = 0; t < s.steps; ++t) {
    double best = runs[0].best_energies[t];
    double sum = 0.0;
    for (const auto& run : runs) {
      best = std::min(best, run.best_energies[t]);
      sum += run.energies[t];
    }
    r.trajectory[t] = {t + 1, temperature(t + 1, s.tau0, s.steps), best,
                       sum / static_cast<double>(runs.size())};
  }

  std::size_t best_chain = 0;
  for (std::size_t k = 1; k < runs.size(); ++k) {
    if (runs[k].state.best_energy < runs[best_chain].state.best_energy) best_chain = k;
  }
  r.best_chain = best_chain;
  r.raw_best_x = std::move(runs[best_chain].state.best_x);
  r.raw_best_energy = runs[best_chain].state.best_energy;

  r.best_x = greedy_decode(model, r.raw_best_x);
  r.best_energy = energy(model, r.best_x);
  r.violation = violation(model, r.best_x);
  if (model.kind() == ProblemKind::MCUT ||
      (model.kind() != ProblemKind::QUBO && r.violation == 0)) {
    r.objective = objective(model, r.best_x);
  }
  return r;
}

Schedule schedule_of(const SamplerConfig& cfg) {
  return {cfg.tau0, cfg.steps, cfg.chains, cfg.seed, cfg.threads};
}

}  // namespace detail

void rlsa_step(ChainState& state, const EnergyModel& model, double tau,
               const SamplerConfig& cfg) {
  if (!(tau > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (state.x.size() != model.num_nodes() || state.gradient.size() != model.num_nodes()) {
    throw std::invalid_argument("chain state does not match the model");
  }
  detail::RlsaStepper stepper(model, cfg);
  stepper(state, tau);
}

namespace {

void check_rank(const EnergyModel& model, const SamplerConfig& cfg) {
  cfg.validate();
  if (model.num_nodes() > 0 && cfg.d > model.num_nodes()) {
    throw std::invalid_argument("d = " + std::to_string(cfg.d) + " exceeds the node count " +
                                std::to_string(model.num_nodes()));
  }
}

}  // namespace

ChainRun run_rlsa_chain(const EnergyModel& model, const SamplerConfig& cfg, std::size_t chain,
                        const std::optional<Solution>& init) {
  check_rank(model, cfg);
  detail::RlsaStepper stepper(model, cfg);
  return detail::drive_chain(model, detail::schedule_of(cfg), chain, init, stepper);
}

RunResult run_rlsa(const EnergyModel& model, const SamplerConfig& cfg,
                   const std::optional<Solution>& init) {
  check_rank(model, cfg);
  return detail::run_annealing(model, detail::schedule_of(cfg), init,
                               [&] { return detail::RlsaStepper(model, cfg); });
}

}  // namespace rlsa
