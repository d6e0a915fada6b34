#include "rlsa/langevin.hpp"

#include <cmath>
#include <stdexcept>

#include "annealing.hpp"

namespace rlsa {

void LDConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
  if (!(tau0 > 0.0) || !std::isfinite(tau0)) throw std::invalid_argument("tau0 must be positive");
  if (steps < 1) throw std::invalid_argument("steps must be at least 1");
  if (chains < 1) throw std::invalid_argument("chains must be at least 1");
}

std::vector<double> ld_flip_probabilities(std::span<const double> delta, double alpha,
                                          double tau) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(tau > 0.0)) throw std::invalid_argument("temperature must be positive");
  std::vector<double> p(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    p[i] = langevin_flip_probability(delta[i], tau / alpha, tau);
  }
  return p;
}

namespace detail {
namespace {

class LdStepper {
 public:
  LdStepper(const EnergyModel& model, double alpha) : model_(model), alpha_(alpha) {}

  void operator()(ChainState& s, double tau) {
    const double shift = tau / alpha_;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double drop = s.x[i] ? s.gradient[i] : -s.gradient[i];
      if (uniform01(s.rng) < langevin_flip_probability(drop, shift, tau)) s.x[i] ^= 1;
    }
    evaluate(model_, s.x, eval_);
    s.energy = eval_.energy;
    std::swap(s.gradient, eval_.gradient);
    keep_best(s);
  }

 private:
  const EnergyModel& model_;
  double alpha_;
  Evaluation eval_;
};

}  // namespace
}  // namespace detail

void ld_step(ChainState& state, const EnergyModel& model, double tau, double alpha) {
  if (!(tau > 0.0) || !(alpha > 0.0)) {
    throw std::invalid_argument("temperature and alpha must be positive");
  }
  if (state.x.size() != model.num_nodes() || state.gradient.size() != model.num_nodes()) {
    throw std::invalid_argument("chain state does not match the model");
  }
  detail::LdStepper stepper(model, alpha);
  stepper(state, tau);
}

RunResult run_ld(const EnergyModel& model, const LDConfig& cfg,
                 const std::optional<Solution>& init) {
  cfg.validate();
  const detail::Schedule s{cfg.tau0, cfg.steps, cfg.chains, cfg.seed, cfg.threads};
  return detail::run_annealing(model, s, init,
                               [&] { return detail::LdStepper(model, cfg.alpha); });
}

}  // namespace rlsa
