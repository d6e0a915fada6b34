#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rlsa/energy.hpp"
#include "rlsa/graph.hpp"
#include "rlsa/langevin.hpp"
#include "rlsa/metrics.hpp"
#include "rlsa/sampler.hpp"

namespace rlsa::bench {

enum class SolverKind { RLSA, LD };

SolverKind parse_solver(const std::string& name);
const char* solver_name(SolverKind solver) noexcept;

/// Tuned hyperparameters for one benchmark family.
struct Preset {
  const char* name;
  ProblemKind problem;
  double tau0;
  std::size_t d;
  std::size_t chains;
  std::size_t steps;
  double beta;
};

std::span<const Preset> presets() noexcept;
/// Throws std::invalid_argument for an unknown name.
const Preset& find_preset(const std::string& name);

/// "er:N:P" or "ba:N:M"; N may be a range "LO-HI" drawn uniformly per instance.
struct GeneratorSpec {
  enum class Family { ER, BA } family = Family::ER;
  std::size_t min_nodes = 0;
  std::size_t max_nodes = 0;
  double p = 0.0;
  std::size_t m = 0;
  std::size_t count = 1;

  static GeneratorSpec parse(const std::string& text);
  std::string label() const;
};

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::MIS;
  std::optional<std::string> instance_path;  ///< file or directory of instances
  std::optional<GeneratorSpec> generator;
  std::optional<InstanceFormat> format;       ///< detected per file when empty
  SolverKind solver = SolverKind::RLSA;
  SamplerConfig sampler;
  double alpha = 0.01;
  double beta = EnergyModel::kDefaultBeta;
  std::optional<std::string> preset;
  std::optional<std::string> reference_path;
  std::string out_dir = "results";
  bool trajectory = false;
  std::optional<std::string> save_instances_dir;

  /// Overwrites problem, tau0, d, chains, steps and beta from the preset.
  void apply(const Preset& preset);
  /// Checks everything that does not need the instances.
  void validate() const;
  LDConfig ld_config() const;
};

struct Instance {
  std::string name;
  std::shared_ptr<const Graph> graph;
};

/// Reads the instance file(s) or generates them. Generated instance i uses
/// seed derive_seed(cfg.sampler.seed, i).
std::vector<Instance> load_instances(const ExperimentConfig& cfg);

/// Lines "instance_name energy"; '#' starts a comment.
std::map<std::string, double> parse_reference_energies(std::istream& in);
std::map<std::string, double> load_reference_energies(const std::string& path);

/// Solves one model with the configured solver.
RunResult solve(const EnergyModel& model, const ExperimentConfig& cfg);

/// CSV "step,tau,best_energy,mean_energy[,primal_gap]", one row per step.
/// Throws std::runtime_error when the file cannot be written.
void emit_trajectory(const RunResult& result, const std::string& path,
                     std::optional<double> h_star = std::nullopt);
void write_trajectory(std::ostream& out, const RunResult& result,
                      std::optional<double> h_star = std::nullopt);

std::string solution_string(std::span<const std::uint8_t> x);
Solution parse_solution_string(const std::string& bits);

nlohmann::json result_to_json(const ExperimentConfig& cfg, const Instance& instance,
                              const RunResult& result, std::optional<double> h_star,
                              const std::optional<std::string>& trajectory_path);

/// Recomputes energy, objective and violation from "best_x" and compares
/// them with the stored values. Returns an empty string when consistent,
/// otherwise a description of the first mismatch.
std::string check_result(const nlohmann::json& record, const Graph& graph);

nlohmann::json summary_to_json(const Summary& summary);

struct ExperimentReport {
  std::vector<Instance> instances;
  std::vector<RunResult> results;
  Summary summary;
};

/// Loads or generates the instances, validates the hyperparameters against
/// all of them, then solves sequentially, writing "<name>.json" per instance
/// (plus "<name>.trajectory.csv" when requested) and "summary.json" to
/// cfg.out_dir. Progress lines go to `log`.
ExperimentReport run_experiment(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace rlsa::bench
