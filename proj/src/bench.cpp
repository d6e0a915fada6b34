#include "rlsa/bench.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rlsa/random.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace rlsa::bench {

SolverKind parse_solver(const std::string& name) {
  if (name == "rlsa") return SolverKind::RLSA;
  if (name == "ld") return SolverKind::LD;
  throw std::invalid_argument("unknown solver '" + name + "' (expected rlsa or ld)");
}

const char* solver_name(SolverKind solver) noexcept {
  return solver == SolverKind::LD ? "ld" : "rlsa";
}

namespace {

// name, problem, tau0, d, chains K, steps T, beta
constexpr std::array<Preset, 8> kPresets{{
    {"mis-rb-small", ProblemKind::MIS, 0.01, 5, 200, 300, 1.02},
    {"mis-rb-large", ProblemKind::MIS, 0.01, 5, 200, 500, 1.02},
    {"mis-er-small", ProblemKind::MIS, 0.01, 20, 200, 500, 1.001},
    {"mis-er-large", ProblemKind::MIS, 0.01, 20, 200, 5000, 1.001},
    {"mcl-rb-small", ProblemKind::MCL, 4.0, 2, 200, 100, 1.02},
    {"mcl-rb-large", ProblemKind::MCL, 4.0, 2, 200, 500, 1.02},
    {"mcut-ba-small", ProblemKind::MCUT, 5.0, 20, 200, 200, 1.02},
    {"mcut-ba-large", ProblemKind::MCUT, 5.0, 20, 200, 500, 1.02},
}};

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::size_t parse_size(const std::string& s, const std::string& what) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw std::invalid_argument("invalid " + what + " '" + s + "'");
  }
  return v;
}

double parse_real(const std::string& s, const std::string& what) {
  double v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw std::invalid_argument("invalid " + what + " '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

}  // namespace

std::span<const Preset> presets() noexcept { return kPresets; }

const Preset& find_preset(const std::string& name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return p;
  }
  std::string known;
  for (const auto& p : kPresets) known += std::string(known.empty() ? "" : ", ") + p.name;
  throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ")");
}

GeneratorSpec GeneratorSpec::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw std::invalid_argument("generator spec must be er:N:P or ba:N:M");
  GeneratorSpec g;
  if (parts[0] == "er") {
    g.family = Family::ER;
  } else if (parts[0] == "ba") {
    g.family = Family::BA;
  } else {
    throw std::invalid_argument("unknown generator family '" + parts[0] + "'");
  }
  if (auto dash = parts[1].find('-'); dash != std::string::npos) {
    g.min_nodes = parse_size(parts[1].substr(0, dash), "node count");
    g.max_nodes = parse_size(parts[1].substr(dash + 1), "node count");
  } else {
    g.min_nodes = g.max_nodes = parse_size(parts[1], "node count");
  }
  if (g.min_nodes > g.max_nodes) throw std::invalid_argument("empty node-count range");
  if (g.family == Family::ER) {
    g.p = parse_real(parts[2], "edge probability");
    if (!(g.p >= 0.0 && g.p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  } else {
    g.m = parse_size(parts[2], "attachment count");
    if (g.m < 1 || g.m >= g.min_nodes) throw std::invalid_argument("ba requires 1 <= m < N");
  }
  return g;
}

std::string GeneratorSpec::label() const {
  std::string nodes = std::to_string(min_nodes);
  if (max_nodes != min_nodes) nodes += "-" + std::to_string(max_nodes);
  if (family == Family::ER) return "er_n" + nodes + "_p" + format_double(p);
  return "ba_n" + nodes + "_m" + std::to_string(m);
}

void ExperimentConfig::apply(const Preset& p) {
  preset = p.name;
  problem = p.problem;
  sampler.tau0 = p.tau0;
  sampler.d = p.d;
  sampler.chains = p.chains;
  sampler.steps = p.steps;
  beta = p.beta;
}

void ExperimentConfig::validate() const {
  if (instance_path.has_value() == generator.has_value()) {
    throw std::invalid_argument("exactly one of an instance path and a generator is required");
  }
  if (solver == SolverKind::RLSA) {
    sampler.validate();
  } else {
    ld_config().validate();
  }
  if ((problem == ProblemKind::MIS || problem == ProblemKind::MCL) && !(beta > 1.0)) {
    throw std::invalid_argument("beta must exceed 1 for mis/mcl");
  }
  if (problem == ProblemKind::MCUT && !(beta > 0.0)) {
    throw std::invalid_argument("beta must be positive");
  }
}

LDConfig ExperimentConfig::ld_config() const {
  LDConfig c;
  c.alpha = alpha;
  c.tau0 = sampler.tau0;
  c.steps = sampler.steps;
  c.chains = sampler.chains;
  c.seed = sampler.seed;
  c.threads = sampler.threads;
  return c;
}

std::vector<Instance> load_instances(const ExperimentConfig& cfg) {
  std::vector<Instance> out;
  if (cfg.generator) {
    const auto& g = *cfg.generator;
    for (std::size_t i = 0; i < g.count; ++i) {
      const std::uint64_t seed = derive_seed(cfg.sampler.seed, i);
      Engine eng = make_engine(seed);
      const std::size_t n = g.min_nodes + uniform_index(eng, g.max_nodes - g.min_nodes + 1);
      Graph graph = g.family == GeneratorSpec::Family::ER ? generate_er(n, g.p, seed)
                                                          : generate_ba(n, g.m, seed);
      std::ostringstream name;
      name << g.label() << '_' << std::setw(4) << std::setfill('0') << i;
      out.push_back({name.str(), std::make_shared<const Graph>(std::move(graph))});
    }
    return out;
  }

  const fs::path path(*cfg.instance_path);
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("no instance files in '" + path.string() + "'");
  } else if (fs::is_regular_file(path)) {
    files.push_back(path);
  } else {
    throw std::runtime_error("cannot read instance '" + path.string() + "'");
  }
  for (const auto& f : files) {
    Graph graph;
    try {
      graph = cfg.format ? load_instance(f.string(), *cfg.format) : load_instance(f.string());
    } catch (const ParseError& e) {
      throw std::runtime_error(f.string() + ": " + e.what());
    }
    out.push_back({f.stem().string(), std::make_shared<const Graph>(std::move(graph))});
  }
  return out;
}

std::map<std::string, double> parse_reference_energies(std::istream& in) {
  std::map<std::string, double> refs;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream line(raw);
    std::string name, value, extra;
    if (!(line >> name)) continue;
    if (!(line >> value) || (line >> extra)) {
      throw ParseError(lineno, "expected 'instance_name energy'");
    }
    try {
      refs[name] = parse_real(value, "energy");
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return refs;
}

std::map<std::string, double> load_reference_energies(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference file '" + path + "'");
  return parse_reference_energies(in);
}

RunResult solve(const EnergyModel& model, const ExperimentConfig& cfg) {
  if (cfg.solver == SolverKind::LD) return run_ld(model, cfg.ld_config());
  return run_rlsa(model, cfg.sampler);
}

void write_trajectory(std::ostream& out, const RunResult& result, std::optional<double> h_star) {
  out << "step,tau,best_energy,mean_energy";
  if (h_star) out << ",primal_gap";
  out << '\n';
  for (const auto& rec : result.trajectory) {
    out << rec.step << ',' << format_double(rec.tau) << ',' << format_double(rec.best_energy)
        << ',' << format_double(rec.mean_energy);
    if (h_star) out << ',' << format_double(primal_gap(rec.best_energy, *h_star));
    out << '\n';
  }
}

void emit_trajectory(const RunResult& result, const std::string& path,
                     std::optional<double> h_star) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trajectory '" + path + "'");
  write_trajectory(out, result, h_star);
  out.flush();
  if (!out) throw std::runtime_error("failed writing trajectory '" + path + "'");
}

std::string solution_string(std::span<const std::uint8_t> x) {
  std::string s(x.size(), '0');
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) s[i] = '1';
  }
  return s;
}

Solution parse_solution_string(const std::string& bits) {
  Solution x(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("solution must be a 0/1 string");
    x[i] = bits[i] == '1';
  }
  return x;
}

json result_to_json(const ExperimentConfig& cfg, const Instance& instance,
                    const RunResult& result, std::optional<double> h_star,
                    const std::optional<std::string>& trajectory_path) {
  json config = {
      {"tau0", cfg.sampler.tau0},
      {"steps", cfg.sampler.steps},
      {"chains", cfg.sampler.chains},
      {"beta", cfg.beta},
  };
  if (cfg.solver == SolverKind::RLSA) {
    config["d"] = cfg.sampler.d;
    config["epsilon"] = cfg.sampler.epsilon;
    config["kernel"] = kernel_name(cfg.sampler.kernel);
  } else {
    config["alpha"] = cfg.alpha;
  }
  if (cfg.preset) config["preset"] = *cfg.preset;

  json j = {
      {"problem", problem_name(cfg.problem)},
      {"instance", instance.name},
      {"num_nodes", instance.graph->num_nodes()},
      {"num_edges", instance.graph->num_edges()},
      {"solver", solver_name(cfg.solver)},
      {"config", config},
      {"seed", cfg.sampler.seed},
      {"best_energy", result.best_energy},
      {"objective", result.objective ? json(*result.objective) : json(nullptr)},
      {"violation", result.violation},
      {"wall_time_s", result.wall_time_s},
      {"trajectory_path", trajectory_path ? json(*trajectory_path) : json(nullptr)},
      {"best_x", solution_string(result.best_x)},
  };
  if (h_star) {
    j["reference_energy"] = *h_star;
    j["primal_gap"] = primal_gap(result.best_energy, *h_star);
  }
  return j;
}

std::string check_result(const json& record, const Graph& graph) {
  try {
    const auto x = parse_solution_string(record.at("best_x").get<std::string>());
    if (x.size() != graph.num_nodes()) return "best_x length does not match the instance";
    auto g = std::make_shared<const Graph>(graph);
    const auto kind = parse_problem_kind(record.at("problem").get<std::string>());
    const double beta = record.at("config").at("beta").get<double>();
    const EnergyModel model = EnergyModel::make(kind, g, beta);

    const auto v = violation(model, x);
    if (v != record.at("violation").get<std::uint64_t>()) return "violation mismatch";
    const auto& stored = record.at("objective");
    if (kind == ProblemKind::MCUT || (kind != ProblemKind::QUBO && v == 0)) {
      if (stored.is_null() || stored.get<std::int64_t>() != objective(model, x)) {
        return "objective mismatch";
      }
    } else if (!stored.is_null()) {
      return "objective present for a solution without one";
    }
    if (energy(model, x) != record.at("best_energy").get<double>()) {
      return "best_energy mismatch";
    }
  } catch (const std::exception& e) {
    return std::string("malformed result record: ") + e.what();
  }
  return {};
}

json summary_to_json(const Summary& s) {
  json j = {
      {"instances", s.instances},
      {"with_objective", s.with_objective},
      {"mean_objective", s.mean_objective},
      {"min_objective", s.min_objective},
      {"max_objective", s.max_objective},
      {"mean_best_energy", s.mean_best_energy},
      {"total_wall_time_s", s.total_wall_time_s},
      {"with_reference", s.with_reference},
  };
  j["mean_primal_gap"] = s.mean_primal_gap ? json(*s.mean_primal_gap) : json(nullptr);
  return j;
}

namespace {

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::optional<double> reference_for(const std::map<std::string, double>& refs,
                                    const std::string& name) {
  if (auto it = refs.find(name); it != refs.end()) return it->second;
  return std::nullopt;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  ExperimentReport report;
  report.instances = load_instances(cfg);
  const auto refs = cfg.reference_path ? load_reference_energies(*cfg.reference_path)
                                       : std::map<std::string, double>{};

  // every hyperparameter is checked against every instance before any solve
  std::vector<EnergyModel> models;
  models.reserve(report.instances.size());
  for (const auto& inst : report.instances) {
    const auto n = inst.graph->num_nodes();
    if (cfg.solver == SolverKind::RLSA && n > 0 && cfg.sampler.d > n) {
      throw std::invalid_argument("d = " + std::to_string(cfg.sampler.d) + " exceeds the " +
                                  std::to_string(n) + " nodes of instance '" + inst.name + "'");
    }
    models.push_back(EnergyModel::make(cfg.problem, inst.graph, cfg.beta));
  }

  const fs::path out_dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + cfg.out_dir + "'");
  if (cfg.save_instances_dir) {
    fs::create_directories(*cfg.save_instances_dir, ec);
    for (const auto& inst : report.instances) {
      const auto path = fs::path(*cfg.save_instances_dir) / (inst.name + ".dimacs");
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
      write_instance(out, *inst.graph, InstanceFormat::Dimacs);
    }
  }

  std::vector<std::optional<double>> instance_refs;
  for (std::size_t i = 0; i < report.instances.size(); ++i) {
    const auto& inst = report.instances[i];
    RunResult result = solve(models[i], cfg);
    const auto h_star = reference_for(refs, inst.name);
    instance_refs.push_back(h_star);

    std::optional<std::string> traj_name;
    if (cfg.trajectory) {
      traj_name = inst.name + ".trajectory.csv";
      emit_trajectory(result, (out_dir / *traj_name).string(), h_star);
    }
    write_json(out_dir / (inst.name + ".json"), result_to_json(cfg, inst, result, h_star, traj_name));

    log << inst.name << ": N=" << inst.graph->num_nodes() << " |E|=" << inst.graph->num_edges()
        << " energy=" << format_double(result.best_energy) << " objective="
        << (result.objective ? std::to_string(*result.objective) : std::string("-"))
        << " violation=" << result.violation << " time=" << result.wall_time_s << "s\n";
    report.results.push_back(std::move(result));
  }

  report.summary = summarize(report.results, instance_refs);
  json summary = summary_to_json(report.summary);
  summary["problem"] = problem_name(cfg.problem);
  summary["solver"] = solver_name(cfg.solver);
  json per_instance = json::array();
  for (std::size_t i = 0; i < report.results.size(); ++i) {
    const auto& r = report.results[i];
    per_instance.push_back({{"instance", report.instances[i].name},
                            {"best_energy", r.best_energy},
                            {"objective", r.objective ? json(*r.objective) : json(nullptr)},
                            {"wall_time_s", r.wall_time_s}});
  }
  summary["results"] = per_instance;
  write_json(out_dir / "summary.json", summary);
  return report;
}

}  // namespace rlsa::bench
