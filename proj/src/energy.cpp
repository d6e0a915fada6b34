#include "rlsa/energy.hpp"

#include <algorithm>
#include <stdexcept>

namespace rlsa {

ProblemKind parse_problem_kind(const std::string& name) {
  if (name == "mis") return ProblemKind::MIS;
  if (name == "mcl") return ProblemKind::MCL;
  if (name == "mcut") return ProblemKind::MCUT;
  if (name == "qubo") return ProblemKind::QUBO;
  throw std::invalid_argument("unknown problem '" + name + "' (expected mis, mcl, mcut or qubo)");
}

const char* problem_name(ProblemKind kind) noexcept {
  switch (kind) {
    case ProblemKind::MIS: return "mis";
    case ProblemKind::MCL: return "mcl";
    case ProblemKind::MCUT: return "mcut";
    case ProblemKind::QUBO: return "qubo";
  }
  return "?";
}

EnergyModel::EnergyModel(ProblemKind kind, std::shared_ptr<const Graph> g, double beta)
    : kind_(kind), graph_(std::move(g)), beta_(beta) {
  if (!graph_) throw std::invalid_argument("energy model needs a graph");
  if ((kind == ProblemKind::MIS || kind == ProblemKind::MCL) && !(beta > 1.0)) {
    // beta <= 1 admits infeasible local optima
    throw std::invalid_argument("penalty coefficient beta must exceed 1 for mis/mcl");
  }
  if (kind == ProblemKind::MCUT && !(beta > 0.0)) {
    throw std::invalid_argument("penalty coefficient beta must be positive");
  }
}

EnergyModel EnergyModel::mis(std::shared_ptr<const Graph> g, double beta) {
  return EnergyModel(ProblemKind::MIS, std::move(g), beta);
}

EnergyModel EnergyModel::max_clique(std::shared_ptr<const Graph> g, double beta) {
  return EnergyModel(ProblemKind::MCL, std::move(g), beta);
}

EnergyModel EnergyModel::max_cut(std::shared_ptr<const Graph> g, double beta) {
  return EnergyModel(ProblemKind::MCUT, std::move(g), beta);
}

EnergyModel EnergyModel::qubo(std::shared_ptr<const Graph> g, std::vector<double> linear,
                              double quad_scale, std::vector<double> weights) {
  EnergyModel m(ProblemKind::QUBO, std::move(g), 0.0);
  const Graph& graph = *m.graph_;
  if (linear.size() != graph.num_nodes()) {
    throw std::invalid_argument("linear term length must equal the node count");
  }
  if (!weights.empty()) {
    if (weights.size() != graph.adjacency().size()) {
      throw std::invalid_argument("edge weights must be parallel to the adjacency array");
    }
    const auto off = graph.offsets();
    const auto adj = graph.adjacency();
    for (NodeId u = 0; u < graph.num_nodes(); ++u) {
      for (std::size_t k = off[u]; k < off[u + 1]; ++k) {
        const NodeId v = adj[k];
        const auto nb = graph.neighbors(v);
        const auto pos = off[v] + static_cast<std::size_t>(
                                      std::lower_bound(nb.begin(), nb.end(), u) - nb.begin());
        if (weights[pos] != weights[k]) {
          throw std::invalid_argument("edge weights must be symmetric");
        }
      }
    }
  }
  m.linear_ = std::move(linear);
  m.quad_scale_ = quad_scale;
  m.weights_ = std::move(weights);
  return m;
}

EnergyModel EnergyModel::make(ProblemKind kind, std::shared_ptr<const Graph> g, double beta) {
  switch (kind) {
    case ProblemKind::MIS: return mis(std::move(g), beta);
    case ProblemKind::MCL: return max_clique(std::move(g), beta);
    case ProblemKind::MCUT: return max_cut(std::move(g), beta);
    case ProblemKind::QUBO: {
      const auto n = g->num_nodes();
      return qubo(std::move(g), std::vector<double>(n, 0.0), 1.0);
    }
  }
  throw std::invalid_argument("unknown problem kind");
}

namespace {

void check_length(const EnergyModel& model, std::span<const std::uint8_t> x) {
  if (x.size() != model.num_nodes()) {
    throw std::invalid_argument("solution length " + std::to_string(x.size()) +
                                " does not match node count " +
                                std::to_string(model.num_nodes()));
  }
}

}  // namespace

void evaluate(const EnergyModel& model, std::span<const std::uint8_t> x, Evaluation& out) {
  check_length(model, x);
  const Graph& g = model.graph();
  const auto off = g.offsets();
  const auto adj = g.adjacency();
  const std::size_t n = g.num_nodes();
  auto& grad = out.gradient;
  grad.resize(n);

  // grad <- A x (weighted for QUBO); xAx accumulated alongside
  const auto w = model.weights();
  double xax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    if (w.empty()) {
      for (std::size_t k = off[i]; k < off[i + 1]; ++k) s += x[adj[k]];
    } else {
      for (std::size_t k = off[i]; k < off[i + 1]; ++k) s += w[k] * x[adj[k]];
    }
    grad[i] = s;
    xax += x[i] * s;
  }

  const double beta = model.beta();
  double e = 0.0;
  switch (model.kind()) {
    case ProblemKind::MIS: {
      double ones = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        ones += x[i];
        grad[i] = -1.0 + beta * grad[i];
      }
      e = -ones + beta * xax / 2.0;
      break;
    }
    case ProblemKind::MCL: {
      double ones = 0.0, xx = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        ones += x[i];
        xx += x[i] * x[i];
      }
      for (std::size_t i = 0; i < n; ++i) grad[i] = -1.0 + beta * (ones - x[i] - grad[i]);
      e = -ones + beta * (ones * ones - xx - xax) / 2.0;
      break;
    }
    case ProblemKind::MCUT: {
      // 1'Ax = sum_i deg(i) x_i
      double one_ax = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto deg = static_cast<double>(off[i + 1] - off[i]);
        one_ax += deg * x[i];
        grad[i] = 2.0 * grad[i] - deg;
      }
      e = xax - one_ax;
      break;
    }
    case ProblemKind::QUBO: {
      const auto b = model.linear();
      const double c = model.quad_scale();
      double bx = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        bx += b[i] * x[i];
        grad[i] = 2.0 * c * grad[i] + b[i];
      }
      e = bx + c * xax;
      break;
    }
  }
  out.energy = e;
}

Evaluation evaluate(const EnergyModel& model, std::span<const std::uint8_t> x) {
  Evaluation ev;
  evaluate(model, x, ev);
  return ev;
}

double energy(const EnergyModel& model, std::span<const std::uint8_t> x) {
  return evaluate(model, x).energy;
}

std::vector<double> gradient(const EnergyModel& model, std::span<const std::uint8_t> x) {
  return std::move(evaluate(model, x).gradient);
}

void delta_from_gradient(std::span<const std::uint8_t> x, std::span<const double> grad,
                         std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] ? grad[i] : -grad[i];
}

std::vector<double> delta(const EnergyModel& model, std::span<const std::uint8_t> x) {
  auto d = gradient(model, x);
  delta_from_gradient(x, d, d);
  return d;
}

namespace {

std::uint64_t selected_edges(const Graph& g, std::span<const std::uint8_t> x) {
  std::uint64_t count = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (!x[u]) continue;
    for (NodeId v : g.neighbors(u)) {
      if (u < v && x[v]) ++count;
    }
  }
  return count;
}

}  // namespace

std::uint64_t violation(const EnergyModel& model, std::span<const std::uint8_t> x) {
  check_length(model, x);
  switch (model.kind()) {
    case ProblemKind::MIS:
      return selected_edges(model.graph(), x);
    case ProblemKind::MCL: {
      std::uint64_t s = 0;
      for (auto v : x) s += v;
      return s * (s - (s > 0 ? 1 : 0)) / 2 - selected_edges(model.graph(), x);
    }
    case ProblemKind::MCUT:
    case ProblemKind::QUBO:
      return 0;
  }
  return 0;
}

std::int64_t objective(const EnergyModel& model, std::span<const std::uint8_t> x) {
  check_length(model, x);
  switch (model.kind()) {
    case ProblemKind::MIS:
    case ProblemKind::MCL: {
      if (violation(model, x) != 0) {
        throw std::domain_error(std::string("infeasible ") + problem_name(model.kind()) +
                                " solution has no objective");
      }
      std::int64_t s = 0;
      for (auto v : x) s += v;
      return s;
    }
    case ProblemKind::MCUT: {
      const Graph& g = model.graph();
      std::int64_t cut = 0;
      for (NodeId u = 0; u < g.num_nodes(); ++u) {
        for (NodeId v : g.neighbors(u)) {
          if (u < v && x[u] != x[v]) ++cut;
        }
      }
      return cut;
    }
    case ProblemKind::QUBO:
      break;
  }
  throw std::domain_error("qubo models have no canonical objective");
}

}  // namespace rlsa
