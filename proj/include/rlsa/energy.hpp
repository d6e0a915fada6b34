#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rlsa/graph.hpp"

namespace rlsa {

/// Binary assignment, one entry in {0, 1} per node.
using Solution = std::vector<std::uint8_t>;

enum class ProblemKind { MIS, MCL, MCUT, QUBO };

ProblemKind parse_problem_kind(const std::string& name);
const char* problem_name(ProblemKind kind) noexcept;

/// Quadratic penalty energy over a shared, immutable graph.
///
///   MIS   H(x) = -1'x + beta x'Ax / 2
///   MCL   H(x) = -1'x + beta ((1'x)^2 - x'x - x'Ax) / 2   (complement graph never built)
///   MCUT  H(x) = x'Ax - 1'Ax
///   QUBO  H(x) = b'x + c x'Wx,  W the (optionally weighted) adjacency
///
/// All four are multilinear in x on {0,1}^N, so the flip-drop vector
/// Delta_i = (2x_i - 1) dH/dx_i equals H(x) - H(x with bit i flipped) exactly.
class EnergyModel {
 public:
  static constexpr double kDefaultBeta = 1.02;

  static EnergyModel mis(std::shared_ptr<const Graph> g, double beta = kDefaultBeta);
  static EnergyModel max_clique(std::shared_ptr<const Graph> g, double beta = kDefaultBeta);
  /// beta is carried for reporting only; the cut energy has no penalty term.
  static EnergyModel max_cut(std::shared_ptr<const Graph> g, double beta = kDefaultBeta);
  /// `weights` is empty (unit weights) or parallel to g->adjacency() and symmetric.
  static EnergyModel qubo(std::shared_ptr<const Graph> g, std::vector<double> linear,
                          double quad_scale, std::vector<double> weights = {});

  /// Builds the model named by `kind`; QUBO gets b = 0, c = 1.
  static EnergyModel make(ProblemKind kind, std::shared_ptr<const Graph> g,
                          double beta = kDefaultBeta);

  ProblemKind kind() const noexcept { return kind_; }
  const Graph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const noexcept { return graph_; }
  std::size_t num_nodes() const noexcept { return graph_->num_nodes(); }
  double beta() const noexcept { return beta_; }
  std::span<const double> linear() const noexcept { return linear_; }
  double quad_scale() const noexcept { return quad_scale_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  EnergyModel(ProblemKind kind, std::shared_ptr<const Graph> g, double beta);

  ProblemKind kind_;
  std::shared_ptr<const Graph> graph_;
  double beta_;
  std::vector<double> linear_;
  double quad_scale_ = 0.0;
  std::vector<double> weights_;
};

/// Energy and gradient from a single sparse matvec.
struct Evaluation {
  double energy = 0.0;
  std::vector<double> gradient;
};

/// Fills `out` in place, reusing its gradient buffer.
void evaluate(const EnergyModel& model, std::span<const std::uint8_t> x, Evaluation& out);
Evaluation evaluate(const EnergyModel& model, std::span<const std::uint8_t> x);

double energy(const EnergyModel& model, std::span<const std::uint8_t> x);
std::vector<double> gradient(const EnergyModel& model, std::span<const std::uint8_t> x);

/// Delta_i = (2 x_i - 1) grad_i, the exact energy drop of flipping bit i.
std::vector<double> delta(const EnergyModel& model, std::span<const std::uint8_t> x);
void delta_from_gradient(std::span<const std::uint8_t> x, std::span<const double> grad,
                         std::span<double> out);

/// Number of violated constraints: adjacent selected pairs (MIS), selected
/// non-adjacent pairs (MCL); always 0 for MCUT and QUBO.
std::uint64_t violation(const EnergyModel& model, std::span<const std::uint8_t> x);

/// Set size (MIS), clique size (MCL) or cut size (MCUT). Throws
/// std::domain_error for an infeasible MIS/MCL solution and for QUBO.
std::int64_t objective(const EnergyModel& model, std::span<const std::uint8_t> x);

}  // namespace rlsa
