#include <doctest.h>

#include <memory>
#include <random>

#include "oracles.hpp"
#include "rlsa/energy.hpp"

using namespace rlsa;

namespace {

std::shared_ptr<const Graph> make_graph(std::size_t n, std::vector<Edge> edges) {
  return std::make_shared<const Graph>(Graph::from_edge_list(n, edges));
}

const auto k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
const auto p3 = make_graph(3, {{0, 1}, {1, 2}});
const auto single_edge = make_graph(2, {{0, 1}});

constexpr double kTol = 1e-9;

void check_vec(const std::vector<double>& got, const std::vector<double>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

EnergyModel model_for(ProblemKind kind, std::shared_ptr<const Graph> g, double beta) {
  return EnergyModel::make(kind, std::move(g), beta);
}

}  // namespace

TEST_CASE("energy on hand-checked inputs") {
  const auto mis = EnergyModel::mis(k3, 1.02);
  CHECK(energy(mis, Solution{0, 0, 0}) == 0.0);
  CHECK(energy(mis, Solution{1, 1, 0}) == doctest::Approx(-0.98));
  CHECK(energy(EnergyModel::max_cut(single_edge), Solution{1, 0}) == -1.0);
  CHECK(energy(EnergyModel::max_clique(p3, 1.02), Solution{1, 0, 1}) == doctest::Approx(-0.98));
  CHECK(energy(EnergyModel::max_clique(k3, 1.02), Solution{1, 1, 1}) == -3.0);
}

TEST_CASE("gradient on hand-checked inputs") {
  check_vec(gradient(EnergyModel::mis(k3, 1.02), Solution{1, 0, 0}), {-1.0, 0.02, 0.02});
  check_vec(gradient(EnergyModel::max_cut(single_edge), Solution{0, 0}), {-1.0, -1.0});
  const auto g = std::make_shared<const Graph>(generate_er(30, 0.3, 4));
  const auto grad = gradient(EnergyModel::mis(g), Solution(30, 0));
  for (double v : grad) CHECK(v == -1.0);
}

TEST_CASE("delta on hand-checked inputs") {
  check_vec(delta(EnergyModel::mis(k3, 1.02), Solution{1, 0, 0}), {-1.0, -0.02, -0.02});
  // cutting edge: flipping either endpoint raises H from -1 to 0
  check_vec(delta(EnergyModel::max_cut(single_edge), Solution{1, 0}), {-1.0, -1.0});
  check_vec(delta(EnergyModel::max_cut(single_edge), Solution{0, 0}), {1.0, 1.0});
}

TEST_CASE("objective and violation") {
  CHECK(objective(EnergyModel::mis(k3), Solution{1, 0, 0}) == 1);
  CHECK(objective(EnergyModel::max_cut(single_edge), Solution{1, 0}) == 1);
  CHECK(objective(EnergyModel::max_cut(k3), Solution{1, 1, 0}) == 2);
  CHECK(objective(EnergyModel::max_clique(k3), Solution{1, 1, 1}) == 3);

  CHECK(violation(EnergyModel::mis(k3), Solution{1, 1, 1}) == 3);
  CHECK(violation(EnergyModel::max_clique(k3), Solution{1, 1, 1}) == 0);
  CHECK(violation(EnergyModel::max_clique(p3), Solution{1, 0, 1}) == 1);
  CHECK(violation(EnergyModel::max_clique(p3), Solution{0, 0, 0}) == 0);
  CHECK(violation(EnergyModel::max_cut(k3), Solution{1, 1, 1}) == 0);

  CHECK_THROWS_AS(objective(EnergyModel::mis(k3), Solution{1, 1, 0}), std::domain_error);
  const auto q = EnergyModel::qubo(k3, {0, 0, 0}, 1.0);
  CHECK_THROWS_AS(objective(q, Solution{1, 0, 0}), std::domain_error);
  CHECK(violation(q, Solution{1, 1, 1}) == 0);
}

TEST_CASE("model construction errors") {
  CHECK_THROWS_AS(EnergyModel::mis(k3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(EnergyModel::max_clique(k3, 0.5), std::invalid_argument);
  CHECK_NOTHROW(EnergyModel::max_cut(k3, 1.02));
  CHECK_THROWS_AS(EnergyModel::qubo(k3, {1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(EnergyModel::qubo(k3, {0, 0, 0}, 1.0, {1, 2, 3}), std::invalid_argument);
  // adjacency of k3 is 0:[1,2] 1:[0,2] 2:[0,1]; w(0,1)=2 but w(1,0)=1
  CHECK_THROWS_AS(EnergyModel::qubo(k3, {0, 0, 0}, 1.0, {2, 1, 1, 1, 1, 1}), std::invalid_argument);
  CHECK_NOTHROW(EnergyModel::qubo(k3, {0, 0, 0}, 1.0, {2, 3, 2, 4, 3, 4}));
}

TEST_CASE("length mismatch is rejected") {
  const auto mis = EnergyModel::mis(k3);
  CHECK_THROWS_AS(energy(mis, Solution{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(gradient(mis, Solution{1, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(delta(mis, Solution{}), std::invalid_argument);
  CHECK_THROWS_AS(violation(mis, Solution{1}), std::invalid_argument);
}

TEST_CASE("delta is the exact single-flip energy drop") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 11;
    const auto dense = oracle::random_graph(n, 0.2 + 0.05 * (trial % 8), rng);
    const auto g = std::make_shared<const Graph>(dense.to_graph());
    for (auto kind : {ProblemKind::MIS, ProblemKind::MCL, ProblemKind::MCUT}) {
      const auto model = model_for(kind, g, trial % 2 ? 1.02 : 1.001);
      for (int s = 0; s < 20; ++s) {
        auto x = oracle::random_solution(n, rng);
        const auto d = delta(model, x);
        const double h = oracle::energy(kind, dense, model.beta(), x);
        for (std::size_t i = 0; i < n; ++i) {
          x[i] ^= 1;
          const double flipped = oracle::energy(kind, dense, model.beta(), x);
          x[i] ^= 1;
          CHECK(std::abs(d[i] - (h - flipped)) < kTol);
        }
      }
    }
  }
}

TEST_CASE("sparse energy and gradient agree with dense evaluation") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const auto dense = oracle::random_graph(n, 0.35, rng);
    const auto g = std::make_shared<const Graph>(dense.to_graph());
    for (auto kind : {ProblemKind::MIS, ProblemKind::MCL, ProblemKind::MCUT}) {
      const auto model = model_for(kind, g, 1.02);
      for (int s = 0; s < 10; ++s) {
        const auto x = oracle::random_solution(n, rng);
        // MCL: pairwise sum over non-edges vs the complement-free closed form
        CHECK(std::abs(energy(model, x) - oracle::energy(kind, dense, 1.02, x)) < kTol);
        const auto sparse = gradient(model, x);
        const auto ref = oracle::gradient(kind, dense, 1.02, x);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(sparse[i] - ref[i]) < kTol);
      }
    }
  }
}

TEST_CASE("weighted qubo matches the dense quadratic form") {
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 10;
    const auto dense = oracle::random_graph(n, 0.5, rng);
    const auto g = std::make_shared<const Graph>(dense.to_graph());
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (auto [u, v] : dense.edges) w[u][v] = w[v][u] = unif(rng);
    std::vector<double> weights;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v : g->neighbors(u)) weights.push_back(w[u][v]);
    std::vector<double> b(n);
    for (auto& bi : b) bi = unif(rng);
    const double c = unif(rng);
    const auto model = EnergyModel::qubo(g, b, c, weights);
    for (int s = 0; s < 10; ++s) {
      auto x = oracle::random_solution(n, rng);
      const double h = oracle::qubo_energy(b, c, w, x);
      CHECK(std::abs(energy(model, x) - h) < kTol);
      const auto d = delta(model, x);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] ^= 1;
        const double flipped = oracle::qubo_energy(b, c, w, x);
        x[i] ^= 1;
        CHECK(std::abs(d[i] - (h - flipped)) < kTol);
      }
    }
  }
}

TEST_CASE("mis and max-cut are qubo instances") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 10;
    const auto dense = oracle::random_graph(n, 0.4, rng);
    const auto g = std::make_shared<const Graph>(dense.to_graph());
    const double beta = 1.02;
    const auto mis = EnergyModel::mis(g, beta);
    const auto mis_q = EnergyModel::qubo(g, std::vector<double>(n, -1.0), beta / 2);
    std::vector<double> minus_deg(n);
    for (NodeId i = 0; i < n; ++i) minus_deg[i] = -static_cast<double>(g->degree(i));
    const auto cut = EnergyModel::max_cut(g);
    const auto cut_q = EnergyModel::qubo(g, minus_deg, 1.0);
    for (int s = 0; s < 10; ++s) {
      const auto x = oracle::random_solution(n, rng);
      CHECK(std::abs(energy(mis, x) - energy(mis_q, x)) < kTol);
      CHECK(std::abs(energy(cut, x) - energy(cut_q, x)) < kTol);
      const auto a = gradient(mis, x), b = gradient(mis_q, x);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) < kTol);
    }
  }
}

TEST_CASE("feasible solutions have energy equal to minus the objective") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const auto dense = oracle::random_graph(n, 0.5, rng);
    const auto g = std::make_shared<const Graph>(dense.to_graph());
    for (auto kind : {ProblemKind::MIS, ProblemKind::MCL, ProblemKind::MCUT}) {
      const auto model = model_for(kind, g, 1.02);
      for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
        const auto x = oracle::bits(mask, n);
        const auto v = violation(model, x);
        CHECK(v == oracle::violation(kind, dense, x));
        if (v == 0) CHECK(energy(model, x) == doctest::Approx(-double(objective(model, x))));
      }
    }
  }
}

TEST_CASE("local optima of the penalty energy are feasible") {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 4 + trial % 7;  // up to 10 nodes
    const auto dense = oracle::random_graph(n, 0.2 + 0.06 * trial, rng);
    const auto g = std::make_shared<const Graph>(dense.to_graph());
    for (auto kind : {ProblemKind::MIS, ProblemKind::MCL}) {
      for (double beta : {1.001, 1.02, 2.0}) {
        const auto model = model_for(kind, g, beta);
        for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
          const auto x = oracle::bits(mask, n);
          const auto d = delta(model, x);
          if (*std::max_element(d.begin(), d.end()) < 0.0) CHECK(violation(model, x) == 0);
        }
      }
    }
  }
}
