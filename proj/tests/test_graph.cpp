#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rlsa/graph.hpp"

using namespace rlsa;

namespace {

void check_canonical(const Graph& g) {
  std::size_t degree_sum = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto nb = g.neighbors(u);
    degree_sum += nb.size();
    for (std::size_t k = 0; k < nb.size(); ++k) {
      CHECK(nb[k] != u);
      if (k > 0) CHECK(nb[k - 1] < nb[k]);
      CHECK(g.has_edge(nb[k], u));
    }
  }
  CHECK(degree_sum == 2 * g.num_edges());
}

bool connected(const Graph& g) {
  std::vector<char> seen(g.num_nodes(), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == g.num_nodes();
}

}  // namespace

TEST_CASE("from_edge_list builds canonical graphs") {
  const std::vector<Edge> tri{{0, 1}, {1, 2}, {0, 2}};
  const Graph k3 = Graph::from_edge_list(3, tri);
  CHECK(k3.num_nodes() == 3);
  CHECK(k3.num_edges() == 3);
  check_canonical(k3);

  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  CHECK(Graph::from_edge_list(2, dup).num_edges() == 1);

  const std::vector<Edge> shuffled{{2, 0}, {1, 0}, {2, 1}, {0, 1}};
  CHECK(Graph::from_edge_list(3, shuffled) == k3);
}

TEST_CASE("from_edge_list rejects self loops and out-of-range nodes") {
  const std::vector<Edge> loop{{0, 0}};
  CHECK_THROWS_WITH_AS(Graph::from_edge_list(3, loop), doctest::Contains("(0, 0)"),
                       std::invalid_argument);
  const std::vector<Edge> far{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edge_list(3, far), std::invalid_argument);
}

TEST_CASE("generate_er boundary probabilities") {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    CHECK(generate_er(2, 1.0, seed).num_edges() == 1);
    CHECK(generate_er(10, 0.0, seed).num_edges() == 0);
    CHECK(generate_er(10, 1.0, seed).num_edges() == 45);
  }
  CHECK_THROWS_AS(generate_er(5, -0.1, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_er(5, 1.5, 0), std::invalid_argument);
}

TEST_CASE("generate_er edge count matches the binomial mean") {
  // 100 instances of G(700, 0.15): expectation 0.15 * 700 * 699 / 2
  const double expected = 0.15 * 700.0 * 699.0 / 2.0;
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    total += static_cast<double>(generate_er(700, 0.15, seed).num_edges());
  }
  const double mean = total / 100.0;
  CHECK(std::abs(mean - expected) / expected < 0.02);
}

TEST_CASE("generators are pure functions of their inputs") {
  CHECK(generate_er(60, 0.2, 5) == generate_er(60, 0.2, 5));
  CHECK_FALSE(generate_er(60, 0.2, 5) == generate_er(60, 0.2, 6));
  CHECK(generate_ba(80, 3, 11) == generate_ba(80, 3, 11));
  CHECK_FALSE(generate_ba(80, 3, 11) == generate_ba(80, 3, 12));

  // Pins the bit-exact random stream (mt19937_64 + splitmix64 seeding):
  // a change here breaks reproducibility of published instances.
  const Graph er = generate_er(12, 0.5, 2024);
  std::uint64_t h = 1469598103934665603ull;
  for (char c : write_instance(er, InstanceFormat::EdgeList)) h = (h ^ std::uint8_t(c)) * 1099511628211ull;
  CHECK(er.num_edges() == 40u);
  CHECK(h == 3844705842669211946ull);
}

TEST_CASE("generate_ba edge counts and structure") {
  const Graph tree = generate_ba(5, 1, 3);
  CHECK(tree.num_edges() == 4);
  CHECK(connected(tree));
  CHECK(generate_ba(2, 1, 0).num_edges() == 1);
  CHECK(generate_ba(300, 4, 7).num_edges() == 1184);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = generate_ba(50 + seed, 1 + seed % 5, seed);
    CHECK(g.num_edges() == (1 + seed % 5) * (50 + seed - (1 + seed % 5)));
    check_canonical(g);
  }
  CHECK_THROWS_AS(generate_ba(5, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_ba(5, 0, 0), std::invalid_argument);
}

TEST_CASE("parse_instance reads DIMACS and edge lists") {
  const Graph k3 = parse_instance("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n",
                                  InstanceFormat::Dimacs);
  const std::vector<Edge> tri{{0, 1}, {1, 2}, {0, 2}};
  CHECK(k3 == Graph::from_edge_list(3, tri));

  const Graph p3 = parse_instance("# path\n3 2\n0 1\n1 2  # second\n", InstanceFormat::EdgeList);
  const std::vector<Edge> path{{0, 1}, {1, 2}};
  CHECK(p3 == Graph::from_edge_list(3, path));
}

TEST_CASE("parse_instance reports the offending line") {
  try {
    parse_instance("p edge 3 1\ne 1 4\n", InstanceFormat::Dimacs);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  try {
    parse_instance("3 2\n0 1\n1 x\n", InstanceFormat::EdgeList);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_instance("3 2\n0 1\n", InstanceFormat::EdgeList), ParseError);
  CHECK_THROWS_AS(parse_instance("3 1\n0 3\n", InstanceFormat::EdgeList), ParseError);
  CHECK_THROWS_AS(parse_instance("e 1 2\n", InstanceFormat::Dimacs), ParseError);
  CHECK_THROWS_AS(parse_instance("p edge 3 1\nx 1 2\n", InstanceFormat::Dimacs), ParseError);
  CHECK_THROWS_AS(parse_instance("p edge 3 1\ne 2 2\n", InstanceFormat::Dimacs), ParseError);
}

TEST_CASE("write_instance output") {
  const std::vector<Edge> tri{{0, 1}, {1, 2}, {0, 2}};
  const Graph k3 = Graph::from_edge_list(3, tri);
  CHECK(write_instance(k3, InstanceFormat::Dimacs) == "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
  const Graph empty = Graph::from_edge_list(4, std::vector<Edge>{});
  CHECK(write_instance(empty, InstanceFormat::Dimacs) == "p edge 4 0\n");
  CHECK(write_instance(empty, InstanceFormat::EdgeList) == "4 0\n");
}

TEST_CASE("parse after write is the identity") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t seed = rng();
    const Graph g = trial % 2 ? generate_ba(20 + trial, 1 + trial % 4, seed)
                              : generate_er(5 + trial, 0.05 * (trial % 10), seed);
    for (auto fmt : {InstanceFormat::EdgeList, InstanceFormat::Dimacs}) {
      const auto text = write_instance(g, fmt);
      CHECK(detect_format(text) == fmt);
      CHECK(parse_instance(text, fmt) == g);
    }
  }
  const Graph ba = generate_ba(50, 2, 1);
  CHECK(parse_instance(write_instance(ba, InstanceFormat::Dimacs), InstanceFormat::Dimacs) == ba);
}

TEST_CASE("random graphs from the test oracle are canonicalized") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto dense = oracle::random_graph(12, 0.4, rng);
    const Graph g = dense.to_graph();
    check_canonical(g);
    CHECK(g.num_edges() == dense.edges.size());
    for (NodeId i = 0; i < 12; ++i)
      for (NodeId j = 0; j < 12; ++j) CHECK(g.has_edge(i, j) == (dense.adj[i][j] == 1));
  }
}
