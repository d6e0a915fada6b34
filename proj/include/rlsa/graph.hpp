#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rlsa {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph in canonical CSR form.
///
/// Every edge {u, v} is stored once in the neighbor list of u and once in
/// that of v; neighbor lists are sorted ascending and free of duplicates and
/// self loops. Two graphs with the same node count and edge set therefore
/// compare equal member-wise. Instances are immutable once built.
class Graph {
 public:
  Graph() : offsets_{0} {}

  /// Builds the canonical graph on `n` nodes from unordered pairs.
  /// Duplicate pairs (in either orientation) collapse into one edge.
  /// Throws std::invalid_argument on a self loop or an out-of-range index.
  static Graph from_edge_list(std::size_t n, std::span<const Edge> edges);

  std::size_t num_nodes() const noexcept { return offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const noexcept {
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }
  bool has_edge(NodeId u, NodeId v) const noexcept;

  /// Raw CSR arrays: offsets has num_nodes()+1 entries, adjacency 2|E|.
  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> adjacency() const noexcept { return neighbors_; }

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
};

/// Erdős-Rényi G(n, p). Pairs (i, j), i < j, are visited in lexicographic
/// order and each consumes exactly one uniform variate.
Graph generate_er(std::size_t n, double p, std::uint64_t seed);

/// Barabási-Albert preferential attachment starting from m isolated nodes.
/// Each new node attaches to m distinct existing nodes, so |E| = m (n - m).
Graph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed);

enum class InstanceFormat { EdgeList, Dimacs };

/// Raised for malformed instance text; line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

Graph parse_instance(std::istream& in, InstanceFormat format);
Graph parse_instance(const std::string& text, InstanceFormat format);
void write_instance(std::ostream& out, const Graph& g, InstanceFormat format);
std::string write_instance(const Graph& g, InstanceFormat format);

/// Guesses the format from the first non-comment line ("p ..." means DIMACS).
InstanceFormat detect_format(const std::string& text);

/// Reads a file, detecting the format unless one is given.
Graph load_instance(const std::string& path);
Graph load_instance(const std::string& path, InstanceFormat format);

InstanceFormat parse_format_name(const std::string& name);
const char* format_name(InstanceFormat format) noexcept;

}  // namespace rlsa
