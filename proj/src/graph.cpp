#include "rlsa/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string_view>

#include "rlsa/random.hpp"

namespace rlsa {

Graph Graph::from_edge_list(std::size_t n, std::span<const Edge> edges) {
  for (const auto& [u, v] : edges) {
    if (u == v) {
      throw std::invalid_argument("self loop (" + std::to_string(u) + ", " +
                                  std::to_string(v) + ")");
    }
    if (u >= n || v >= n) {
      throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                  ") out of range for " + std::to_string(n) + " nodes");
    }
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];

  std::vector<NodeId> raw(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    raw[cursor[u]++] = v;
    raw[cursor[v]++] = u;
  }

  // sort + dedup each list, then compact
  std::vector<std::size_t> offsets(n + 1, 0);
  g.neighbors_.reserve(raw.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    g.neighbors_.insert(g.neighbors_.end(), first, last);
    offsets[i + 1] = g.neighbors_.size();
  }
  g.offsets_ = std::move(offsets);
  g.neighbors_.shrink_to_fit();
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph generate_er(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  }
  Engine eng = make_engine(seed);
  std::vector<Edge> edges;
  if (n > 1) edges.reserve(static_cast<std::size_t>(p * double(n) * double(n - 1) / 2 * 1.05) + 16);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (uniform01(eng) < p) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edge_list(n, edges);
}

Graph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m >= n) {
    throw std::invalid_argument("Barabasi-Albert requires 1 <= m < n");
  }
  Engine eng = make_engine(seed);
  std::vector<Edge> edges;
  edges.reserve(m * (n - m));
  // one entry per edge endpoint: uniform draws from it are degree-proportional
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * m * (n - m));
  std::vector<NodeId> targets;
  targets.reserve(m);

  for (auto v = static_cast<NodeId>(m); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      NodeId t = endpoints.empty() ? static_cast<NodeId>(uniform_index(eng, v))
                                   : endpoints[uniform_index(eng, endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (NodeId t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edge_list(n, edges);
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

// Strips '#' comments and surrounding blanks.
std::string_view trim(std::string_view s) {
  if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  for (std::string t; is >> t;) out.push_back(std::move(t));
  return out;
}

std::uint64_t to_count(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
  }
  try {
    return std::stoull(tok);
  } catch (const std::out_of_range&) {
    throw ParseError(line, "integer out of range: '" + tok + "'");
  }
}

Graph parse_edge_list(std::istream& in) {
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  std::uint64_t n = 0, m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto tok = tokens(line);
    if (tok.size() != 2) throw ParseError(lineno, "expected two fields");
    const auto a = to_count(tok[0], lineno);
    const auto b = to_count(tok[1], lineno);
    if (!have_header) {
      n = a;
      m = b;
      have_header = true;
      edges.reserve(m);
      continue;
    }
    if (edges.size() == m) throw ParseError(lineno, "more edges than declared");
    if (a >= n || b >= n) throw ParseError(lineno, "node index out of range");
    if (a == b) throw ParseError(lineno, "self loop");
    edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
  }
  if (!have_header) throw ParseError(lineno, "missing 'N M' header");
  if (edges.size() != m) throw ParseError(lineno, "fewer edges than declared");
  return Graph::from_edge_list(n, edges);
}

Graph parse_dimacs(std::istream& in) {
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  std::uint64_t n = 0, m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto tok = tokens(line);
    if (tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate problem line");
      if (tok.size() != 4) throw ParseError(lineno, "expected 'p edge N M'");
      n = to_count(tok[2], lineno);
      m = to_count(tok[3], lineno);
      have_header = true;
      edges.reserve(m);
      continue;
    }
    if (tok[0] == "e") {
      if (!have_header) throw ParseError(lineno, "edge before problem line");
      if (tok.size() != 3) throw ParseError(lineno, "expected 'e u v'");
      const auto a = to_count(tok[1], lineno);
      const auto b = to_count(tok[2], lineno);
      if (a < 1 || b < 1 || a > n || b > n) throw ParseError(lineno, "node index out of range");
      if (a == b) throw ParseError(lineno, "self loop");
      if (edges.size() == m) throw ParseError(lineno, "more edges than declared");
      edges.emplace_back(static_cast<NodeId>(a - 1), static_cast<NodeId>(b - 1));
      continue;
    }
    throw ParseError(lineno, "unrecognized line '" + std::string(line) + "'");
  }
  if (!have_header) throw ParseError(lineno, "missing problem line");
  if (edges.size() != m) throw ParseError(lineno, "fewer edges than declared");
  return Graph::from_edge_list(n, edges);
}

}  // namespace

Graph parse_instance(std::istream& in, InstanceFormat format) {
  return format == InstanceFormat::Dimacs ? parse_dimacs(in) : parse_edge_list(in);
}

Graph parse_instance(const std::string& text, InstanceFormat format) {
  std::istringstream in(text);
  return parse_instance(in, format);
}

void write_instance(std::ostream& out, const Graph& g, InstanceFormat format) {
  const auto edges = g.edges();
  if (format == InstanceFormat::Dimacs) {
    out << "p edge " << g.num_nodes() << ' ' << edges.size() << '\n';
    for (const auto& [u, v] : edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  } else {
    out << g.num_nodes() << ' ' << edges.size() << '\n';
    for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
  }
}

std::string write_instance(const Graph& g, InstanceFormat format) {
  std::ostringstream out;
  write_instance(out, g, format);
  return out.str();
}

InstanceFormat detect_format(const std::string& text) {
  std::istringstream in(text);
  for (std::string raw; std::getline(in, raw);) {
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == 'c' || line[0] == 'p' || line[0] == 'e') return InstanceFormat::Dimacs;
    return InstanceFormat::EdgeList;
  }
  return InstanceFormat::EdgeList;
}

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

Graph load_instance(const std::string& path) {
  const auto text = slurp(path);
  return parse_instance(text, detect_format(text));
}

Graph load_instance(const std::string& path, InstanceFormat format) {
  return parse_instance(slurp(path), format);
}

InstanceFormat parse_format_name(const std::string& name) {
  if (name == "edge-list" || name == "edgelist") return InstanceFormat::EdgeList;
  if (name == "dimacs") return InstanceFormat::Dimacs;
  throw std::invalid_argument("unknown instance format '" + name + "'");
}

const char* format_name(InstanceFormat format) noexcept {
  return format == InstanceFormat::Dimacs ? "dimacs" : "edge-list";
}

}  // namespace rlsa
