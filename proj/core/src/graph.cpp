#include "mianneal/graph.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace mianneal {

ProblemGraph::ProblemGraph(std::string name, std::size_t n_nodes, std::vector<Edge> edges)
    : name_(std::move(name)), edges_(std::move(edges)), adjacency_(n_nodes) {
  if (n_nodes == 0) throw std::invalid_argument("graph must have at least one node");
  std::set<std::pair<NodeIndex, NodeIndex>> seen;
  for (auto& e : edges_) {
    if (e.u >= n_nodes || e.v >= n_nodes) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
    if (e.w == 0) throw std::invalid_argument("zero edge weight");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(e.u, e.v).second)
      throw std::invalid_argument("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    adjacency_[e.u].push_back({e.v, e.w});
    adjacency_[e.v].push_back({e.u, e.w});
    total_weight_ += e.w;
  }
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::int64_t parse_int(std::string_view token, std::size_t line) {
  std::int64_t value = 0;
  const char* first = token.data();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw GraphParseError(line, "expected integer, got '" + std::string(token) + "'");
  return value;
}

}  // namespace

ProblemGraph parse_gset(std::istream& in, std::string name) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::pair<std::int64_t, std::int64_t>> header;
  std::vector<Edge> edges;
  std::set<std::pair<NodeIndex, NodeIndex>> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = tokenize(raw);
    if (tokens.empty()) continue;
    if (!header) {
      if (tokens.size() != 2) throw GraphParseError(line_no, "header must be 'n_nodes n_edges'");
      const auto n = parse_int(tokens[0], line_no);
      const auto m = parse_int(tokens[1], line_no);
      if (n <= 0 || m < 0) throw GraphParseError(line_no, "header counts out of range");
      if (n > std::int64_t{1} << 31) throw GraphParseError(line_no, "node count too large");
      header.emplace(n, m);
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    if (tokens.size() != 3) throw GraphParseError(line_no, "edge line must be 'u v w'");
    const auto n = header->first;
    const auto u = parse_int(tokens[0], line_no);
    const auto v = parse_int(tokens[1], line_no);
    const auto w = parse_int(tokens[2], line_no);
    if (u < 1 || u > n || v < 1 || v > n)
      throw GraphParseError(line_no, "node index out of range [1, " + std::to_string(n) + "]");
    if (u == v) throw GraphParseError(line_no, "self-loop at node " + std::to_string(u));
    if (w == 0) throw GraphParseError(line_no, "zero edge weight");
    if (w < std::numeric_limits<Weight>::min() || w > std::numeric_limits<Weight>::max())
      throw GraphParseError(line_no, "edge weight out of range");
    auto a = static_cast<NodeIndex>(std::min(u, v) - 1);
    auto b = static_cast<NodeIndex>(std::max(u, v) - 1);
    if (!seen.emplace(a, b).second)
      throw GraphParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    edges.push_back({a, b, static_cast<Weight>(w)});
  }
  if (!header) throw GraphParseError(std::max<std::size_t>(line_no, 1), "missing header");
  if (static_cast<std::int64_t>(edges.size()) != header->second)
    throw GraphParseError(line_no, "header declares " + std::to_string(header->second) +
                                       " edges, found " + std::to_string(edges.size()));
  return ProblemGraph(std::move(name), static_cast<std::size_t>(header->first), std::move(edges));
}

ProblemGraph parse_gset(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  return parse_gset(in, std::move(name));
}

ProblemGraph load_gset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open graph file '" + path + "'");
  return parse_gset(in, std::filesystem::path(path).stem().string());
}

std::string to_gset(const ProblemGraph& graph) {
  std::ostringstream out;
  out << graph.n_nodes() << ' ' << graph.n_edges() << '\n';
  for (const auto& e : graph.edges()) out << e.u + 1 << ' ' << e.v + 1 << ' ' << e.w << '\n';
  return out.str();
}

ProblemGraph make_random_graph(std::size_t n_nodes, double edge_probability, std::uint64_t seed,
                               const std::vector<Weight>& weights, std::string name) {
  if (weights.empty()) throw std::invalid_argument("weight alphabet must be non-empty");
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution keep(edge_probability);
  std::uniform_int_distribution<std::size_t> pick(0, weights.size() - 1);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n_nodes; ++u)
    for (std::size_t v = u + 1; v < n_nodes; ++v)
      if (keep(gen))
        edges.push_back({static_cast<NodeIndex>(u), static_cast<NodeIndex>(v), weights[pick(gen)]});
  return ProblemGraph(std::move(name), n_nodes, std::move(edges));
}

BkcRegistry BkcRegistry::builtin() {
  BkcRegistry r;
  r.set("G9", 2054);
  r.set("G13", 582);
  r.set("G18", 992);
  r.set("G19", 906);
  r.set("G20", 941);
  r.set("G21", 931);
  r.set("G34", 1384);
  return r;
}

void BkcRegistry::set(std::string name, std::int64_t cut) {
  if (cut <= 0) throw std::invalid_argument("best-known cut must be positive");
  entries_[std::move(name)] = cut;
}

void BkcRegistry::merge(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = tokenize(raw);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2) throw GraphParseError(line_no, "registry line must be 'name cut'");
    const auto cut = parse_int(tokens[1], line_no);
    if (cut <= 0) throw GraphParseError(line_no, "best-known cut must be positive");
    entries_[std::string(tokens[0])] = cut;
  }
}

std::optional<std::int64_t> BkcRegistry::lookup(std::string_view name) const {
  if (auto it = entries_.find(std::string(name)); it != entries_.end()) return it->second;
  return std::nullopt;
}

}  // namespace mianneal
