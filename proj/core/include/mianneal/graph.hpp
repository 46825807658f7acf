#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mianneal {

using NodeIndex = std::uint32_t;
using Weight = std::int32_t;
// Problem energies and cut values are exact integers.
using Energy = std::int64_t;

struct Edge {
  NodeIndex u;
  NodeIndex v;
  Weight w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeIndex node;
  Weight w;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Weighted undirected graph, immutable after construction.
// Edges are stored 0-indexed with u < v, in input order.
class ProblemGraph {
 public:
  // Validates and normalizes; throws std::invalid_argument on self-loops,
  // duplicates, zero weights or out-of-range endpoints.
  ProblemGraph(std::string name, std::size_t n_nodes, std::vector<Edge> edges);

  const std::string& name() const noexcept { return name_; }
  std::size_t n_nodes() const noexcept { return adjacency_.size(); }
  std::size_t n_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Neighbor>& neighbors(NodeIndex u) const { return adjacency_[u]; }
  Energy total_weight() const noexcept { return total_weight_; }

  friend bool operator==(const ProblemGraph& a, const ProblemGraph& b) {
    return a.n_nodes() == b.n_nodes() && a.edges_ == b.edges_;
  }

 private:
  std::string name_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  Energy total_weight_ = 0;
};

// GSET text: "n_nodes n_edges" header then "u v w" lines, 1-indexed.
// Blank lines are skipped; blanks and tabs separate tokens.
ProblemGraph parse_gset(std::istream& in, std::string name = {});
ProblemGraph parse_gset(std::string_view text, std::string name = {});
ProblemGraph load_gset(const std::string& path);

// Inverse of parse_gset.
std::string to_gset(const ProblemGraph& graph);

// Erdos-Renyi style instance with weights drawn from `weights`.
ProblemGraph make_random_graph(std::size_t n_nodes, double edge_probability,
                               std::uint64_t seed, const std::vector<Weight>& weights = {-1, 1},
                               std::string name = "random");

// Best-known cuts keyed by instance name.
class BkcRegistry {
 public:
  BkcRegistry() = default;

  // Table of published best-known cuts for the stock benchmark instances.
  static BkcRegistry builtin();

  void set(std::string name, std::int64_t cut);
  // Merges "name cut" lines; later entries override existing ones.
  void merge(std::istream& in);

  std::optional<std::int64_t> lookup(std::string_view name) const;
  const std::unordered_map<std::string, std::int64_t>& entries() const noexcept {
    return entries_;
  }

 private:
  std::unordered_map<std::string, std::int64_t> entries_;
};

}  // namespace mianneal
