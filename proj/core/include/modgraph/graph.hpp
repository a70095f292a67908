#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "modgraph/numbers.hpp"

namespace modgraph {

// Vertices are 0-based in code; vertex v carries the label v + 1.
using Vertex = std::size_t;

class SubstitutionTree;

// Simple undirected graph on labels 1..n stored as a dense symmetric bit matrix.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  explicit LabeledGraph(std::size_t n);

  static LabeledGraph complete(std::size_t n);
  static LabeledGraph edgeless(std::size_t n);
  static LabeledGraph path(std::size_t n);
  static LabeledGraph cycle(std::size_t n);
  // Edges given as 1-based label pairs.
  static LabeledGraph from_edges(std::size_t n,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool adjacent(Vertex u, Vertex v) const {
    return (bits_[u * words_ + (v >> 6)] >> (v & 63)) & 1U;
  }
  void set_edge(Vertex u, Vertex v, bool present);
  void add_edge(Vertex u, Vertex v) { set_edge(u, v, true); }

  std::size_t degree(Vertex v) const;
  std::size_t edge_count() const;
  // Edges as 0-based pairs (u < v) in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;
  LabeledGraph complement() const;

  std::size_t words() const { return words_; }
  std::span<const std::uint64_t> row(Vertex v) const {
    return {bits_.data() + v * words_, words_};
  }

  bool operator==(const LabeledGraph& other) const = default;

 private:
  friend LabeledGraph graph_of(const SubstitutionTree& t);
  void or_row(Vertex v, std::span<const std::uint64_t> mask) {
    for (std::size_t w = 0; w < words_; ++w) bits_[v * words_ + w] |= mask[w];
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Finite injective map from labels to positive integers (both 1-based).
class PartialInjection {
 public:
  PartialInjection() = default;
  static PartialInjection from_pairs(const std::vector<std::pair<std::size_t, std::size_t>>& pairs);
  // sources[i] is the 0-based vertex receiving mark i + 1.
  static PartialInjection from_sources(std::span<const Vertex> sources);
  static PartialInjection identity(std::size_t n);

  void set(std::size_t label, std::size_t mark);
  std::optional<std::size_t> at(std::size_t label) const;
  std::size_t size() const { return map_.size(); }
  bool image_is_prefix() const;
  // 0-based vertices in mark order; requires image {1..size()}.
  std::vector<Vertex> sources() const;
  const std::map<std::size_t, std::size_t>& pairs() const { return map_; }

 private:
  std::map<std::size_t, std::size_t> map_;
  std::map<std::size_t, std::size_t> inverse_;
};

LabeledGraph induced_subgraph(const LabeledGraph& g, const PartialInjection& inj);
// Vertex i of the result is sources[i] of g.
LabeledGraph induced_on(const LabeledGraph& g, std::span<const Vertex> sources);
// Upper-triangle adjacency bits of g restricted to sources, row-major; needs at most 11 sources.
std::uint64_t induced_code(const LabeledGraph& g, std::span<const Vertex> sources);
LabeledGraph graph_from_code(std::size_t k, std::uint64_t code);

bool is_module(const LabeledGraph& g, std::span<const Vertex> set);
bool is_prime(const LabeledGraph& g);

// Number of bijections a -> b preserving adjacency, stopping once `limit` is reached.
std::uint64_t count_isomorphisms(const LabeledGraph& a, const LabeledGraph& b,
                                 std::uint64_t limit = UINT64_MAX);
bool are_isomorphic(const LabeledGraph& a, const LabeledGraph& b);
std::uint64_t automorphism_count(const LabeledGraph& g);
// Isomorphism-invariant code; needs at most 11 vertices.
std::uint64_t canonical_code(const LabeledGraph& g);
LabeledGraph canonical_form(const LabeledGraph& g);

// Number of |pattern|-subsets S of host with host[S] isomorphic to pattern.
BigInt induced_copies(const LabeledGraph& pattern, const LabeledGraph& host);
// Injections onto {1..|pattern|} whose induced graph is isomorphic to pattern.
BigInt occ_count(const LabeledGraph& pattern, const LabeledGraph& host);
// Injections onto {1..|pattern|} whose induced graph equals pattern as a labeled graph.
BigInt occ_count_labeled(const LabeledGraph& pattern, const LabeledGraph& host);

// Graph on an arbitrary set of distinct positive labels; vertex i carries labels[i].
struct WeakGraph {
  std::vector<std::size_t> labels;
  LabeledGraph graph;
};

WeakGraph weak_from(const LabeledGraph& g);
// Relabels by rank so that the labels become 1..n.
LabeledGraph reduce(const WeakGraph& w);
WeakGraph substitute(const LabeledGraph& g, const std::vector<WeakGraph>& parts);

}  // namespace modgraph
