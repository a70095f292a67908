#include "modgraph/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>

#include "modgraph/errors.hpp"
#include "modgraph/prime_class.hpp"

namespace modgraph {

namespace {

using Mask = std::vector<std::uint64_t>;

Mask make_mask(std::size_t n, const std::vector<Vertex>& vs) {
  Mask m((n + 63) / 64, 0);
  for (Vertex v : vs) m[v >> 6] |= std::uint64_t{1} << (v & 63);
  return m;
}

template <class Fn>
void for_each_bit(const Mask& m, Fn&& fn) {
  for (std::size_t w = 0; w < m.size(); ++w) {
    std::uint64_t bits = m[w];
    while (bits) {
      fn(static_cast<Vertex>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

void collect_leaves(const SubstitutionTree& t, Mask& m) {
  if (t.is_leaf()) {
    Vertex v = t.label() - 1;
    m[v >> 6] |= std::uint64_t{1} << (v & 63);
    return;
  }
  for (const auto& c : t.children()) collect_leaves(c, m);
}

}  // namespace

LabeledGraph graph_of(const SubstitutionTree& t) {
  if (!t.is_reduced()) throw ContractViolation("graph_of needs a reduced tree");
  const std::size_t n = t.leaf_count();
  LabeledGraph g(n);
  const std::size_t words = g.words();
  // Each leaf receives, at every ancestor, the leaves of the siblings it is adjacent to.
  auto walk = [&](auto&& self, const SubstitutionTree& node, Mask& leaves) -> void {
    if (node.is_leaf()) {
      collect_leaves(node, leaves);
      return;
    }
    const auto& kids = node.children();
    std::vector<Mask> sub(kids.size(), Mask(words, 0));
    for (std::size_t i = 0; i < kids.size(); ++i) self(self, kids[i], sub[i]);
    for (std::size_t i = 0; i < kids.size(); ++i)
      for (std::size_t w = 0; w < words; ++w) leaves[w] |= sub[i][w];
    if (node.kind() == NodeKind::Union) return;
    const LabeledGraph dec = node.decoration();
    for (std::size_t i = 0; i < kids.size(); ++i) {
      Mask seen(words, 0);
      for (std::size_t j = 0; j < kids.size(); ++j)
        if (j != i && dec.adjacent(i, j))
          for (std::size_t w = 0; w < words; ++w) seen[w] |= sub[j][w];
      for_each_bit(sub[i], [&](Vertex v) { g.or_row(v, seen); });
    }
  };
  Mask all(words, 0);
  walk(walk, t, all);
  return g;
}

namespace {

class Decomposer {
 public:
  explicit Decomposer(const LabeledGraph& g) : g_(g), words_(g.words()) {}

  SubstitutionTree run(const std::vector<Vertex>& vs) {
    if (vs.size() == 1) return SubstitutionTree::leaf(vs[0] + 1);
    auto parts = components(vs, false);
    if (parts.size() > 1) return SubstitutionTree::union_of(recurse(parts));
    parts = components(vs, true);
    if (parts.size() > 1) return SubstitutionTree::join(recurse(parts));
    parts = maximal_modules(vs);
    std::vector<Vertex> reps;
    for (const auto& p : parts) reps.push_back(p.front());
    LabeledGraph quotient = induced_on(g_, reps);
    return SubstitutionTree::node(quotient, recurse(parts));
  }

 private:
  std::vector<SubstitutionTree> recurse(const std::vector<std::vector<Vertex>>& parts) {
    std::vector<SubstitutionTree> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.push_back(run(p));
    return out;
  }

  // Connected components of g[vs], or of its complement; each sorted, ordered by minimum.
  std::vector<std::vector<Vertex>> components(const std::vector<Vertex>& vs, bool co) {
    Mask remaining = make_mask(g_.size(), vs);
    std::vector<std::vector<Vertex>> out;
    for (Vertex start : vs) {
      if (!((remaining[start >> 6] >> (start & 63)) & 1U)) continue;
      std::vector<Vertex> comp{start};
      remaining[start >> 6] &= ~(std::uint64_t{1} << (start & 63));
      for (std::size_t head = 0; head < comp.size(); ++head) {
        auto row = g_.row(comp[head]);
        Mask next(words_);
        for (std::size_t w = 0; w < words_; ++w) {
          next[w] = (co ? ~row[w] : row[w]) & remaining[w];
          remaining[w] &= ~next[w];
        }
        for_each_bit(next, [&](Vertex v) { comp.push_back(v); });
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  // Smallest module of g[vs] containing x and y, as a mask.
  Mask closure(const Mask& inside, Vertex x, Vertex y, std::size_t total, bool& whole) {
    Mask m(words_, 0);
    m[x >> 6] |= std::uint64_t{1} << (x & 63);
    m[y >> 6] |= std::uint64_t{1} << (y & 63);
    std::size_t size = 2;
    std::vector<Vertex> queue{y};
    auto rx = g_.row(x);
    for (std::size_t head = 0; head < queue.size() && size < total; ++head) {
      auto ru = g_.row(queue[head]);
      Mask diff(words_);
      for (std::size_t w = 0; w < words_; ++w) {
        diff[w] = (rx[w] ^ ru[w]) & inside[w] & ~m[w];
        m[w] |= diff[w];
      }
      for_each_bit(diff, [&](Vertex z) {
        queue.push_back(z);
        ++size;
      });
    }
    whole = size >= total;
    return m;
  }

  // Maximal proper modules when g[vs] and its complement are connected.
  std::vector<std::vector<Vertex>> maximal_modules(const std::vector<Vertex>& vs) {
    const Mask inside = make_mask(g_.size(), vs);
    std::map<Vertex, std::size_t> part_of;
    std::vector<std::vector<Vertex>> parts;
    for (Vertex u : vs) {
      if (part_of.count(u)) continue;
      Mask part(words_, 0);
      part[u >> 6] |= std::uint64_t{1} << (u & 63);
      for (Vertex y : vs) {
        if (y == u || part_of.count(y) || ((part[y >> 6] >> (y & 63)) & 1U)) continue;
        bool whole = false;
        Mask m = closure(inside, u, y, vs.size(), whole);
        if (whole) continue;
        for (std::size_t w = 0; w < words_; ++w) part[w] |= m[w];
      }
      std::vector<Vertex> members;
      for_each_bit(part, [&](Vertex v) {
        members.push_back(v);
        part_of[v] = parts.size();
      });
      parts.push_back(std::move(members));
    }
    std::sort(parts.begin(), parts.end());
    return parts;
  }

  const LabeledGraph& g_;
  std::size_t words_;
};

}  // namespace

SubstitutionTree modular_decomposition(const LabeledGraph& g) {
  if (g.size() == 0) throw ContractViolation("modular decomposition needs at least one vertex");
  std::vector<Vertex> all(g.size());
  for (Vertex v = 0; v < g.size(); ++v) all[v] = v;
  return Decomposer(g).run(all);
}

bool is_md_tree(const SubstitutionTree& t) {
  if (t.is_leaf()) return true;
  for (const auto& c : t.children()) {
    if (t.is_linear() && c.kind() == t.kind()) return false;
    if (!is_md_tree(c)) return false;
  }
  return t.kind() != NodeKind::Graph || is_prime(t.graph_decoration());
}

namespace {

std::optional<SubstitutionTree> induce(const SubstitutionTree& t, const PartialInjection& inj) {
  if (t.is_leaf()) {
    auto mark = inj.at(t.label());
    if (!mark) return std::nullopt;
    return SubstitutionTree::leaf(*mark);
  }
  std::vector<SubstitutionTree> kept;
  std::vector<Vertex> positions;
  const auto& kids = t.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    auto sub = induce(kids[i], inj);
    if (!sub) continue;
    kept.push_back(std::move(*sub));
    positions.push_back(i);
  }
  if (kept.empty()) return std::nullopt;
  if (kept.size() == 1) return std::move(kept.front());
  if (t.is_linear()) return SubstitutionTree::linear(t.kind(), std::move(kept));
  // Decoration restricted to the marked children; node() reorders by minimal mark.
  return SubstitutionTree::node(induced_on(t.graph_decoration(), positions), std::move(kept));
}

}  // namespace

SubstitutionTree induced_subtree(const SubstitutionTree& t, const PartialInjection& inj) {
  if (inj.size() == 0) throw ContractViolation("induced subtree needs at least one mark");
  if (!inj.image_is_prefix()) throw ContractViolation("marks must be exactly 1..l");
  std::vector<std::size_t> labels = t.leaf_labels();
  for (const auto& [label, mark] : inj.pairs())
    if (!std::binary_search(labels.begin(), labels.end(), label))
      throw ContractViolation("marked label is not a leaf of the tree");
  return *induce(t, inj);
}

namespace {

SubstitutionTree plug(const SubstitutionTree& tau, const std::vector<SubstitutionTree>& parts) {
  if (tau.is_leaf()) return parts.at(tau.label() - 1);
  std::vector<SubstitutionTree> kids;
  kids.reserve(tau.children().size());
  for (const auto& c : tau.children()) kids.push_back(plug(c, parts));
  if (tau.is_linear()) return SubstitutionTree::linear(tau.kind(), std::move(kids));
  return SubstitutionTree::node(tau.graph_decoration(), std::move(kids));
}

SubstitutionTree rebuild_with(const SubstitutionTree& node, std::size_t index,
                              SubstitutionTree replacement) {
  std::vector<SubstitutionTree> kids = node.children();
  kids[index] = std::move(replacement);
  if (node.is_linear()) return SubstitutionTree::linear(node.kind(), std::move(kids));
  return SubstitutionTree::node(node.graph_decoration(), std::move(kids));
}

SubstitutionTree inflate_at(const SubstitutionTree& t, const NodePath& at, std::size_t depth,
                            const SubstitutionTree& tau) {
  if (depth == at.size()) {
    if (t.is_leaf()) throw ContractViolation("cannot inflate a leaf");
    if (tau.leaf_count() != t.children().size() || !tau.is_reduced())
      throw ContractViolation("inflating tree must have one leaf per child");
    if (!(graph_of(tau) == t.decoration()))
      throw ContractViolation("inflating tree is not a substitution tree of the decoration");
    return plug(tau, t.children());
  }
  if (at[depth] >= t.children().size()) throw ContractViolation("node path out of range");
  return rebuild_with(t, at[depth], inflate_at(t.children()[at[depth]], at, depth + 1, tau));
}

void insert_everywhere(const SubstitutionTree& t, std::size_t label, NodeKind kind,
                       std::vector<SubstitutionTree>& out) {
  out.push_back(SubstitutionTree::linear(kind, {t, SubstitutionTree::leaf(label)}));
  if (t.is_leaf()) return;
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    std::vector<SubstitutionTree> variants;
    insert_everywhere(t.children()[i], label, kind, variants);
    for (auto& v : variants) out.push_back(rebuild_with(t, i, std::move(v)));
  }
}

}  // namespace

SubstitutionTree inflate(const SubstitutionTree& t, const NodePath& at,
                         const SubstitutionTree& tau) {
  return inflate_at(t, at, 0, tau);
}

std::vector<SubstitutionTree> binary_trees(std::size_t k, NodeKind kind) {
  if (k == 0) throw ContractViolation("binary trees need at least one leaf");
  std::vector<SubstitutionTree> current{SubstitutionTree::leaf(1)};
  for (std::size_t label = 2; label <= k; ++label) {
    std::vector<SubstitutionTree> next;
    for (const auto& t : current) insert_everywhere(t, label, kind, next);
    current = std::move(next);
  }
  return current;
}

SubstitutionTree redecorate(const SubstitutionTree& shape, const std::vector<NodeKind>& kinds) {
  std::size_t next = 0;
  auto walk = [&](auto&& self, const SubstitutionTree& node) -> SubstitutionTree {
    if (node.is_leaf()) return node;
    NodeKind kind = kinds.at(next++);
    std::vector<SubstitutionTree> kids;
    for (const auto& c : node.children()) kids.push_back(self(self, c));
    if (kind == NodeKind::Graph) return SubstitutionTree::node(node.decoration(), std::move(kids));
    return SubstitutionTree::linear(kind, std::move(kids));
  };
  return walk(walk, shape);
}

BigInt expanded_tree_count(const LabeledGraph& g) {
  BigInt count = 1;
  auto walk = [&](auto&& self, const SubstitutionTree& t) -> void {
    if (t.is_leaf()) return;
    if (t.is_linear()) count *= double_factorial(2 * static_cast<long>(t.children().size()) - 3);
    for (const auto& c : t.children()) self(self, c);
  };
  walk(walk, modular_decomposition(g));
  return count;
}

void for_each_expanded_tree(const LabeledGraph& g,
                            const std::function<void(const SubstitutionTree&)>& visit) {
  const SubstitutionTree md = modular_decomposition(g);
  // Binary shapes for every linear node, indexed in preorder.
  std::vector<std::vector<SubstitutionTree>> shapes;
  auto collect = [&](auto&& self, const SubstitutionTree& t) -> void {
    if (t.is_leaf()) return;
    if (t.is_linear()) shapes.push_back(binary_trees(t.children().size(), t.kind()));
    for (const auto& c : t.children()) self(self, c);
  };
  collect(collect, md);
  std::vector<std::size_t> choice(shapes.size(), 0);
  while (true) {
    std::size_t next = 0;
    auto build = [&](auto&& self, const SubstitutionTree& t) -> SubstitutionTree {
      if (t.is_leaf()) return t;
      std::size_t mine = t.is_linear() ? next++ : 0;
      std::vector<SubstitutionTree> kids;
      for (const auto& c : t.children()) kids.push_back(self(self, c));
      if (t.is_linear()) return plug(shapes[mine][choice[mine]], kids);
      return SubstitutionTree::node(t.graph_decoration(), std::move(kids));
    };
    visit(build(build, md));
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == shapes[i].size()) choice[i++] = 0;
    if (i == choice.size()) return;
  }
}

Rational beta_of_tree(const SubstitutionTree& md) {
  long excess = 0;
  auto walk = [&](auto&& self, const SubstitutionTree& t) -> void {
    if (t.is_leaf()) return;
    if (t.kind() == NodeKind::Graph) excess += static_cast<long>(t.children().size()) - 2;
    for (const auto& c : t.children()) self(self, c);
  };
  walk(walk, md);
  Rational b(excess, 2);
  b.canonicalize();
  return b;
}

Rational beta(const LabeledGraph& g) { return beta_of_tree(modular_decomposition(g)); }

bool tree_in_class(const SubstitutionTree& t, const PrimeClass& cls) {
  if (t.is_leaf()) return true;
  if (t.kind() == NodeKind::Graph && !cls.contains(t.graph_decoration())) return false;
  for (const auto& c : t.children())
    if (!tree_in_class(c, cls)) return false;
  return true;
}

bool is_in_class(const LabeledGraph& g, const PrimeClass& cls) {
  return tree_in_class(modular_decomposition(g), cls);
}

}  // namespace modgraph
