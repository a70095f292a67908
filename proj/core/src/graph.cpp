#include "modgraph/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "modgraph/decomposition.hpp"
#include "modgraph/errors.hpp"

namespace modgraph {

LabeledGraph::LabeledGraph(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

LabeledGraph LabeledGraph::complete(std::size_t n) {
  LabeledGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

LabeledGraph LabeledGraph::edgeless(std::size_t n) { return LabeledGraph(n); }

LabeledGraph LabeledGraph::path(std::size_t n) {
  LabeledGraph g(n);
  for (Vertex v = 1; v < n; ++v) g.add_edge(v - 1, v);
  return g;
}

LabeledGraph LabeledGraph::cycle(std::size_t n) {
  LabeledGraph g = path(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

LabeledGraph LabeledGraph::from_edges(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  LabeledGraph g(n);
  for (auto [a, b] : edges) {
    if (a < 1 || b < 1 || a > n || b > n || a == b)
      throw ContractViolation("edge endpoints must be distinct labels in 1..n");
    g.add_edge(a - 1, b - 1);
  }
  return g;
}

void LabeledGraph::set_edge(Vertex u, Vertex v, bool present) {
  if (u == v || u >= n_ || v >= n_) throw ContractViolation("invalid edge");
  std::uint64_t bu = std::uint64_t{1} << (v & 63);
  std::uint64_t bv = std::uint64_t{1} << (u & 63);
  if (present) {
    bits_[u * words_ + (v >> 6)] |= bu;
    bits_[v * words_ + (u >> 6)] |= bv;
  } else {
    bits_[u * words_ + (v >> 6)] &= ~bu;
    bits_[v * words_ + (u >> 6)] &= ~bv;
  }
}

std::size_t LabeledGraph::degree(Vertex v) const {
  std::size_t d = 0;
  for (std::uint64_t w : row(v)) d += std::popcount(w);
  return d;
}

std::size_t LabeledGraph::edge_count() const {
  std::size_t total = 0;
  for (std::uint64_t w : bits_) total += std::popcount(w);
  return total / 2;
}

std::vector<std::pair<Vertex, Vertex>> LabeledGraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = u + 1; v < n_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

LabeledGraph LabeledGraph::complement() const {
  LabeledGraph c(n_);
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = u + 1; v < n_; ++v)
      if (!adjacent(u, v)) c.add_edge(u, v);
  return c;
}

PartialInjection PartialInjection::from_pairs(
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  PartialInjection inj;
  for (auto [label, mark] : pairs) inj.set(label, mark);
  return inj;
}

PartialInjection PartialInjection::from_sources(std::span<const Vertex> sources) {
  PartialInjection inj;
  for (std::size_t i = 0; i < sources.size(); ++i) inj.set(sources[i] + 1, i + 1);
  return inj;
}

PartialInjection PartialInjection::identity(std::size_t n) {
  PartialInjection inj;
  for (std::size_t i = 1; i <= n; ++i) inj.set(i, i);
  return inj;
}

void PartialInjection::set(std::size_t label, std::size_t mark) {
  if (label == 0 || mark == 0) throw ContractViolation("labels and marks are positive");
  if (map_.count(label)) throw ContractViolation("label already mapped");
  if (inverse_.count(mark)) throw ContractViolation("injection would not be injective");
  map_[label] = mark;
  inverse_[mark] = label;
}

std::optional<std::size_t> PartialInjection::at(std::size_t label) const {
  auto it = map_.find(label);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

bool PartialInjection::image_is_prefix() const {
  return inverse_.empty() || inverse_.rbegin()->first == inverse_.size();
}

std::vector<Vertex> PartialInjection::sources() const {
  if (!image_is_prefix()) throw ContractViolation("image of injection is not {1..k}");
  std::vector<Vertex> out;
  out.reserve(inverse_.size());
  for (const auto& [mark, label] : inverse_) out.push_back(label - 1);
  return out;
}

LabeledGraph induced_subgraph(const LabeledGraph& g, const PartialInjection& inj) {
  for (const auto& [label, mark] : inj.pairs())
    if (label > g.size()) throw ContractViolation("injection domain exceeds graph labels");
  std::vector<Vertex> src = inj.sources();
  return induced_on(g, src);
}

LabeledGraph induced_on(const LabeledGraph& g, std::span<const Vertex> sources) {
  LabeledGraph h(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i)
    for (std::size_t j = i + 1; j < sources.size(); ++j)
      if (g.adjacent(sources[i], sources[j])) h.add_edge(i, j);
  return h;
}

std::uint64_t induced_code(const LabeledGraph& g, std::span<const Vertex> sources) {
  std::uint64_t code = 0;
  unsigned bit = 0;
  for (std::size_t i = 0; i < sources.size(); ++i)
    for (std::size_t j = i + 1; j < sources.size(); ++j, ++bit)
      if (g.adjacent(sources[i], sources[j])) code |= std::uint64_t{1} << bit;
  return code;
}

LabeledGraph graph_from_code(std::size_t k, std::uint64_t code) {
  LabeledGraph h(k);
  unsigned bit = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j, ++bit)
      if ((code >> bit) & 1U) h.add_edge(i, j);
  return h;
}

bool is_module(const LabeledGraph& g, std::span<const Vertex> set) {
  if (set.empty()) return true;
  std::vector<char> inside(g.size(), 0);
  for (Vertex v : set) inside.at(v) = 1;
  for (Vertex x = 0; x < g.size(); ++x) {
    if (inside[x]) continue;
    bool first = g.adjacent(x, set[0]);
    for (Vertex v : set)
      if (g.adjacent(x, v) != first) return false;
  }
  return true;
}

bool is_prime(const LabeledGraph& g) {
  const std::size_t n = g.size();
  if (n < 3) return false;
  if (n > 12) {
    SubstitutionTree t = modular_decomposition(g);
    return t.kind() == NodeKind::Graph && t.children().size() == n;
  }
  std::vector<Vertex> set;
  for (std::uint32_t mask = 1; mask < (1U << n) - 1; ++mask) {
    if (std::popcount(mask) < 2) continue;
    set.clear();
    for (Vertex v = 0; v < n; ++v)
      if ((mask >> v) & 1U) set.push_back(v);
    if (is_module(g, set)) return false;
  }
  return true;
}

namespace {

// Colour refinement; colour ids are canonical because they are ranks of sorted signatures.
std::vector<std::size_t> refine_colours(const LabeledGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> colour(n);
  for (Vertex v = 0; v < n; ++v) colour[v] = g.degree(v);
  std::size_t classes = 0;
  while (true) {
    std::vector<std::vector<std::size_t>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
      sig[v].push_back(colour[v]);
      std::vector<std::size_t> nb;
      for (Vertex u = 0; u < n; ++u)
        if (g.adjacent(u, v)) nb.push_back(colour[u]);
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
    std::map<std::vector<std::size_t>, std::size_t> ids;
    for (const auto& s : sig) ids.emplace(s, 0);
    std::size_t next = 0;
    for (auto& [s, id] : ids) id = next++;
    for (Vertex v = 0; v < n; ++v) colour[v] = ids[sig[v]];
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return colour;
}

struct IsoSearch {
  const LabeledGraph& a;
  const LabeledGraph& b;
  std::vector<std::size_t> colour_a, colour_b;
  std::vector<Vertex> order;
  std::vector<Vertex> image;
  std::vector<char> used;
  std::uint64_t found = 0;
  std::uint64_t limit;

  void search(std::size_t depth) {
    if (found >= limit) return;
    if (depth == order.size()) {
      ++found;
      return;
    }
    Vertex v = order[depth];
    for (Vertex w = 0; w < b.size(); ++w) {
      if (used[w] || colour_b[w] != colour_a[v]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i)
        ok = a.adjacent(order[i], v) == b.adjacent(image[order[i]], w);
      if (!ok) continue;
      used[w] = 1;
      image[v] = w;
      search(depth + 1);
      used[w] = 0;
      if (found >= limit) return;
    }
  }
};

}  // namespace

std::uint64_t count_isomorphisms(const LabeledGraph& a, const LabeledGraph& b,
                                 std::uint64_t limit) {
  const std::size_t n = a.size();
  if (b.size() != n || a.edge_count() != b.edge_count()) return 0;
  if (n == 0) return 1;
  // Refine on the disjoint union so that colours are comparable across graphs.
  LabeledGraph u(2 * n);
  for (auto [x, y] : a.edges()) u.add_edge(x, y);
  for (auto [x, y] : b.edges()) u.add_edge(n + x, n + y);
  std::vector<std::size_t> colour = refine_colours(u);
  IsoSearch s{a, b, {}, {}, {}, std::vector<Vertex>(n), std::vector<char>(n, 0), 0, limit};
  s.colour_a.assign(colour.begin(), colour.begin() + static_cast<std::ptrdiff_t>(n));
  s.colour_b.assign(colour.begin() + static_cast<std::ptrdiff_t>(n), colour.end());
  std::vector<std::size_t> ha = s.colour_a, hb = s.colour_b;
  std::sort(ha.begin(), ha.end());
  std::sort(hb.begin(), hb.end());
  if (ha != hb) return 0;
  std::map<std::size_t, std::size_t> class_size;
  for (std::size_t c : s.colour_a) ++class_size[c];
  s.order.resize(n);
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(), [&](Vertex x, Vertex y) {
    return class_size[s.colour_a[x]] < class_size[s.colour_a[y]];
  });
  s.search(0);
  return s.found;
}

bool are_isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
  return count_isomorphisms(a, b, 1) > 0;
}

std::uint64_t automorphism_count(const LabeledGraph& g) { return count_isomorphisms(g, g); }

std::uint64_t canonical_code(const LabeledGraph& g) {
  const std::size_t n = g.size();
  if (n > 11) throw ContractViolation("canonical_code supports at most 11 vertices");
  std::vector<std::size_t> colour = refine_colours(g);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Vertex x, Vertex y) { return std::tie(colour[x], x) < std::tie(colour[y], y); });
  // Blocks of equal colour are permuted independently; the maximal code wins.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && colour[order[j]] == colour[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  std::uint64_t best = 0;
  bool have = false;
  auto visit = [&](auto&& self, std::size_t b) -> void {
    if (b == blocks.size()) {
      std::uint64_t code = induced_code(g, order);
      if (!have || code > best) best = code;
      have = true;
      return;
    }
    auto first = order.begin() + static_cast<std::ptrdiff_t>(blocks[b].first);
    auto last = order.begin() + static_cast<std::ptrdiff_t>(blocks[b].second);
    std::sort(first, last);
    do {
      self(self, b + 1);
    } while (std::next_permutation(first, last));
  };
  visit(visit, 0);
  return best;
}

LabeledGraph canonical_form(const LabeledGraph& g) {
  return graph_from_code(g.size(), canonical_code(g));
}

namespace {

template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<Vertex> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  if (k > n) return;
  while (true) {
    fn(std::span<const Vertex>(pick));
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::vector<std::size_t> sorted_degrees(const LabeledGraph& g) {
  std::vector<std::size_t> d(g.size());
  for (Vertex v = 0; v < g.size(); ++v) d[v] = g.degree(v);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

BigInt induced_copies(const LabeledGraph& pattern, const LabeledGraph& host) {
  const std::size_t k = pattern.size();
  if (k > host.size()) return 0;
  if (k == 0) return 1;
  const std::size_t edges = pattern.edge_count();
  const std::vector<std::size_t> degrees = sorted_degrees(pattern);
  const bool small = k <= 11;
  const std::uint64_t target = small ? canonical_code(pattern) : 0;
  std::uint64_t count = 0;
  for_each_subset(host.size(), k, [&](std::span<const Vertex> s) {
    LabeledGraph sub = induced_on(host, s);
    if (sub.edge_count() != edges || sorted_degrees(sub) != degrees) return;
    if (small ? canonical_code(sub) == target : are_isomorphic(sub, pattern)) ++count;
  });
  return BigInt(static_cast<unsigned long>(count));
}

BigInt occ_count(const LabeledGraph& pattern, const LabeledGraph& host) {
  return induced_copies(pattern, host) * factorial(pattern.size());
}

BigInt occ_count_labeled(const LabeledGraph& pattern, const LabeledGraph& host) {
  if (pattern.size() > host.size()) return 0;
  return induced_copies(pattern, host) *
         BigInt(static_cast<unsigned long>(automorphism_count(pattern)));
}

WeakGraph weak_from(const LabeledGraph& g) {
  WeakGraph w{std::vector<std::size_t>(g.size()), g};
  std::iota(w.labels.begin(), w.labels.end(), 1);
  return w;
}

LabeledGraph reduce(const WeakGraph& w) {
  const std::size_t n = w.labels.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return w.labels[a] < w.labels[b]; });
  std::vector<Vertex> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;
  LabeledGraph g(n);
  for (auto [u, v] : w.graph.edges()) g.add_edge(rank[u], rank[v]);
  return g;
}

WeakGraph substitute(const LabeledGraph& g, const std::vector<WeakGraph>& parts) {
  if (parts.size() != g.size())
    throw ContractViolation("substitute needs one part per vertex");
  std::set<std::size_t> seen;
  std::vector<std::size_t> offset(parts.size() + 1, 0);
  WeakGraph out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t label : parts[i].labels)
      if (!seen.insert(label).second)
        throw ContractViolation("substituted parts share a label");
    out.labels.insert(out.labels.end(), parts[i].labels.begin(), parts[i].labels.end());
    offset[i + 1] = offset[i] + parts[i].labels.size();
  }
  out.graph = LabeledGraph(offset.back());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (auto [u, v] : parts[i].graph.edges())
      out.graph.add_edge(offset[i] + u, offset[i] + v);
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (!g.adjacent(i, j)) continue;
      for (std::size_t u = offset[i]; u < offset[i + 1]; ++u)
        for (std::size_t v = offset[j]; v < offset[j + 1]; ++v) out.graph.add_edge(u, v);
    }
  }
  return out;
}

}  // namespace modgraph
