#include "modgraph/sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "modgraph/decomposition.hpp"
#include "modgraph/errors.hpp"

namespace modgraph {

namespace {

constexpr double kMargin = 1e-9;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Options visited alternately from both ends of [lo, hi], where the mass concentrates.
struct EndsFirst {
  std::size_t lo, hi;
  std::size_t count() const { return hi - lo + 1; }
  std::size_t operator()(std::size_t i) const { return i % 2 == 0 ? lo + i / 2 : hi - i / 2; }
};

// Returns option o with probability exact(o) / total, where the exact weights sum to total.
// A uniform r in [0, total) is drawn lazily: its top 62 bits locate r against the
// floating-point cumulative weights, and the remaining bits are drawn only when r falls
// within kMargin of a boundary, in which case the scan is redone exactly.
template <class Order, class LogWeight, class ExactWeight>
std::size_t draw(RngStream& rng, const BigInt& total, std::size_t count, Order order,
                 LogWeight log_weight, ExactWeight exact) {
  if (sgn(total) <= 0) throw NoObjectError("no object of the requested size");
  const double log_total = log_of(total);
  const std::size_t bits = mpz_sizeinbase(total.get_mpz_t(), 2);
  const std::size_t shift = bits > 62 ? bits - 62 : 0;
  const BigInt bound = BigInt(total - 1) >> static_cast<mp_bitcnt_t>(shift);
  const std::uint64_t hmax = mpz_get_ui(bound.get_mpz_t());
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, total.get_mpz_t());
  const int scale = static_cast<int>(static_cast<long>(shift) - exponent);
  while (true) {
    const std::uint64_t h = rng.below(hmax + 1);
    BigInt r;
    auto materialize = [&] {
      mpz_set_ui(r.get_mpz_t(), h);
      if (shift == 0) return true;
      r <<= static_cast<mp_bitcnt_t>(shift);
      r += rng.below(BigInt(BigInt(1) << static_cast<mp_bitcnt_t>(shift)));
      return r < total;
    };
    if (shift > 0 && h == hmax) {
      if (!materialize()) continue;
    } else {
      const double lo = std::ldexp(static_cast<double>(h) / mantissa, scale);
      const double hi = shift == 0 ? lo : std::ldexp(static_cast<double>(h + 1) / mantissa, scale);
      double cum = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t option = order(i);
        const double lw = log_weight(option);
        if (lw == kNegInf) continue;
        const double next = cum + std::exp(lw - log_total);
        if (next > lo) {
          if (lo - cum > kMargin && next - hi > kMargin) return option;
          break;
        }
        cum = next;
      }
      if (!materialize()) continue;
    }
    BigInt cum;
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t option = order(i);
      cum += exact(option);
      if (r < cum) return option;
    }
    throw NumericError("sampler weights do not sum to the total");
  }
}

class TreeBuilder {
 public:
  TreeBuilder(const CountCache& cache, RngStream& rng)
      : c_(cache), rng_(rng), paths_(cache.prime_class().kind() == PrimeClassKind::Paths) {}

  SubstitutionTree any(std::vector<std::size_t> labels) {
    const std::size_t n = labels.size();
    if (n == 1) return SubstitutionTree::leaf(labels[0]);
    const auto& s = c_.join();
    const auto& pr = c_.prime();
    const std::size_t choice = draw(
        rng_, c_.trees()[n], 3, [](std::size_t i) { return i; },
        [&](std::size_t o) { return o < 2 ? s.log[n] : pr.log[n]; },
        [&](std::size_t o) { return o < 2 ? s[n] : pr[n]; });
    if (choice == 2) return prime(std::move(labels));
    return linear(std::move(labels), choice == 0 ? NodeKind::Join : NodeKind::Union);
  }

 private:
  static NodeKind other(NodeKind kind) {
    return kind == NodeKind::Join ? NodeKind::Union : NodeKind::Join;
  }

  // Root is not of kind `excluded`.
  SubstitutionTree not_kind(std::vector<std::size_t> labels, NodeKind excluded) {
    const std::size_t n = labels.size();
    if (n == 1) return SubstitutionTree::leaf(labels[0]);
    const auto& s = c_.join();
    const auto& pr = c_.prime();
    const std::size_t choice = draw(
        rng_, c_.not_join()[n], 2, [](std::size_t i) { return i; },
        [&](std::size_t o) { return o == 0 ? s.log[n] : pr.log[n]; },
        [&](std::size_t o) { return o == 0 ? s[n] : pr[n]; });
    if (choice == 1) return prime(std::move(labels));
    return linear(std::move(labels), other(excluded));
  }

  // Moves the smallest label to the front, then a uniform k - 1 others behind it.
  std::vector<std::size_t> split_with_min(std::vector<std::size_t>& labels, std::size_t k) {
    auto it = std::min_element(labels.begin(), labels.end());
    std::iter_swap(labels.begin(), it);
    for (std::size_t i = 1; i < k; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng_.below(labels.size() - i));
      std::swap(labels[i], labels[j]);
    }
    return take_front(labels, k);
  }

  std::vector<std::size_t> split_uniform(std::vector<std::size_t>& labels, std::size_t k) {
    rng_.partial_shuffle(labels, k);
    return take_front(labels, k);
  }

  static std::vector<std::size_t> take_front(std::vector<std::size_t>& labels, std::size_t k) {
    std::vector<std::size_t> head(labels.begin(), labels.begin() + static_cast<long>(k));
    labels.erase(labels.begin(), labels.begin() + static_cast<long>(k));
    return head;
  }

  // At least two children, none of kind `kind`; split off the child holding the smallest label.
  SubstitutionTree linear(std::vector<std::size_t> labels, NodeKind kind) {
    const auto& a = c_.not_join();
    const auto& e = c_.sets();
    std::vector<SubstitutionTree> children;
    bool first = true;
    while (!labels.empty()) {
      const std::size_t m = labels.size();
      // Before the first split at least one more child must follow.
      const std::size_t hi = first ? m - 1 : m;
      const BigInt& total = first ? c_.join()[m] : e[m];
      const std::size_t k = draw(
          rng_, total, hi, EndsFirst{1, hi},
          [&](std::size_t k) {
            return c_.log_binomial(m - 1, k - 1) + a.log[k] + e.log[m - k];
          },
          [&](std::size_t k) {
            return BigInt(binomial(m - 1, k - 1) * a[k] * e[m - k]);
          });
      children.push_back(not_kind(split_with_min(labels, k), kind));
      first = false;
    }
    return SubstitutionTree::linear(kind, std::move(children));
  }

  SubstitutionTree prime(std::vector<std::size_t> labels) {
    const std::size_t n = labels.size();
    std::vector<SubstitutionTree> children;
    if (paths_) {
      const auto& four = c_.power(4);
      const auto& q = c_.sequences();
      const std::size_t m = draw(
          rng_, c_.long_tuples()[n], n - 3, EndsFirst{4, n},
          [&](std::size_t m) { return c_.log_binomial(n, m) + four.log[m] + q.log[n - m]; },
          [&](std::size_t m) { return BigInt(binomial(n, m) * four[m] * q[n - m]); });
      tuple(split_uniform(labels, m), 4, children);
      sequence(std::move(labels), children);
    } else {
      const std::size_t top = c_.max_power();
      const std::size_t j = draw(
          rng_, c_.prime()[n], top - 1, [](std::size_t i) { return i + 2; },
          [&](std::size_t j) { return c_.prime_arity(j).log[n]; },
          [&](std::size_t j) { return c_.prime_arity(j)[n]; });
      tuple(std::move(labels), j, children);
    }
    LabeledGraph decoration = c_.prime_class().sample_member(children.size(), rng_);
    return SubstitutionTree::node(decoration, std::move(children));
  }

  // Ordered j-tuple of trees.
  void tuple(std::vector<std::size_t> labels, std::size_t j, std::vector<SubstitutionTree>& out) {
    const auto& t = c_.trees();
    for (std::size_t left = j; left > 1; --left) {
      const std::size_t m = labels.size();
      const auto& rest = c_.power(left - 1);
      const std::size_t hi = m - (left - 1);
      const std::size_t k = draw(
          rng_, c_.power(left)[m], hi, EndsFirst{1, hi},
          [&](std::size_t k) { return c_.log_binomial(m, k) + t.log[k] + rest.log[m - k]; },
          [&](std::size_t k) { return BigInt(binomial(m, k) * t[k] * rest[m - k]); });
      out.push_back(any(split_uniform(labels, k)));
    }
    out.push_back(any(std::move(labels)));
  }

  // Sequence of trees of any length.
  void sequence(std::vector<std::size_t> labels, std::vector<SubstitutionTree>& out) {
    const auto& t = c_.trees();
    const auto& q = c_.sequences();
    while (!labels.empty()) {
      const std::size_t m = labels.size();
      const std::size_t k = draw(
          rng_, q[m], m, EndsFirst{1, m},
          [&](std::size_t k) { return c_.log_binomial(m, k) + t.log[k] + q.log[m - k]; },
          [&](std::size_t k) { return BigInt(binomial(m, k) * t[k] * q[m - k]); });
      out.push_back(any(split_uniform(labels, k)));
    }
  }

  const CountCache& c_;
  RngStream& rng_;
  bool paths_;
};

struct BinaryShape {
  std::vector<std::size_t> parent;  // leaves 0..k-1, internal nodes after
  std::vector<std::array<std::size_t, 2>> kids;
  std::vector<bool> join;
  std::size_t root = 0;
};

BinaryShape insert_leaves(std::size_t k, double p, RngStream& rng) {
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  BinaryShape s;
  const std::size_t total = 2 * k - 1;
  s.parent.assign(total, none);
  s.kids.assign(total, {none, none});
  s.join.assign(total, false);
  std::vector<std::size_t> present{0};
  std::size_t next_internal = k;
  for (std::size_t leaf = 1; leaf < k; ++leaf) {
    // One edge above each present node, the root's edge included.
    const std::size_t x = present[rng.below(present.size())];
    const std::size_t y = next_internal++;
    const std::size_t up = s.parent[x];
    s.parent[y] = up;
    if (up == none) {
      s.root = y;
    } else {
      auto& slot = s.kids[up];
      (slot[0] == x ? slot[0] : slot[1]) = y;
    }
    s.kids[y] = {x, leaf};
    s.parent[x] = y;
    s.parent[leaf] = y;
    s.join[y] = rng.bernoulli(p);
    present.push_back(leaf);
    present.push_back(y);
  }
  return s;
}

}  // namespace

SubstitutionTree sample_uniform_tree(const CountCache& cache, std::size_t n, RngStream& rng) {
  if (n == 0 || n > cache.order()) throw ContractViolation("size outside the cache order");
  if (sgn(cache.trees()[n]) == 0) throw NoObjectError("no tree of size " + std::to_string(n));
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  TreeBuilder builder(cache, rng);
  return builder.any(std::move(labels));
}

LabeledGraph sample_uniform_graph(const CountCache& cache, std::size_t n, RngStream& rng) {
  return graph_of(sample_uniform_tree(cache, n, rng));
}

SubstitutionTree sample_binary_tree(std::size_t k, double p, RngStream& rng) {
  if (k == 0) throw ContractViolation("need at least one leaf");
  const BinaryShape s = insert_leaves(k, p, rng);
  auto build = [&](auto&& self, std::size_t v) -> SubstitutionTree {
    if (v < k) return SubstitutionTree::leaf(v + 1);
    return SubstitutionTree::linear(s.join[v] ? NodeKind::Join : NodeKind::Union,
                                    {self(self, s.kids[v][0]), self(self, s.kids[v][1])});
  };
  return build(build, s.root);
}

LabeledGraph sample_brownian_cographon(std::size_t k, double p, RngStream& rng) {
  if (k == 0) throw ContractViolation("need at least one leaf");
  const BinaryShape s = insert_leaves(k, p, rng);
  LabeledGraph g(k);
  auto leaves = [&](auto&& self, std::size_t v) -> std::vector<std::size_t> {
    if (v < k) return {v};
    std::vector<std::size_t> left = self(self, s.kids[v][0]);
    std::vector<std::size_t> right = self(self, s.kids[v][1]);
    if (s.join[v])
      for (std::size_t x : left)
        for (std::size_t y : right) g.add_edge(x, y);
    left.insert(left.end(), right.begin(), right.end());
    return left;
  };
  leaves(leaves, s.root);
  return g;
}

PartialInjection sample_injection(std::size_t n, std::size_t l, RngStream& rng) {
  if (l > n) throw ContractViolation("cannot mark more labels than exist");
  std::vector<Vertex> sources;
  if (l * l <= n) {
    while (sources.size() < l) {
      const Vertex v = rng.below(n);
      if (std::find(sources.begin(), sources.end(), v) == sources.end()) sources.push_back(v);
    }
  } else {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), Vertex{0});
    rng.partial_shuffle(sources, l);
    sources.resize(l);
  }
  return PartialInjection::from_sources(sources);
}

}  // namespace modgraph
