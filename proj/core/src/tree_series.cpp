#include "modgraph/tree_series.hpp"

#include <algorithm>

#include "modgraph/errors.hpp"

namespace modgraph {

namespace {

// Incremental [z^n] P(T), needing only T_1..T_{n-1} when asked for degree n.
class PrimeComposer {
 public:
  PrimeComposer(const PrimeClass& cls, std::size_t order, const std::vector<Rational>& t)
      : paths_(cls.kind() == PrimeClassKind::Paths), t_(t) {
    if (paths_) {
      for (auto* p : {&t2_, &t3_, &t4_}) p->assign(order + 1, Rational(0));
      q_.assign(order + 1, Rational(0));
      q_[0] = 1;
      return;
    }
    const std::size_t top = std::min(order, cls.max_prime_size());
    for (std::size_t j = 2; j <= top; ++j) {
      BigInt c = cls.count(j);
      if (sgn(c) == 0) continue;
      max_power_ = j;
    }
    weights_.assign(max_power_ + 1, Rational(0));
    for (std::size_t j = 2; j <= max_power_; ++j)
      weights_[j] = Rational(cls.count(j)) / Rational(factorial(j));
    powers_.assign(max_power_ + 1, std::vector<Rational>(order + 1));
  }

  Rational coefficient(std::size_t n) {
    if (paths_) {
      extend(t2_, t_, n);
      extend(t3_, t2_, n);
      extend(t4_, t3_, n);
      Rational acc;
      for (std::size_t m = 4; m <= n; ++m) acc += t4_[m] * q_[n - m];
      return acc / 2;
    }
    Rational acc;
    for (std::size_t j = 2; j <= max_power_; ++j) {
      extend(powers_[j], j == 2 ? t_ : powers_[j - 1], n);
      if (sgn(weights_[j]) != 0) acc += weights_[j] * powers_[j][n];
    }
    return acc;
  }

  // Called once T_n is known.
  void push(std::size_t n) {
    if (!paths_) return;
    Rational acc;
    for (std::size_t k = 1; k <= n; ++k) acc += t_[k] * q_[n - k];
    q_[n] = acc;
  }

 private:
  // (T * lower)_n from T_1..T_{n-1}; valid because `lower` has valuation >= 1.
  void extend(std::vector<Rational>& power, const std::vector<Rational>& lower, std::size_t n) {
    Rational acc;
    for (std::size_t k = 1; k < n; ++k)
      if (sgn(t_[k]) != 0 && sgn(lower[n - k]) != 0) acc += t_[k] * lower[n - k];
    power[n] = acc;
  }

  bool paths_;
  const std::vector<Rational>& t_;
  std::size_t max_power_ = 1;
  std::vector<Rational> weights_;
  std::vector<std::vector<Rational>> powers_;
  std::vector<Rational> t2_, t3_, t4_, q_;
};

}  // namespace

SeriesBundle solve_tree_series(const PrimeClass& cls, std::size_t order) {
  if (order < 1) throw ContractViolation("series order must be at least 1");
  const std::size_t m = order + 1;
  std::vector<Rational> a(m + 1), e(m + 1), t(m + 1);
  e[0] = 1;
  PrimeComposer composer(cls, m, t);
  for (std::size_t n = 1; n <= m; ++n) {
    Rational part;
    for (std::size_t k = 1; k < n; ++k) part += a[k] * e[n - k] * static_cast<unsigned long>(k);
    part /= static_cast<unsigned long>(n);
    a[n] = composer.coefficient(n) + part;
    if (n == 1) a[n] += 1;
    e[n] = a[n] + part;
    t[n] = e[n];
    composer.push(n);
  }
  SeriesBundle b;
  b.order = order;
  ExactSeries a_full(a), t_full(t);
  b.T = t_full.truncated(order);
  b.T_not_join = a_full.truncated(order);
  b.exp_A = ExactSeries(e).truncated(order);
  b.exp_minus_A = inverse(b.exp_A);
  b.T_derivative = derive(t_full);
  b.T_blossom = b.T_derivative;
  b.T_not_join_blossom = derive(a_full);
  b.T_join = b.T_derivative * b.exp_minus_A;
  b.T_not_join_join = (b.T_join - ExactSeries::constant(1, order)) * b.exp_minus_A;
  b.T_not_join_union = b.T_join * b.exp_minus_A;
  return b;
}

EdgeProfile edge_profile(const SubstitutionTree& tau, const std::vector<bool>& in_set) {
  EdgeProfile p;
  std::size_t next = 0;
  auto walk = [&](auto&& self, const SubstitutionTree& node) -> void {
    const std::size_t me = next++;
    const bool mine = in_set.at(me);
    if (!mine) ++p.n_L;
    for (const auto& c : node.children()) {
      if (c.is_leaf()) {
        ++(mine ? p.d_n_to_leaf : p.d_nbar_to_leaf);
        continue;
      }
      const bool theirs = in_set.at(next);
      if (mine && theirs) {
        ++p.d_n_to_n;
      } else if (mine) {
        ++p.d_n_to_nbar;
      } else if (theirs) {
        ++p.d_nbar_to_n;
      } else if (c.kind() == node.kind()) {
        ++p.d_eq;
      } else {
        ++p.d_neq;
      }
      self(self, c);
    }
  };
  if (tau.is_leaf()) throw ContractViolation("tree must have an internal node");
  p.root_in_set = in_set.at(0);
  walk(walk, tau);
  return p;
}

std::vector<std::vector<bool>> admissible_node_sets(const SubstitutionTree& tau) {
  std::vector<NodePath> nodes = internal_nodes(tau);
  std::vector<std::size_t> free;
  std::vector<bool> base(nodes.size(), false);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (subtree_at(tau, nodes[i]).is_linear()) {
      free.push_back(i);
    } else {
      base[i] = true;
    }
  }
  std::vector<std::vector<bool>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    std::vector<bool> s = base;
    for (std::size_t b = 0; b < free.size(); ++b)
      if ((mask >> b) & 1U) s[free[b]] = true;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

ExactSeries times_power(const ExactSeries& acc, const ExactSeries& base, std::size_t k) {
  if (k == 0) return acc;
  return acc * pow(base.truncated(acc.order()), k);
}

}  // namespace

ExactSeries t_tau_series(const SubstitutionTree& tau, const std::vector<bool>& in_set,
                         const PrimeClass& cls, const SeriesBundle& bundle) {
  std::vector<NodePath> nodes = internal_nodes(tau);
  if (in_set.size() != nodes.size()) throw ContractViolation("one flag per internal node");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!in_set[i] && !subtree_at(tau, nodes[i]).is_linear())
      throw ContractViolation("node set must contain every non-linear node");
  const std::size_t order = bundle.order;
  const std::size_t size = tau.leaf_count();
  if (size > order) return ExactSeries(order);
  const std::size_t inner = order - size;
  const EdgeProfile p = edge_profile(tau, in_set);

  ExactSeries f = (p.root_in_set ? bundle.T_blossom : bundle.T_join).truncated(inner);
  f = times_power(f, bundle.T_not_join_join, p.d_eq);
  f = times_power(f, bundle.T_not_join_union, p.d_neq);
  f = times_power(f, bundle.T_not_join_blossom, p.d_nbar_to_n + p.d_nbar_to_leaf);
  if (p.n_L > 0)
    f = f * exp(bundle.T_not_join.truncated(inner) * Rational(static_cast<unsigned long>(p.n_L)));
  f = times_power(f, bundle.T_join, p.d_n_to_nbar);
  f = times_power(f, bundle.T_blossom, p.d_n_to_n);
  f = times_power(f, bundle.T_derivative, p.d_n_to_leaf);
  const ExactSeries t = bundle.T.truncated(inner);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!in_set[i]) continue;
    const LabeledGraph dec = subtree_at(tau, nodes[i]).decoration();
    f = f * compose(occ_series(cls, dec, inner), t);
  }
  ExactSeries out(order);
  for (std::size_t n = size; n <= order; ++n) out[n] = f[n - size];
  return out;
}

ExactSeries t_tau_total(const SubstitutionTree& tau, const PrimeClass& cls,
                        const SeriesBundle& bundle) {
  ExactSeries total(bundle.order);
  for (const auto& s : admissible_node_sets(tau)) total += t_tau_series(tau, s, cls, bundle);
  return total;
}

}  // namespace modgraph
