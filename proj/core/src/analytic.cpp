#include "modgraph/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "modgraph/decomposition.hpp"
#include "modgraph/errors.hpp"

namespace modgraph {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

}  // namespace

ClassConstants solve_constants(const PrimeClass& cls, double tol) {
  ConditionReport cond = check_condition_c(cls);
  if (!cond.holds) throw ConditionError("class does not satisfy the analytic condition: " + cond.reason);
  auto f = [&](double w) { return lambda_eval(cls, w, 1, tol) - 1.0; };
  double lo = cond.kappa_lo, hi = cond.kappa_hi;
  if (!(f(lo) < 0.0) || !(f(hi) > 0.0)) throw NumericError("root of Lambda' = 1 is not bracketed");
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  double kappa = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    double step = f(kappa) / lambda_eval(cls, kappa, 2, tol);
    double next = kappa - step;
    if (next <= lo - 1e-12 || next >= hi + 1e-12) break;
    kappa = next;
  }
  ClassConstants c;
  c.kappa = kappa;
  c.R = kappa - lambda_eval(cls, kappa, 0, tol);
  c.K = std::expm1(kappa);
  c.lambda2 = lambda_eval(cls, kappa, 2, tol);
  c.mu = std::sqrt(2.0 * c.R * c.lambda2);
  c.C = (1.0 + c.K) * c.R / (c.mu * kSqrtPi);
  const double onek = (1.0 + c.K) * (1.0 + c.K);
  c.p = (1.0 + onek * occ_series_eval(cls, LabeledGraph::complete(2), c.K, tol)) / c.lambda2;
  c.q = (1.0 + onek * occ_series_eval(cls, LabeledGraph::edgeless(2), c.K, tol)) / c.lambda2;
  c.derivative_identity = (1.0 + c.K) * (prime_egf(cls, c.K, 1, tol) + 1.0);
  if (!(c.R > 0.0)) throw NumericError("singularity radius is not positive");
  return c;
}

double log_predicted_count(std::size_t n, const ClassConstants& c) {
  const double dn = static_cast<double>(n);
  return std::log(c.C) + std::lgamma(dn + 1.0) - dn * std::log(c.R) - 1.5 * std::log(dn);
}

double predicted_count(std::size_t n, const ClassConstants& c) {
  return std::exp(log_predicted_count(n, c));
}

double count_ratio(const BigInt& exact, std::size_t n, const ClassConstants& c) {
  return std::exp(log_of(exact) - log_predicted_count(n, c));
}

double gamma_half(long m) {
  if (m < 1) throw ContractViolation("gamma_half needs m >= 1");
  // Even m: (m/2 - 1)!. Odd m: the recurrence upward from Gamma(1/2) = sqrt(pi).
  double g = (m % 2 == 0) ? 1.0 : kSqrtPi;
  for (long k = (m % 2 == 0) ? 2 : 1; k + 2 <= m; k += 2) g *= static_cast<double>(k) / 2.0;
  return g;
}

double predict_subtree_prob(const SubstitutionTree& tau, double p) {
  if (tau.is_leaf()) return 1.0;
  if (!tau.is_binary()) return 0.0;
  std::size_t plus = 0, minus = 0;
  bool linear = true;
  auto walk = [&](auto&& self, const SubstitutionTree& t) -> void {
    if (t.is_leaf()) return;
    if (t.kind() == NodeKind::Join) ++plus;
    else if (t.kind() == NodeKind::Union) ++minus;
    else linear = false;
    for (const auto& c : t.children()) self(self, c);
  };
  walk(walk, tau);
  if (!linear) return 0.0;
  const long l = static_cast<long>(tau.leaf_count());
  double shapes = double_factorial(2 * l - 3).get_d();
  return std::pow(p, static_cast<double>(plus)) * std::pow(1.0 - p, static_cast<double>(minus)) /
         shapes;
}

namespace {

// Lowest common ancestor (preorder index) of every leaf pair of a binary shape on 1..k.
std::vector<std::size_t> lca_table(const SubstitutionTree& shape) {
  const std::size_t k = shape.leaf_count();
  std::vector<std::size_t> lca(k * k, 0);
  std::size_t next = 0;
  auto walk = [&](auto&& self, const SubstitutionTree& t) -> std::vector<std::size_t> {
    if (t.is_leaf()) return {t.label() - 1};
    const std::size_t me = next++;
    std::vector<std::vector<std::size_t>> parts;
    for (const auto& c : t.children()) parts.push_back(self(self, c));
    std::vector<std::size_t> all;
    for (std::size_t a = 0; a < parts.size(); ++a) {
      for (std::size_t b = a + 1; b < parts.size(); ++b)
        for (std::size_t x : parts[a])
          for (std::size_t y : parts[b]) lca[x * k + y] = lca[y * k + x] = me;
      all.insert(all.end(), parts[a].begin(), parts[a].end());
    }
    return all;
  };
  walk(walk, shape);
  return lca;
}

std::vector<std::size_t> degree_profile(std::size_t k, std::uint64_t code) {
  std::vector<std::size_t> deg(k, 0);
  unsigned bit = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j, ++bit)
      if ((code >> bit) & 1U) ++deg[i], ++deg[j];
  std::sort(deg.begin(), deg.end());
  return deg;
}

}  // namespace

double predict_sample_prob(const LabeledGraph& h, double p) {
  const std::size_t k = h.size();
  if (k == 0 || k > 8) throw ContractViolation("predict_sample_prob supports 1..8 vertices");
  if (k == 1) return 1.0;
  const std::uint64_t target = canonical_code(h);
  const std::size_t edges = h.edge_count();
  const std::vector<std::size_t> degrees = degree_profile(k, induced_code(h, [&] {
    std::vector<Vertex> all(k);
    for (std::size_t i = 0; i < k; ++i) all[i] = i;
    return all;
  }()));
  const std::size_t internal = k - 1;
  std::unordered_map<std::uint64_t, bool> memo;
  double total = 0.0;
  const auto shapes = binary_trees(k, NodeKind::Join);
  for (const auto& shape : shapes) {
    const std::vector<std::size_t> lca = lca_table(shape);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << internal); ++mask) {
      std::uint64_t code = 0;
      unsigned bit = 0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j, ++bit)
          if ((mask >> lca[i * k + j]) & 1U) code |= std::uint64_t{1} << bit;
      if (static_cast<std::size_t>(std::popcount(code)) != edges) continue;
      auto it = memo.find(code);
      if (it == memo.end()) {
        bool match = degree_profile(k, code) == degrees &&
                     canonical_code(graph_from_code(k, code)) == target;
        it = memo.emplace(code, match).first;
      }
      if (!it->second) continue;
      const int plus = std::popcount(mask);
      total += std::pow(p, plus) * std::pow(1.0 - p, static_cast<int>(internal) - plus);
    }
  }
  return total / static_cast<double>(shapes.size());
}

double predict_sample_prob_labeled(const LabeledGraph& h, double p) {
  const std::size_t k = h.size();
  if (k == 0 || k > 8) throw ContractViolation("predict_sample_prob supports 1..8 vertices");
  if (k == 1) return 1.0;
  const auto shapes = binary_trees(k, NodeKind::Join);
  double total = 0.0;
  for (const auto& shape : shapes) {
    const std::vector<std::size_t> lca = lca_table(shape);
    // Every internal node is the lca of some pair, so H forces each decoration.
    std::vector<int> forced(k - 1, -1);
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i)
      for (std::size_t j = i + 1; j < k && ok; ++j) {
        int want = h.adjacent(i, j) ? 1 : 0;
        int& slot = forced[lca[i * k + j]];
        if (slot == -1) slot = want;
        ok = slot == want;
      }
    if (!ok) continue;
    int plus = static_cast<int>(std::count(forced.begin(), forced.end(), 1));
    total += std::pow(p, plus) * std::pow(1.0 - p, static_cast<int>(k - 1) - plus);
  }
  return total / static_cast<double>(shapes.size());
}

double tree_constant(const SubstitutionTree& tau, const ClassConstants& c, const PrimeClass& cls) {
  if (tau.is_leaf()) throw ContractViolation("tree must have an internal node");
  const double onek = 1.0 + c.K;
  double b = std::pow(c.R, static_cast<double>(tau.leaf_count())) /
             std::pow(c.mu, static_cast<double>(tau.edge_count()));
  auto walk = [&](auto&& self, const SubstitutionTree& t) -> void {
    if (t.is_leaf()) return;
    const double d = static_cast<double>(t.children().size());
    const double occ = occ_series_eval(cls, t.decoration(), c.K);
    b *= t.is_linear() ? occ * std::pow(onek, d) + 1.0 : occ * std::pow(onek, d);
    for (const auto& ch : t.children()) self(self, ch);
  };
  walk(walk, tau);
  return b;
}

double predict_induced_tree(const SubstitutionTree& tau, std::size_t n, const ClassConstants& c,
                            const PrimeClass& cls) {
  const long e = static_cast<long>(tau.edge_count());
  const double l = static_cast<double>(tau.leaf_count());
  return tree_constant(tau, c, cls) * kSqrtPi / (c.R * gamma_half(e + 1)) *
         std::pow(static_cast<double>(n), (static_cast<double>(e) + 2.0) / 2.0 - l);
}

AsymptoticPrediction predict_KH(const LabeledGraph& h, const ClassConstants& c,
                                const PrimeClass& cls) {
  if (h.size() == 0) throw ContractViolation("pattern must be nonempty");
  const SubstitutionTree md = modular_decomposition(h);
  const Rational b = beta_of_tree(md);
  const double hs = static_cast<double>(h.size());
  const double bd = b.get_d();
  // 2|H| - 1 - 2 beta is an integer.
  const long twice = 2 * static_cast<long>(h.size()) - 1 - Rational(2 * b).get_num().get_si();
  double k = kSqrtPi / (std::pow(2.0, hs - 1.0 - bd) * gamma_half(twice));
  long d_plus = 0, n_plus = 0, d_minus = 0, n_minus = 0;
  auto walk = [&](auto&& self, const SubstitutionTree& t) -> void {
    if (t.is_leaf()) return;
    const long d = static_cast<long>(t.children().size());
    if (t.kind() == NodeKind::Join) {
      d_plus += d, ++n_plus;
      k *= double_factorial(2 * d - 3).get_d();
    } else if (t.kind() == NodeKind::Union) {
      d_minus += d, ++n_minus;
      k *= double_factorial(2 * d - 3).get_d();
    } else {
      const double dd = static_cast<double>(d);
      k *= occ_series_eval(cls, t.graph_decoration(), c.K) * std::pow(1.0 + c.K, dd) *
           std::pow(c.R, (dd - 2.0) / 2.0) / std::pow(c.lambda2, dd / 2.0);
    }
    for (const auto& ch : t.children()) self(self, ch);
  };
  walk(walk, md);
  k *= std::pow(c.p, static_cast<double>(d_plus - n_plus)) *
       std::pow(1.0 - c.p, static_cast<double>(d_minus - n_minus));
  AsymptoticPrediction out;
  out.K_H = k;
  out.exponent = Rational(static_cast<long>(h.size())) - b;
  return out;
}

}  // namespace modgraph
