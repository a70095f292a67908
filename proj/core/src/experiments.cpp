#include "modgraph/experiments.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "modgraph/decomposition.hpp"
#include "modgraph/errors.hpp"
#include "modgraph/rng.hpp"
#include "modgraph/sampler.hpp"

namespace modgraph {

namespace {

constexpr std::uint64_t kDensityExperiment = 1;
constexpr std::uint64_t kScalingExperiment = 2;
// Above this many child subsets per tree the scaling experiment falls back to injections.
constexpr double kExactBudget = 2e7;

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  double mean() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
  double stderr_of_mean() const {
    if (count < 2) return 0.0;
    const double c = static_cast<double>(count);
    const double var = std::max(0.0, (sum_sq - sum * sum / c) / (c - 1.0));
    return std::sqrt(var / c);
  }
};

ReportRow make_row(std::size_t n, std::string statistic, const Moments& m, double predicted) {
  ReportRow row;
  row.n = n;
  row.statistic = std::move(statistic);
  row.samples = m.count;
  row.empirical = m.mean();
  row.stderr_of_mean = m.stderr_of_mean();
  row.predicted = predicted;
  row.ratio = predicted == 0.0 ? std::numeric_limits<double>::quiet_NaN() : row.empirical / predicted;
  return row;
}

// (n)_k / n^k.
double falling_ratio(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i) r *= static_cast<double>(n - i) / static_cast<double>(n);
  return r;
}

// Canonical codes of induced graphs, memoized per worker.
class CodeCache {
 public:
  std::uint64_t canonical(std::size_t k, std::uint64_t code) {
    auto& slot = memo_[k];
    auto it = slot.find(code);
    if (it != slot.end()) return it->second;
    const std::uint64_t c = canonical_code(graph_from_code(k, code));
    slot.emplace(code, c);
    return c;
  }

 private:
  std::map<std::size_t, std::unordered_map<std::uint64_t, std::uint64_t>> memo_;
};

struct PatternInfo {
  std::size_t k;
  std::uint64_t canonical;
};

std::vector<PatternInfo> pattern_infos(const std::vector<NamedPattern>& patterns) {
  std::vector<PatternInfo> out;
  for (const auto& p : patterns) {
    if (p.graph.size() == 0 || p.graph.size() > 11)
      throw ContractViolation("patterns need 1..11 vertices");
    out.push_back({p.graph.size(), canonical_code(p.graph)});
  }
  return out;
}

// Fraction of uniform injections of size k whose induced graph has each requested canonical code.
std::vector<double> injection_hits(const LabeledGraph& g, std::size_t k,
                                   const std::vector<std::uint64_t>& targets, std::size_t draws,
                                   RngStream& rng, CodeCache& codes) {
  std::vector<double> hits(targets.size(), 0.0);
  for (std::size_t d = 0; d < draws; ++d) {
    const std::vector<Vertex> sources = sample_injection(g.size(), k, rng).sources();
    const std::uint64_t c = codes.canonical(k, induced_code(g, sources));
    for (std::size_t i = 0; i < targets.size(); ++i)
      if (targets[i] == c) hits[i] += 1.0;
  }
  for (double& h : hits) h /= static_cast<double>(draws);
  return hits;
}

struct SubtreeTargets {
  std::vector<std::string> keys;
  std::vector<double> predicted;
  std::map<std::string, std::size_t> index;
};

SubtreeTargets subtree_targets(std::size_t leaves, double p) {
  SubtreeTargets out;
  for (const auto& shape : binary_trees(leaves, NodeKind::Join)) {
    const std::size_t internal = leaves - 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << internal); ++mask) {
      std::vector<NodeKind> kinds(internal);
      for (std::size_t i = 0; i < internal; ++i)
        kinds[i] = ((mask >> i) & 1U) ? NodeKind::Join : NodeKind::Union;
      const SubstitutionTree t = redecorate(shape, kinds);
      const std::string key = tree_key(t);
      if (out.index.count(key) != 0) continue;
      out.index.emplace(key, out.keys.size());
      out.keys.push_back(key);
      out.predicted.push_back(predict_subtree_prob(t, p));
    }
  }
  return out;
}

void check_config(const CountCache& cache, const ExperimentConfig& config) {
  if (config.samples < 1) throw ContractViolation("need at least one sample per size");
  for (std::size_t n : config.sizes)
    if (n < 1 || n > cache.order()) throw ContractViolation("size outside the cache order");
}

bool exact_budget_ok(const SubstitutionTree& t, std::size_t k) {
  double subsets = 0.0;
  auto walk = [&](auto&& self, const SubstitutionTree& node) -> void {
    if (node.is_leaf()) return;
    const std::size_t d = node.children().size();
    if (node.kind() == NodeKind::Graph && d >= k) subsets += binomial(d, k).get_d();
    for (const auto& c : node.children()) self(self, c);
  };
  walk(walk, t);
  return subsets <= kExactBudget;
}

double log_scaled(const BigInt& x, double scale) {
  return sgn(x) == 0 ? 0.0 : std::exp(log_of(x) + std::log(scale));
}

std::string pattern_name(const LabeledGraph& g) {
  const std::size_t k = g.size();
  const std::size_t all = k * (k - 1) / 2;
  if (g.edge_count() == all) return "K" + std::to_string(k);
  if (g.edge_count() == 0) return "co-K" + std::to_string(k);
  return std::to_string(k) + "v_" + std::to_string(canonical_code(g));
}

}  // namespace

const ReportRow* ExperimentReport::find(std::size_t n, const std::string& statistic) const {
  for (const auto& r : rows)
    if (r.n == n && r.statistic == statistic) return &r;
  return nullptr;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "n,statistic,samples,empirical,stderr,predicted,ratio\n";
  for (const auto& r : rows)
    out << r.n << ',' << r.statistic << ',' << r.samples << ',' << format_double(r.empirical)
        << ',' << format_double(r.stderr_of_mean) << ',' << format_double(r.predicted) << ','
        << format_double(r.ratio) << '\n';
  return out.str();
}

std::uint64_t cell_stream(std::uint64_t experiment, std::size_t n, std::size_t replicate) {
  return (experiment << 56) ^ (static_cast<std::uint64_t>(n) << 24) ^
         static_cast<std::uint64_t>(replicate);
}

namespace {

// Calls visit on every k-subset of the decoration's vertices inducing the target class.
template <class Visit>
void for_each_match(const LabeledGraph& dec, std::size_t k, std::uint64_t target, Visit visit) {
  const std::size_t d = dec.size();
  if (d < k) return;
  std::vector<Vertex> pick(k);
  std::iota(pick.begin(), pick.end(), Vertex{0});
  while (true) {
    if (canonical_code(induced_on(dec, pick)) == target) visit(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == d - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

// (x * y)_n = sum_k C(n, k) x_k y_{n-k}, exponential convolution up to order.
std::vector<BigInt> egf_product(const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
  const std::size_t order = x.size() - 1;
  std::vector<BigInt> out(order + 1);
  std::vector<BigInt> row{BigInt(1)};
  BigInt tmp;
  for (std::size_t n = 0; n <= order; ++n) {
    if (n > 0) {
      std::vector<BigInt> next(n + 1, BigInt(1));
      for (std::size_t k = 1; k < n; ++k) next[k] = row[k - 1] + row[k];
      row.swap(next);
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (sgn(x[k]) == 0 || sgn(y[n - k]) == 0) continue;
      mpz_mul(tmp.get_mpz_t(), row[k].get_mpz_t(), x[k].get_mpz_t());
      mpz_addmul(out[n].get_mpz_t(), tmp.get_mpz_t(), y[n - k].get_mpz_t());
    }
  }
  return out;
}

}  // namespace

BigInt prime_occurrences(const SubstitutionTree& t, const LabeledGraph& h) {
  if (!is_prime(h)) throw ContractViolation("pattern must be prime");
  const std::size_t k = h.size();
  const std::uint64_t target = canonical_code(h);
  BigInt copies;
  auto walk = [&](auto&& self, const SubstitutionTree& node) -> void {
    if (node.is_leaf()) return;
    for (const auto& c : node.children()) self(self, c);
    if (node.kind() != NodeKind::Graph) return;
    for_each_match(node.graph_decoration(), k, target, [&](const std::vector<Vertex>& pick) {
      BigInt prod(1);
      for (Vertex v : pick) prod *= static_cast<unsigned long>(node.children()[v].leaf_count());
      copies += prod;
    });
  };
  walk(walk, t);
  return copies * static_cast<unsigned long>(automorphism_count(h));
}

bool ConditionalOccurrence::applicable(const CountCache& cache, const LabeledGraph& h) {
  return cache.prime_class().kind() == PrimeClassKind::Finite && h.size() >= 4 &&
         h.size() <= cache.max_power() && is_prime(h);
}

ConditionalOccurrence::ConditionalOccurrence(const CountCache& cache, const LabeledGraph& h,
                                             std::size_t max_size)
    : k_(h.size()),
      target_(canonical_code(h)),
      automorphisms_(static_cast<double>(automorphism_count(h))) {
  if (!applicable(cache, h)) throw ContractViolation("needs a finite class and a prime pattern");
  if (max_size > cache.order()) throw ContractViolation("size outside the cache order");
  const auto& t = cache.trees();
  std::vector<BigInt> tree(max_size + 1), pointed(max_size + 1);
  for (std::size_t m = 1; m <= max_size; ++m) {
    tree[m] = t[m];
    pointed[m] = t[m] * static_cast<unsigned long>(m);
  }
  // mix = (z T')^k T^{d-k}, one more factor T per arity.
  std::vector<BigInt> mix = pointed;
  for (std::size_t j = 1; j < k_; ++j) mix = egf_product(mix, pointed);
  const std::size_t top = cache.max_power();
  ratio_.assign(top + 1, std::vector<double>(max_size + 1, 0.0));
  for (std::size_t d = k_; d <= top; ++d) {
    if (d > k_) mix = egf_product(mix, tree);
    const auto& power = cache.power(d);
    for (std::size_t m = d; m <= max_size; ++m)
      if (sgn(power[m]) > 0 && sgn(mix[m]) > 0)
        ratio_[d][m] = std::exp(log_of(mix[m]) - power.log[m]);
  }
}

double ConditionalOccurrence::total(const SubstitutionTree& t) const {
  double sum = 0.0;
  auto walk = [&](auto&& self, const SubstitutionTree& node) -> void {
    if (node.is_leaf()) return;
    for (const auto& c : node.children()) self(self, c);
    if (node.kind() != NodeKind::Graph) return;
    const std::size_t d = node.children().size();
    if (d >= ratio_.size() || node.leaf_count() >= ratio_[d].size())
      throw ContractViolation("node outside the conditional table");
    double matches = 0.0;
    for_each_match(node.graph_decoration(), k_, target_,
                   [&](const std::vector<Vertex>&) { matches += 1.0; });
    sum += matches * ratio_[d][node.leaf_count()];
  };
  walk(walk, t);
  return sum * automorphisms_;
}

ExperimentReport density_experiment(const CountCache& cache, const ClassConstants& constants,
                                    const ExperimentConfig& config) {
  check_config(cache, config);
  const std::vector<PatternInfo> infos = pattern_infos(config.patterns);
  std::map<std::size_t, std::vector<std::size_t>> by_size;
  for (std::size_t i = 0; i < infos.size(); ++i) by_size[infos[i].k].push_back(i);
  const std::size_t leaves = config.subtree_leaves;
  SubtreeTargets targets;
  if (leaves >= 2) targets = subtree_targets(leaves, constants.p);
  const std::size_t stats = infos.size() + (leaves >= 2 ? targets.keys.size() + 1 : 0);

  ExperimentReport report;
  for (std::size_t n : config.sizes) {
    if (leaves > n) throw ContractViolation("subtree larger than the sampled graph");
    std::function<std::vector<double>(std::size_t)> cell = [&](std::size_t rep) {
      RngStream rng(config.seed, cell_stream(kDensityExperiment, n, rep));
      CodeCache codes;
      const SubstitutionTree tree = sample_uniform_tree(cache, n, rng);
      std::vector<double> values(stats, 0.0);
      if (!infos.empty()) {
        const LabeledGraph g = graph_of(tree);
        const double nn = static_cast<double>(n);
        for (const auto& [k, members] : by_size) {
          if (k > n) continue;
          if (k <= 2) {
            const double e = static_cast<double>(g.edge_count());
            for (std::size_t i : members) {
              if (k == 1) {
                values[i] = 1.0;
              } else {
                const double pairs = nn * (nn - 1.0) / 2.0;
                values[i] = 2.0 * (infos[i].canonical == 1 ? e : pairs - e) / (nn * nn);
              }
            }
            continue;
          }
          std::vector<std::uint64_t> wanted;
          for (std::size_t i : members) wanted.push_back(infos[i].canonical);
          const std::vector<double> hits =
              injection_hits(g, k, wanted, config.injections, rng, codes);
          for (std::size_t j = 0; j < members.size(); ++j)
            values[members[j]] = hits[j] * falling_ratio(n, k);
        }
      }
      if (leaves >= 2) {
        const double draws = static_cast<double>(config.injections);
        for (std::size_t d = 0; d < config.injections; ++d) {
          const std::string key = tree_key(induced_subtree(tree, sample_injection(n, leaves, rng)));
          auto it = targets.index.find(key);
          if (it != targets.index.end()) {
            values[infos.size() + it->second] += 1.0 / draws;
          } else {
            values[stats - 1] += 1.0 / draws;
          }
        }
      }
      return values;
    };
    const auto cells = parallel_map<std::vector<double>>(config.samples, config.jobs, cell);
    std::vector<Moments> m(stats);
    for (const auto& values : cells)
      for (std::size_t s = 0; s < stats; ++s) m[s].add(values[s]);
    for (std::size_t i = 0; i < infos.size(); ++i) {
      const auto& pattern = config.patterns[i];
      const double predicted =
          pattern.graph.size() <= 8 ? predict_sample_prob(pattern.graph, constants.p) : 0.0;
      report.rows.push_back(make_row(n, "density:" + pattern.name, m[i], predicted));
    }
    if (leaves >= 2) {
      for (std::size_t j = 0; j < targets.keys.size(); ++j)
        report.rows.push_back(make_row(n, "subtree:" + targets.keys[j], m[infos.size() + j],
                                       targets.predicted[j]));
      report.rows.push_back(make_row(n, "subtree:non_binary", m[stats - 1], 0.0));
    }
  }
  return report;
}

ExperimentReport subtree_experiment(const CountCache& cache, const ClassConstants& constants,
                                    const ExperimentConfig& config) {
  if (config.subtree_leaves < 2) throw ContractViolation("subtree needs at least two leaves");
  ExperimentConfig c = config;
  c.patterns.clear();
  return density_experiment(cache, constants, c);
}

ExperimentReport scaling_experiment(const CountCache& cache, const ClassConstants& constants,
                                    const ExperimentConfig& config) {
  check_config(cache, config);
  const PrimeClass& cls = cache.prime_class();
  struct Prepared {
    std::size_t k;
    std::uint64_t canonical;
    bool prime;
    double automorphisms;
    double beta;
    AsymptoticPrediction prediction;
    std::optional<ConditionalOccurrence> conditional;
  };
  std::vector<Prepared> prepared;
  for (const auto& p : config.patterns) {
    Prepared x;
    x.k = p.graph.size();
    if (x.k == 0 || x.k > 11) throw ContractViolation("patterns need 1..11 vertices");
    x.canonical = canonical_code(p.graph);
    x.prime = x.k >= 4 && is_prime(p.graph);
    x.automorphisms = static_cast<double>(automorphism_count(p.graph));
    x.beta = beta(p.graph).get_d();
    x.prediction = predict_KH(p.graph, constants, cls);
    if (ConditionalOccurrence::applicable(cache, p.graph)) {
      const std::size_t top = *std::max_element(config.sizes.begin(), config.sizes.end());
      x.conditional.emplace(cache, p.graph, top);
    }
    prepared.push_back(std::move(x));
  }
  const std::size_t width = 2 * prepared.size();
  ExperimentReport report;
  for (std::size_t n : config.sizes) {
    const double nn = static_cast<double>(n);
    std::function<std::vector<double>(std::size_t)> cell = [&](std::size_t rep) {
      RngStream rng(config.seed, cell_stream(kScalingExperiment, n, rep));
      CodeCache codes;
      const SubstitutionTree tree = sample_uniform_tree(cache, n, rng);
      std::optional<LabeledGraph> g;
      std::vector<double> values(width, 0.0);
      for (std::size_t i = 0; i < prepared.size(); ++i) {
        const Prepared& x = prepared[i];
        const double scale = std::pow(nn, x.beta - static_cast<double>(x.k));
        if (x.k > n) continue;
        if (x.conditional) values[prepared.size() + i] = x.conditional->total(tree) * scale;
        if (x.prime && exact_budget_ok(tree, x.k)) {
          values[i] = log_scaled(prime_occurrences(tree, config.patterns[i].graph), scale);
          continue;
        }
        if (!g) g = graph_of(tree);
        const std::vector<double> hits =
            injection_hits(*g, x.k, {x.canonical}, config.injections, rng, codes);
        // (n)_k f |Aut H| / k! copies-weighted, i.e. the labeled occurrence estimate.
        double falling = 1.0;
        for (std::size_t j = 0; j < x.k; ++j) falling *= nn - static_cast<double>(j);
        double kfact = std::tgamma(static_cast<double>(x.k) + 1.0);
        values[i] = falling * hits[0] * x.automorphisms / kfact * scale;
      }
      return values;
    };
    const auto cells = parallel_map<std::vector<double>>(config.samples, config.jobs, cell);
    for (std::size_t i = 0; i < prepared.size(); ++i) {
      Moments m;
      for (const auto& values : cells) m.add(values[i]);
      report.rows.push_back(make_row(n, "occ_scaled:" + config.patterns[i].name, m,
                                     prepared[i].prediction.K_H));
      if (!prepared[i].conditional) continue;
      Moments c;
      for (const auto& values : cells) c.add(values[prepared.size() + i]);
      report.rows.push_back(make_row(n, "occ_scaled_conditional:" + config.patterns[i].name, c,
                                     prepared[i].prediction.K_H));
    }
  }
  return report;
}

std::vector<NamedPattern> cograph_patterns(std::size_t k) {
  if (k == 0 || k > 7) throw ContractViolation("cograph patterns support 1..7 vertices");
  const std::size_t bits = k * (k - 1) / 2;
  std::set<std::uint64_t> seen;
  std::vector<NamedPattern> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    const LabeledGraph g = graph_from_code(k, code);
    const std::uint64_t c = canonical_code(g);
    if (!seen.insert(c).second) continue;
    if (!is_in_class(g, PrimeClass::empty())) continue;
    const LabeledGraph canon = canonical_form(g);
    out.push_back({pattern_name(canon), canon});
  }
  return out;
}

}  // namespace modgraph
