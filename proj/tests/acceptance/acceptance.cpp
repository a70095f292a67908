#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>
#include "json.hpp"

#include "modgraph/analytic.hpp"
#include "modgraph/count_cache.hpp"
#include "modgraph/decomposition.hpp"
#include "modgraph/experiments.hpp"
#include "modgraph/prime_class.hpp"
#include "modgraph/sampler.hpp"
#include "modgraph/series.hpp"
#include "modgraph/tree_series.hpp"

namespace modgraph::acceptance {

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (!passed) detail << "; ";
    passed = false;
    detail << what;
  }
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

template <class Visit>
void for_each_graph(std::size_t n, Visit visit) {
  const std::size_t bits = n * (n - 1) / 2;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code)
    visit(graph_from_code(n, code));
}

PrimeClass p4_class() { return PrimeClass::finite({LabeledGraph::path(4)}); }

// 1. Exact counts from the series and the sampler cache against exhaustive enumeration.
void exact_counts(const Options&, Outcome& out) {
  for (const auto& [name, cls] :
       std::vector<std::pair<std::string, PrimeClass>>{{"empty", PrimeClass::empty()},
                                                       {"P4", p4_class()}}) {
    const SeriesBundle bundle = solve_tree_series(cls, 6);
    const CountCache cache(cls, 6);
    std::ostringstream seq;
    for (std::size_t n = 1; n <= 6; ++n) {
      std::uint64_t brute = 0;
      for_each_graph(n, [&](const LabeledGraph& g) {
        if (is_in_class(g, cls)) ++brute;
      });
      const BigInt series = bundle.T.count(n);
      out.require(series == brute && cache.trees()[n] == brute,
                  name + " n=" + std::to_string(n) + ": series " + to_string(series) + ", cache " +
                      to_string(cache.trees()[n]) + ", brute force " + std::to_string(brute));
      seq << (n > 1 ? "," : "") << brute;
    }
    if (out.passed) out.detail << (name == "empty" ? "" : "; ") << name << " " << seq.str();
  }
}

// 2. Decomposition round trip on every labeled graph with at most 6 vertices.
void md_round_trip(const Options&, Outcome& out) {
  std::size_t checked = 0, bad = 0;
  for (std::size_t n = 1; n <= 6; ++n)
    for_each_graph(n, [&](const LabeledGraph& g) {
      const SubstitutionTree t = modular_decomposition(g);
      ++checked;
      if (!(graph_of(t) == g) || !is_md_tree(t)) ++bad;
    });
  out.require(bad == 0, std::to_string(bad) + " graphs failed");
  if (out.passed) out.detail << checked << " graphs";
}

// 3. Sum of Occ series over all labeled k-vertex graphs equals the k-th derivative of P.
void occ_derivative(const Options&, Outcome& out) {
  constexpr std::size_t order = 10;
  for (const auto& [name, cls, kmax] : std::vector<std::tuple<std::string, PrimeClass, std::size_t>>{
           {"P4", p4_class(), 4}, {"paths", PrimeClass::paths(), 3}}) {
    for (std::size_t k = 1; k <= kmax; ++k) {
      ExactSeries lhs(order);
      for_each_graph(k, [&](const LabeledGraph& g) { lhs += occ_series(cls, g, order); });
      ExactSeries rhs = prime_series(cls, order + k);
      for (std::size_t i = 0; i < k; ++i) rhs = derive(rhs);
      rhs = rhs.truncated(order);
      out.require(lhs == rhs, name + " k=" + std::to_string(k) + " differs");
    }
  }
  if (out.passed) out.detail << "P4 k=1..4, paths k=1..3, order " << order;
}

// 4. Closed forms for the empty class and the derivative identity for three classes.
void constants_closed_forms(const Options&, Outcome& out) {
  const ClassConstants e = solve_constants(PrimeClass::empty());
  const double ln2 = std::log(2.0);
  const double worst = std::max({std::abs(e.kappa - ln2), std::abs(e.R - (2 * ln2 - 1)),
                                 std::abs(e.K - 1.0), std::abs(e.p - 0.5)});
  out.require(worst < 1e-9, "empty class closed forms off by " + fmt(worst));
  double identity = 0.0;
  for (const auto& cls : {PrimeClass::empty(), p4_class(), PrimeClass::paths()})
    identity = std::max(identity, std::abs(solve_constants(cls).derivative_identity - 2.0));
  out.require(identity < 1e-9, "(1+K)(P'(K)+1) - 2 up to " + fmt(identity));
  if (out.passed)
    out.detail << "closed-form error " << fmt(worst, 3) << ", identity error " << fmt(identity, 3);
}

// 5. Reference value p = 0.288 for the path class.
void paths_p(const Options&, Outcome& out) {
  const ClassConstants c = solve_constants(PrimeClass::paths());
  out.require(std::abs(c.p - 0.288) <= 0.001,
              "computed p = " + fmt(c.p, 12) + " vs 0.288; independent 1 - p check: p + q - 1 = " +
                  fmt(c.p + c.q - 1.0, 3));
  if (out.passed) out.detail << "p = " << fmt(c.p, 12);
}

// 6. Count asymptotics at n = 50 and n = 200.
void count_asymptotics(const Options&, Outcome& out) {
  for (const auto& [name, cls] :
       std::vector<std::pair<std::string, PrimeClass>>{{"empty", PrimeClass::empty()},
                                                       {"P4", p4_class()}}) {
    const SeriesBundle bundle = solve_tree_series(cls, 200);
    const ClassConstants c = solve_constants(cls);
    const double r50 = count_ratio(bundle.T.count(50), 50, c);
    const double r200 = count_ratio(bundle.T.count(200), 200, c);
    out.require(r200 >= 0.9 && r200 <= 1.1, name + " ratio at 200 = " + fmt(r200));
    out.require(std::abs(r200 - 1) < std::abs(r50 - 1),
                name + " ratio not closer to 1 at 200 (" + fmt(r50) + " -> " + fmt(r200) + ")");
    out.detail << (name == "empty" ? "" : "; ") << name << " ratio " << fmt(r50) << " (n=50), "
               << fmt(r200) << " (n=200)";
  }
}

// 7. Exact uniformity of the tree sampler at n = 4.
void sampler_exactness(const Options& opt, Outcome& out) {
  constexpr std::size_t draws = 100000;
  {
    const CountCache cache(PrimeClass::empty(), 4);
    RngStream rng(opt.seed, 7001);
    std::map<std::uint64_t, std::size_t> freq;
    std::vector<Vertex> all{0, 1, 2, 3};
    for (std::size_t i = 0; i < draws; ++i)
      ++freq[induced_code(sample_uniform_graph(cache, 4, rng), all)];
    std::size_t cographs = 0;
    for (std::uint64_t code = 0; code < 64; ++code)
      if (is_in_class(graph_from_code(4, code), PrimeClass::empty())) ++cographs;
    const double expected = static_cast<double>(draws) / static_cast<double>(cographs);
    double chi2 = 0.0;
    bool outside = false;
    for (std::uint64_t code = 0; code < 64; ++code) {
      const bool member = is_in_class(graph_from_code(4, code), PrimeClass::empty());
      const double seen = freq.count(code) ? static_cast<double>(freq[code]) : 0.0;
      if (!member) {
        outside = outside || seen > 0;
        continue;
      }
      chi2 += (seen - expected) * (seen - expected) / expected;
    }
    const double dof = static_cast<double>(cographs - 1);
    const double pvalue = boost::math::gamma_q(dof / 2.0, chi2 / 2.0);
    out.require(cographs == 52, "expected 52 labeled cographs, found " + std::to_string(cographs));
    out.require(!outside, "sampled a non-cograph");
    out.require(pvalue > 0.001, "chi-square " + fmt(chi2) + " on 51 dof, p-value " + fmt(pvalue));
    out.detail << "empty: chi2 " << fmt(chi2, 4) << " (51 dof, p-value " << fmt(pvalue, 3) << ")";
  }
  {
    const CountCache cache(p4_class(), 4);
    RngStream rng(opt.seed, 7002);
    const std::uint64_t p4 = canonical_code(LabeledGraph::path(4));
    std::size_t hits = 0;
    for (std::size_t i = 0; i < draws; ++i)
      if (canonical_code(sample_uniform_graph(cache, 4, rng)) == p4) ++hits;
    const double f = static_cast<double>(hits) / draws;
    const double target = 12.0 / 64.0;
    const double sigma = std::sqrt(target * (1 - target) / draws);
    out.require(std::abs(f - target) <= 3 * sigma,
                "P4 frequency " + fmt(f) + " vs 12/64 (sigma " + fmt(sigma, 3) + ")");
    out.detail << "; P4 frequency " << fmt(f, 5) << " vs " << fmt(target, 5);
  }
}

// 8. Brownian cographon samples.
void brownian_sampler(const Options& opt, Outcome& out) {
  constexpr std::size_t draws = 100000;
  std::uint64_t stream = 8000;
  for (double p : {0.288, 0.5}) {
    RngStream rng(opt.seed, ++stream);
    std::size_t triangles = 0, edges = 0;
    for (std::size_t i = 0; i < draws; ++i) {
      if (sample_brownian_cographon(3, p, rng).edge_count() == 3) ++triangles;
      if (sample_brownian_cographon(2, p, rng).edge_count() == 1) ++edges;
    }
    const double ft = static_cast<double>(triangles) / draws;
    const double fe = static_cast<double>(edges) / draws;
    const double st = std::sqrt(p * p * (1 - p * p) / draws);
    const double se = std::sqrt(p * (1 - p) / draws);
    out.require(std::abs(ft - p * p) <= 3 * st, "p=" + fmt(p) + ": K3 frequency " + fmt(ft));
    out.require(std::abs(fe - p) <= 3 * se, "p=" + fmt(p) + ": edge frequency " + fmt(fe));
    out.detail << (p < 0.4 ? "" : "; ") << "p=" << fmt(p) << ": K3 " << fmt(ft, 5) << " vs "
               << fmt(p * p, 5) << ", edge " << fmt(fe, 5);
    std::size_t non_cographs = 0;
    for (std::size_t i = 0; i < 10000; ++i)
      if (!is_in_class(sample_brownian_cographon(8, p, rng), PrimeClass::empty())) ++non_cographs;
    out.require(non_cographs == 0, std::to_string(non_cographs) + " non-cographs on 8 vertices");
  }
}

// 9. Pattern densities of uniform graphs with 2000 vertices against the limit.
void graphon_density(const Options& opt, Outcome& out) {
  for (const auto& [name, cls] :
       std::vector<std::pair<std::string, PrimeClass>>{{"empty", PrimeClass::empty()},
                                                       {"paths", PrimeClass::paths()}}) {
    const ClassConstants c = solve_constants(cls);
    const CountCache cache(cls, 2000);
    ExperimentConfig config;
    config.sizes = {2000};
    config.samples = 200;
    config.injections = 2000;
    config.seed = opt.seed;
    config.jobs = opt.jobs;
    config.patterns = {{"K2", LabeledGraph::complete(2)}};
    for (auto& p : cograph_patterns(4)) config.patterns.push_back(std::move(p));
    const ExperimentReport report = density_experiment(cache, c, config);
    double worst = 0.0;
    for (const auto& row : report.rows) {
      const double gap = std::abs(row.empirical - row.predicted);
      worst = std::max(worst, gap);
      out.require(gap <= 0.02, name + " " + row.statistic + ": " + fmt(row.empirical) + " vs " +
                                   fmt(row.predicted));
    }
    const ReportRow* k2 = report.find(2000, "density:K2");
    out.detail << (name == "empty" ? "" : "; ") << name << ": K2 " << fmt(k2->empirical, 5)
               << " vs p = " << fmt(c.p, 5);
    if (name == "paths") out.detail << " (reference 0.288)";
    out.detail << ", worst gap " << fmt(worst, 3);
  }
}

// 10. Law of the induced subtree on three marks at n = 1000.
void subtree_limit(const Options& opt, Outcome& out) {
  const PrimeClass cls = p4_class();
  const ClassConstants c = solve_constants(cls);
  const CountCache cache(cls, 1000);
  ExperimentConfig config;
  config.sizes = {1000};
  config.samples = 1000;
  config.injections = 100;
  config.subtree_leaves = 3;
  config.seed = opt.seed;
  config.jobs = opt.jobs;
  const ExperimentReport report = subtree_experiment(cache, c, config);
  double worst = 0.0, non_binary = 0.0;
  std::size_t shapes = 0;
  for (const auto& row : report.rows) {
    if (row.statistic == "subtree:non_binary") {
      non_binary = row.empirical;
      continue;
    }
    ++shapes;
    const double gap = std::abs(row.empirical - row.predicted);
    worst = std::max(worst, gap);
    out.require(gap <= 0.02,
                row.statistic + ": " + fmt(row.empirical) + " vs " + fmt(row.predicted));
  }
  out.require(shapes == 12, "expected 12 decorated binary shapes, got " + std::to_string(shapes));
  out.require(non_binary < 0.05, "non-binary frequency " + fmt(non_binary));
  out.detail << shapes << " shapes, worst gap " << fmt(worst, 3) << ", non-binary "
             << fmt(non_binary, 3);
}

// 11. E[Occ_P4] n^-3 against K_P4 at n = 250, 500, 1000.
void occ_scaling(const Options& opt, Outcome& out) {
  const PrimeClass cls = p4_class();
  const ClassConstants c = solve_constants(cls);
  const CountCache cache(cls, 1000);
  ExperimentConfig config;
  config.sizes = {250, 500, 1000};
  config.samples = 10000;
  config.seed = opt.seed;
  config.jobs = opt.jobs;
  config.patterns = {{"P4", LabeledGraph::path(4)}};
  const ExperimentReport report = scaling_experiment(cache, c, config);
  double previous = INFINITY;
  out.detail << "K_H " << fmt(report.rows.front().predicted, 5) << ", ratios";
  for (std::size_t n : config.sizes) {
    const ReportRow* row = report.find(n, "occ_scaled_conditional:P4");
    const ReportRow* direct = report.find(n, "occ_scaled:P4");
    out.require(row->ratio >= 0.5 && row->ratio <= 2.0,
                "n=" + std::to_string(n) + " ratio " + fmt(row->ratio) + " outside [0.5, 2]");
    const double gap = std::abs(row->ratio - 1.0);
    out.require(gap <= previous, "|ratio - 1| grows at n=" + std::to_string(n));
    previous = gap;
    out.detail << " " << n << ": " << fmt(row->ratio, 4) << " +- "
               << fmt(row->stderr_of_mean / row->predicted, 2) << " (per-graph "
               << fmt(direct->ratio, 3) << ")";
  }
}

// Relabels leaf j as perm[j - 1].
SubstitutionTree relabel(const SubstitutionTree& t, const std::vector<std::size_t>& perm) {
  if (t.is_leaf()) return SubstitutionTree::leaf(perm[t.label() - 1]);
  std::vector<SubstitutionTree> kids;
  for (const auto& c : t.children()) kids.push_back(relabel(c, perm));
  if (t.is_linear()) return SubstitutionTree::linear(t.kind(), std::move(kids));
  return SubstitutionTree::node(t.graph_decoration(), std::move(kids));
}

// 12. Marked-tree series against brute force over all trees with at most 7 leaves.
void marked_tree_series(const Options&, Outcome& out) {
  using S = SubstitutionTree;
  const std::vector<std::pair<std::string, SubstitutionTree>> taus = {
      {"join-cherry", S::join({S::leaf(1), S::leaf(2)})},
      {"union-cherry", S::union_of({S::leaf(1), S::leaf(2)})},
      {"J(U(1,2),3)", S::join({S::union_of({S::leaf(1), S::leaf(2)}), S::leaf(3)})}};
  constexpr std::size_t top = 7;
  const std::vector<std::pair<std::string, PrimeClass>> classes = {{"empty", PrimeClass::empty()},
                                                                   {"P4", p4_class()}};
  std::vector<std::string> keys;
  for (const auto& [tname, tau] : taus) keys.push_back(tree_key(tau));
  std::vector<std::vector<ExactSeries>> series;
  for (const auto& [name, cls] : classes) {
    const SeriesBundle bundle = solve_tree_series(cls, top);
    series.emplace_back();
    for (const auto& [tname, tau] : taus) series.back().push_back(t_tau_total(tau, cls, bundle));
  }
  // Induced subtree key -> number of mark permutations turning it into each tau.
  std::map<std::string, std::vector<std::uint64_t>> matches;
  for (std::size_t n = 1; n <= top; ++n) {
    std::vector<std::vector<std::uint64_t>> brute(classes.size(),
                                                  std::vector<std::uint64_t>(taus.size(), 0));
    for_each_graph(n, [&](const LabeledGraph& g) {
      const SubstitutionTree t = modular_decomposition(g);
      std::vector<std::size_t> members;
      for (std::size_t c = 0; c < classes.size(); ++c)
        if (tree_in_class(t, classes[c].second)) members.push_back(c);
      if (members.empty()) return;
      for (std::size_t l = 2; l <= std::min<std::size_t>(3, n); ++l) {
        // Every injection is an l-subset followed by a permutation of the marks.
        std::vector<bool> chosen(n, false);
        std::fill(chosen.begin(), chosen.begin() + static_cast<long>(l), true);
        std::sort(chosen.begin(), chosen.end());
        do {
          std::vector<Vertex> subset;
          for (std::size_t v = 0; v < n; ++v)
            if (chosen[v]) subset.push_back(v);
          const SubstitutionTree sub = induced_subtree(t, PartialInjection::from_sources(subset));
          auto [it, fresh] = matches.try_emplace(tree_key(sub));
          if (fresh) {
            it->second.assign(taus.size(), 0);
            std::vector<std::size_t> perm(l);
            std::iota(perm.begin(), perm.end(), 1);
            do {
              const std::string key = tree_key(relabel(sub, perm));
              for (std::size_t ti = 0; ti < taus.size(); ++ti)
                if (key == keys[ti]) ++it->second[ti];
            } while (std::next_permutation(perm.begin(), perm.end()));
          }
          for (std::size_t ti = 0; ti < taus.size(); ++ti)
            for (std::size_t c : members) brute[c][ti] += it->second[ti];
        } while (std::next_permutation(chosen.begin(), chosen.end()));
      }
    });
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (std::size_t ti = 0; ti < taus.size(); ++ti) {
        const BigInt predicted = series[c][ti].count(n);
        out.require(predicted == brute[c][ti],
                    classes[c].first + " " + taus[ti].first + " n=" + std::to_string(n) +
                        ": series " + to_string(predicted) + ", brute force " +
                        std::to_string(brute[c][ti]));
      }
  }
  if (out.passed) out.detail << "3 trees x 2 classes x n=1..7 agree";
}

// 13. Expanded trees of every graph with at most 5 vertices.
void expanded_trees(const Options&, Outcome& out) {
  std::size_t graphs = 0, trees = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for_each_graph(n, [&](const LabeledGraph& g) {
      ++graphs;
      const SubstitutionTree md = modular_decomposition(g);
      BigInt expected(1);
      auto walk = [&](auto&& self, const SubstitutionTree& t) -> void {
        if (t.is_leaf()) return;
        if (t.is_linear()) expected *= double_factorial(2 * static_cast<long>(t.children().size()) - 3);
        for (const auto& c : t.children()) self(self, c);
      };
      walk(walk, md);
      const Rational b = beta_of_tree(md);
      const BigInt edges = BigInt(2 * static_cast<long>(n) - 2) - BigInt(Rational(2 * b).get_num());
      BigInt seen(0);
      bool ok = true;
      for_each_expanded_tree(g, [&](const SubstitutionTree& t) {
        seen += 1;
        ++trees;
        ok = ok && BigInt(static_cast<unsigned long>(t.edge_count())) == edges &&
             graph_of(t) == g;
      });
      out.require(ok, "bad expanded tree for " + std::to_string(n) + "-vertex graph");
      out.require(seen == expected && expanded_tree_count(g) == expected,
                  "count " + to_string(seen) + " vs product " + to_string(expected));
    });
  if (out.passed) out.detail << graphs << " graphs, " << trees << " expanded trees";
}

using Check = void (*)(const Options&, Outcome&);

const std::vector<std::pair<Criterion, Check>>& table() {
  static const std::vector<std::pair<Criterion, Check>> t = {
      {{1, "exact counts vs brute force"}, exact_counts},
      {{2, "modular decomposition round trip"}, md_round_trip},
      {{3, "occurrence series sum equals derivative of P"}, occ_derivative},
      {{4, "constants closed forms"}, constants_closed_forms},
      {{5, "path class p = 0.288"}, paths_p},
      {{6, "count asymptotics"}, count_asymptotics},
      {{7, "sampler exactness"}, sampler_exactness},
      {{8, "Brownian cographon sampler"}, brownian_sampler},
      {{9, "graphon-limit densities"}, graphon_density},
      {{10, "induced subtree distribution"}, subtree_limit},
      {{11, "occurrence scaling exponent"}, occ_scaling},
      {{12, "marked-tree series oracle"}, marked_tree_series},
      {{13, "expanded trees"}, expanded_trees},
  };
  return t;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = [] {
    std::vector<Criterion> out;
    for (const auto& [c, fn] : table()) out.push_back(c);
    return out;
  }();
  return list;
}

std::vector<CriterionResult> run(const Options& options) {
  std::vector<CriterionResult> results;
  for (const auto& [criterion, check] : table()) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), criterion.id) == options.only.end())
      continue;
    CriterionResult r;
    r.id = criterion.id;
    r.title = criterion.title;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      check(options, out);
      r.passed = out.passed;
      r.detail = out.detail.str();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (options.on_result) options.on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed ? "PASS" : "FAIL") << ' ' << r.id << ' ' << r.title << ": " << r.detail << " ("
    << fmt(r.seconds, 3) << " s)";
  return s.str();
}

std::string summary_json(const std::vector<CriterionResult>& results) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : results)
    j.push_back({{"id", r.id},
                 {"title", r.title},
                 {"passed", r.passed},
                 {"detail", r.detail},
                 {"seconds", r.seconds}});
  return j.dump(2) + "\n";
}

}  // namespace modgraph::acceptance
