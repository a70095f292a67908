#include "doctest.h"
#include "modgraph/count_cache.hpp"
#include "modgraph/decomposition.hpp"
#include "modgraph/experiments.hpp"
#include "modgraph/prime_class.hpp"
#include "modgraph/tree_series.hpp"

using namespace modgraph;

namespace {

// Exact E[labeled Occ_H] over uniform class members of size n, by enumeration.
double exact_mean_occ(const PrimeClass& cls, const LabeledGraph& h, std::size_t n) {
  BigInt total(0), members(0);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * (n - 1) / 2)); ++code) {
    const LabeledGraph g = graph_from_code(n, code);
    if (!is_in_class(g, cls)) continue;
    members += 1;
    total += occ_count_labeled(h, g);
  }
  return Rational(total, members).get_d();
}

}  // namespace

TEST_CASE("conditional occurrence estimator is unbiased") {
  const PrimeClass cls = PrimeClass::finite({LabeledGraph::path(4)});
  const LabeledGraph h = LabeledGraph::path(4);
  const std::size_t n = 6;
  const CountCache cache(cls, n);
  REQUIRE(ConditionalOccurrence::applicable(cache, h));
  const ConditionalOccurrence estimator(cache, h, n);
  // Averaging the estimator over every class member gives the exact mean.
  double sum = 0.0;
  std::size_t members = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << 15); ++code) {
    const LabeledGraph g = graph_from_code(n, code);
    if (!is_in_class(g, cls)) continue;
    ++members;
    sum += estimator.total(modular_decomposition(g));
  }
  CHECK(sum / static_cast<double>(members) == doctest::Approx(exact_mean_occ(cls, h, n)));
}

TEST_CASE("reports are independent of the worker count") {
  const PrimeClass cls = PrimeClass::empty();
  const CountCache cache(cls, 50);
  const ClassConstants c = solve_constants(cls);
  ExperimentConfig config;
  config.sizes = {30, 50};
  config.samples = 8;
  config.injections = 50;
  config.patterns = {{"K2", LabeledGraph::complete(2)}, {"K3", LabeledGraph::complete(3)}};
  config.subtree_leaves = 2;
  config.jobs = 1;
  const std::string serial = density_experiment(cache, c, config).to_csv();
  config.jobs = 3;
  CHECK(density_experiment(cache, c, config).to_csv() == serial);
}

TEST_CASE("csv layout") {
  const PrimeClass cls = PrimeClass::empty();
  const CountCache cache(cls, 20);
  ExperimentConfig config;
  config.sizes = {20};
  config.samples = 4;
  config.patterns = {{"K2", LabeledGraph::complete(2)}};
  const std::string csv = density_experiment(cache, solve_constants(cls), config).to_csv();
  CHECK(csv.rfind("n,statistic,samples,empirical,stderr,predicted,ratio\n", 0) == 0);
  CHECK(csv.find("20,density:K2,4,") != std::string::npos);
}

TEST_CASE("format_double is shortest round trip") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1e-20) == "1e-20");
  CHECK(format_double(3.0) == "3");
}

TEST_CASE("cograph patterns of size 4") {
  CHECK(cograph_patterns(4).size() == 10);
  CHECK(cograph_patterns(3).size() == 4);
}
