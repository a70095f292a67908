#include "doctest.h"
#include "modgraph/count_cache.hpp"
#include "modgraph/prime_class.hpp"
#include "modgraph/series.hpp"
#include "modgraph/tree_series.hpp"

using namespace modgraph;

TEST_CASE("series arithmetic") {
  const ExactSeries z = ExactSeries::variable(6);
  const ExactSeries e = exp(z);
  for (std::size_t n = 0; n <= 6; ++n) CHECK(e.count(n) == 1);
  CHECK(log(e) == z);
  CHECK(derive(e).truncated(5) == e.truncated(5));
}

TEST_CASE("tree counts") {
  const SeriesBundle empty = solve_tree_series(PrimeClass::empty(), 8);
  const std::vector<long> cographs = {1, 2, 8, 52, 472, 5504, 78416, 1320064};
  for (std::size_t n = 1; n <= 8; ++n) CHECK(empty.T.count(n) == cographs[n - 1]);
  const SeriesBundle paths = solve_tree_series(PrimeClass::paths(), 8);
  const std::vector<long> path_counts = {1, 2, 8, 64, 892, 16784, 374936, 9623968};
  for (std::size_t n = 1; n <= 8; ++n) CHECK(paths.T.count(n) == path_counts[n - 1]);
}

TEST_CASE("blossom identity") {
  const SeriesBundle b = solve_tree_series(PrimeClass::finite({LabeledGraph::path(4)}), 10);
  CHECK((b.T_join * exp(b.T_not_join)).truncated(9) == b.T_derivative.truncated(9));
}

TEST_CASE("count cache agrees with the series") {
  for (const auto& cls : {PrimeClass::empty(), PrimeClass::paths(),
                          PrimeClass::finite({LabeledGraph::path(4), LabeledGraph::cycle(5)})}) {
    const SeriesBundle b = solve_tree_series(cls, 14);
    const CountCache cache(cls, 14);
    for (std::size_t n = 1; n <= 14; ++n) CHECK(cache.trees()[n] == b.T.count(n));
  }
}

TEST_CASE("prime series of the path class") {
  const ExactSeries p = prime_series(PrimeClass::paths(), 8);
  CHECK(p.count(3) == 0);
  CHECK(p.count(4) == 12);
  CHECK(p.count(5) == 60);
}
