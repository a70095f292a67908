#include "doctest.h"
#include "modgraph/count_cache.hpp"
#include "modgraph/decomposition.hpp"
#include "modgraph/experiments.hpp"
#include "modgraph/graph_io.hpp"
#include "modgraph/sampler.hpp"

using namespace modgraph;

TEST_CASE("sampled trees are decomposition trees of class members") {
  const PrimeClass cls = PrimeClass::paths();
  const CountCache cache(cls, 60);
  RngStream rng(5, 1);
  for (std::size_t n : {1, 2, 7, 60}) {
    const SubstitutionTree t = sample_uniform_tree(cache, n, rng);
    CHECK(t.leaf_count() == n);
    CHECK(t.is_reduced());
    CHECK(is_md_tree(t));
    CHECK(tree_in_class(t, cls));
    CHECK(modular_decomposition(graph_of(t)) == t);
  }
}

TEST_CASE("sampling is deterministic per stream") {
  const CountCache cache(PrimeClass::empty(), 40);
  RngStream a(11, 3), b(11, 3), c(11, 4);
  const LabeledGraph ga = sample_uniform_graph(cache, 40, a);
  CHECK(ga == sample_uniform_graph(cache, 40, b));
  CHECK_FALSE(ga == sample_uniform_graph(cache, 40, c));
}

TEST_CASE("injections are injective") {
  RngStream rng(1, 1);
  for (std::size_t n : {5, 1000}) {
    const PartialInjection inj = sample_injection(n, 5, rng);
    CHECK(inj.size() == 5);
    CHECK(inj.image_is_prefix());
    for (Vertex v : inj.sources()) CHECK(v < n);
  }
}

TEST_CASE("brownian samples are cographs") {
  RngStream rng(2, 2);
  for (int i = 0; i < 200; ++i)
    CHECK(is_in_class(sample_brownian_cographon(6, 0.3, rng), PrimeClass::empty()));
}

TEST_CASE("prime occurrences from the tree match brute force") {
  const PrimeClass cls = PrimeClass::finite({LabeledGraph::path(4), LabeledGraph::cycle(5)});
  const CountCache cache(cls, 12);
  RngStream rng(3, 3);
  for (int i = 0; i < 30; ++i) {
    const SubstitutionTree t = sample_uniform_tree(cache, 12, rng);
    const LabeledGraph g = graph_of(t);
    CHECK(prime_occurrences(t, LabeledGraph::path(4)) ==
          occ_count_labeled(LabeledGraph::path(4), g));
    CHECK(prime_occurrences(t, LabeledGraph::cycle(5)) ==
          occ_count_labeled(LabeledGraph::cycle(5), g));
  }
}
