#include "doctest.h"
#include "modgraph/decomposition.hpp"
#include "modgraph/graph_io.hpp"
#include "modgraph/prime_class.hpp"
#include "modgraph/tree.hpp"

using namespace modgraph;

TEST_CASE("decomposition of small graphs") {
  CHECK(modular_decomposition(LabeledGraph(1)).is_leaf());
  const SubstitutionTree c4 = modular_decomposition(LabeledGraph::cycle(4));
  CHECK(tree_key(c4) == "J(U(1,3),U(2,4))");
  const SubstitutionTree p4 = modular_decomposition(LabeledGraph::path(4));
  CHECK(p4.kind() == NodeKind::Graph);
  CHECK(p4.children().size() == 4);
}

TEST_CASE("tree json round trip") {
  const SubstitutionTree t = modular_decomposition(read_graph_file(MODGRAPH_DATA_DIR "/graphs/c4_pendant.txt"));
  CHECK(tree_from_json(tree_to_json(t)) == t);
  CHECK(graph_of(t) == read_graph_file(MODGRAPH_DATA_DIR "/graphs/c4_pendant.txt"));
}

TEST_CASE("beta") {
  CHECK(beta(LabeledGraph::path(5)) == Rational(3, 2));
  CHECK(beta(LabeledGraph::path(4)) == Rational(1));
  CHECK(beta(LabeledGraph::complete(3)) == Rational(0));
}

TEST_CASE("class membership") {
  const PrimeClass p4 = PrimeClass::finite({LabeledGraph::path(4)});
  CHECK(is_in_class(LabeledGraph::path(4), p4));
  CHECK_FALSE(is_in_class(LabeledGraph::path(4), PrimeClass::empty()));
  CHECK_FALSE(is_in_class(LabeledGraph::path(5), p4));
  CHECK(is_in_class(LabeledGraph::path(5), PrimeClass::paths()));
  CHECK_FALSE(is_in_class(LabeledGraph::cycle(5), PrimeClass::paths()));
}

TEST_CASE("expanded trees of a cograph") {
  const LabeledGraph k3 = LabeledGraph::complete(3);
  CHECK(expanded_tree_count(k3) == 3);
  std::size_t seen = 0;
  for_each_expanded_tree(k3, [&](const SubstitutionTree& t) {
    ++seen;
    CHECK(t.is_binary());
    CHECK(graph_of(t) == k3);
  });
  CHECK(seen == 3);
}
