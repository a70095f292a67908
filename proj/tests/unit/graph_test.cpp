#include "doctest.h"
#include "modgraph/errors.hpp"
#include "modgraph/graph.hpp"
#include "modgraph/graph_io.hpp"

using namespace modgraph;

TEST_CASE("graph text round trip") {
  const LabeledGraph p4 = LabeledGraph::path(4);
  CHECK(format_graph(p4) == "4\n1 2\n2 3\n3 4\n");
  CHECK(parse_graph(format_graph(p4)) == p4);
  CHECK(parse_graph("1\n").size() == 1);
}

TEST_CASE("graph parse errors carry line numbers") {
  CHECK_THROWS_AS(parse_graph("3\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("3\n1 4\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("3\n1 2\n2 1\n"), ParseError);
  try {
    parse_graph("3\n1 2\n2 2\n");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("occurrence conventions") {
  const LabeledGraph p4 = LabeledGraph::path(4);
  CHECK(occ_count(LabeledGraph::complete(2), p4) == 6);
  CHECK(occ_count(p4, p4) == 24);
  CHECK(occ_count_labeled(p4, p4) == 2);
  CHECK(induced_copies(p4, p4) == 1);
  CHECK(automorphism_count(p4) == 2);
  CHECK(automorphism_count(LabeledGraph::cycle(5)) == 10);
}

TEST_CASE("primality") {
  CHECK(is_prime(LabeledGraph::path(4)));
  CHECK(is_prime(LabeledGraph::cycle(5)));
  CHECK_FALSE(is_prime(LabeledGraph::cycle(4)));
  CHECK_FALSE(is_prime(LabeledGraph::complete(3)));
}

TEST_CASE("canonical codes identify isomorphism classes") {
  const LabeledGraph a = LabeledGraph::from_edges(4, {{1, 3}, {3, 2}, {2, 4}});
  CHECK(canonical_code(a) == canonical_code(LabeledGraph::path(4)));
  CHECK(are_isomorphic(a, LabeledGraph::path(4)));
  CHECK(canonical_code(LabeledGraph::cycle(4)) != canonical_code(LabeledGraph::path(4)));
}
