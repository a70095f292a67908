#pragma once

#include <cstddef>

#include "modgraph/count_cache.hpp"
#include "modgraph/graph.hpp"
#include "modgraph/rng.hpp"
#include "modgraph/tree.hpp"

namespace modgraph {

// Exactly uniform over reduced trees of the cache's class with n leaves.
SubstitutionTree sample_uniform_tree(const CountCache& cache, std::size_t n, RngStream& rng);
// graph_of of a uniform tree, hence uniform over graphs of the class with n vertices.
LabeledGraph sample_uniform_graph(const CountCache& cache, std::size_t n, RngStream& rng);

// Uniform leaf-labeled binary tree on k leaves by leaf insertion, nodes i.i.d. join w.p. p.
// Not reduced: a join may sit under a join.
SubstitutionTree sample_binary_tree(std::size_t k, double p, RngStream& rng);
// Graph of sample_binary_tree: the law of Sample_k of the Brownian cographon.
LabeledGraph sample_brownian_cographon(std::size_t k, double p, RngStream& rng);

// Uniform among injections of l labels from 1..n onto marks 1..l.
PartialInjection sample_injection(std::size_t n, std::size_t l, RngStream& rng);

}  // namespace modgraph
