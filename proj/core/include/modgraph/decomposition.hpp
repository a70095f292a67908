#pragma once

#include <functional>
#include <vector>

#include "modgraph/graph.hpp"
#include "modgraph/numbers.hpp"
#include "modgraph/tree.hpp"

namespace modgraph {

class PrimeClass;

// Requires a reduced tree; leaf j becomes vertex j.
LabeledGraph graph_of(const SubstitutionTree& t);

SubstitutionTree modular_decomposition(const LabeledGraph& g);

// No join under join, no union under union, graph decorations prime.
bool is_md_tree(const SubstitutionTree& t);

// Marks become the new leaf labels; image of `inj` must be {1..l} with l >= 1.
SubstitutionTree induced_subtree(const SubstitutionTree& t, const PartialInjection& inj);

// Replaces the node at `at` by `tau`, whose leaf j receives the j-th child.
SubstitutionTree inflate(const SubstitutionTree& t, const NodePath& at,
                         const SubstitutionTree& tau);

// All (2k-3)!! leaf-labelled binary trees on leaves 1..k, internal nodes of `kind`.
std::vector<SubstitutionTree> binary_trees(std::size_t k, NodeKind kind);
// Same shape with internal nodes (preorder) re-decorated by `kinds`.
SubstitutionTree redecorate(const SubstitutionTree& shape, const std::vector<NodeKind>& kinds);

BigInt expanded_tree_count(const LabeledGraph& g);
void for_each_expanded_tree(const LabeledGraph& g,
                            const std::function<void(const SubstitutionTree&)>& visit);

Rational beta(const LabeledGraph& g);
Rational beta_of_tree(const SubstitutionTree& md);

bool tree_in_class(const SubstitutionTree& t, const PrimeClass& cls);
bool is_in_class(const LabeledGraph& g, const PrimeClass& cls);

}  // namespace modgraph
