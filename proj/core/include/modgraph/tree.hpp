#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "modgraph/graph.hpp"

namespace modgraph {

enum class NodeKind { Leaf, Join, Union, Graph };

// Rooted non-plane tree with leaf labels and join / union / graph decorations.
// Children are kept sorted by minimal leaf label, so structural equality is tree equality.
class SubstitutionTree {
 public:
  static SubstitutionTree leaf(std::size_t label);
  static SubstitutionTree join(std::vector<SubstitutionTree> children);
  static SubstitutionTree union_of(std::vector<SubstitutionTree> children);
  static SubstitutionTree linear(NodeKind kind, std::vector<SubstitutionTree> children);
  // Vertex i of `decoration` attaches to children[i]. Complete and edgeless
  // decorations are normalised to join and union.
  static SubstitutionTree node(const LabeledGraph& decoration,
                               std::vector<SubstitutionTree> children);

  NodeKind kind() const { return kind_; }
  bool is_leaf() const { return kind_ == NodeKind::Leaf; }
  bool is_linear() const { return kind_ == NodeKind::Join || kind_ == NodeKind::Union; }
  std::size_t label() const { return label_; }
  const std::vector<SubstitutionTree>& children() const { return children_; }

  // Decoration on the children in canonical order; K_d or edgeless for linear nodes.
  LabeledGraph decoration() const;
  // Only meaningful for NodeKind::Graph.
  const LabeledGraph& graph_decoration() const { return decoration_; }

  std::size_t leaf_count() const { return leaves_; }
  std::size_t min_label() const { return min_label_; }
  std::size_t internal_count() const;
  std::size_t edge_count() const;
  std::vector<std::size_t> leaf_labels() const;
  bool is_reduced() const;
  bool is_binary() const;

  bool operator==(const SubstitutionTree& other) const;

 private:
  SubstitutionTree() = default;

  NodeKind kind_ = NodeKind::Leaf;
  std::size_t label_ = 0;
  LabeledGraph decoration_;
  std::vector<SubstitutionTree> children_;
  std::size_t leaves_ = 1;
  std::size_t min_label_ = 0;
};

// Child indices from the root.
using NodePath = std::vector<std::size_t>;

// Internal nodes in preorder.
std::vector<NodePath> internal_nodes(const SubstitutionTree& t);
const SubstitutionTree& subtree_at(const SubstitutionTree& t, const NodePath& path);

// Compact one-line rendering, e.g. "J(1,U(2,3))"; stable and used as a map key.
std::string tree_key(const SubstitutionTree& t);

std::string tree_to_json(const SubstitutionTree& t, int indent = 2);
SubstitutionTree tree_from_json(std::string_view text);

}  // namespace modgraph
