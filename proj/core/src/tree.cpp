#include "modgraph/tree.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "modgraph/errors.hpp"
#include "modgraph/graph_io.hpp"

namespace modgraph {

namespace {

bool is_complete(const LabeledGraph& g) {
  return g.edge_count() * 2 == g.size() * (g.size() - 1);
}

}  // namespace

SubstitutionTree SubstitutionTree::leaf(std::size_t label) {
  if (label == 0) throw ContractViolation("leaf labels are positive");
  SubstitutionTree t;
  t.kind_ = NodeKind::Leaf;
  t.label_ = label;
  t.min_label_ = label;
  t.leaves_ = 1;
  return t;
}

SubstitutionTree SubstitutionTree::linear(NodeKind kind, std::vector<SubstitutionTree> children) {
  if (kind != NodeKind::Join && kind != NodeKind::Union)
    throw ContractViolation("linear nodes are join or union");
  if (children.size() < 2) throw ContractViolation("internal nodes need at least two children");
  std::sort(children.begin(), children.end(),
            [](const SubstitutionTree& a, const SubstitutionTree& b) {
              return a.min_label_ < b.min_label_;
            });
  SubstitutionTree t;
  t.kind_ = kind;
  t.leaves_ = 0;
  for (const auto& c : children) t.leaves_ += c.leaves_;
  t.min_label_ = children.front().min_label_;
  for (std::size_t i = 1; i < children.size(); ++i)
    if (children[i].min_label_ == children[i - 1].min_label_)
      throw ContractViolation("leaf labels must be distinct");
  t.children_ = std::move(children);
  return t;
}

SubstitutionTree SubstitutionTree::join(std::vector<SubstitutionTree> children) {
  return linear(NodeKind::Join, std::move(children));
}

SubstitutionTree SubstitutionTree::union_of(std::vector<SubstitutionTree> children) {
  return linear(NodeKind::Union, std::move(children));
}

SubstitutionTree SubstitutionTree::node(const LabeledGraph& decoration,
                                        std::vector<SubstitutionTree> children) {
  if (decoration.size() != children.size())
    throw ContractViolation("decoration size must equal the number of children");
  if (children.size() < 2) throw ContractViolation("internal nodes need at least two children");
  if (is_complete(decoration)) return join(std::move(children));
  if (decoration.edge_count() == 0) return union_of(std::move(children));
  std::vector<std::size_t> order(children.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return children[a].min_label_ < children[b].min_label_;
  });
  SubstitutionTree t;
  t.kind_ = NodeKind::Graph;
  t.decoration_ = induced_on(decoration, order);
  t.leaves_ = 0;
  t.children_.reserve(children.size());
  for (std::size_t i : order) {
    t.leaves_ += children[i].leaves_;
    t.children_.push_back(std::move(children[i]));
  }
  t.min_label_ = t.children_.front().min_label_;
  for (std::size_t i = 1; i < t.children_.size(); ++i)
    if (t.children_[i].min_label_ == t.children_[i - 1].min_label_)
      throw ContractViolation("leaf labels must be distinct");
  return t;
}

LabeledGraph SubstitutionTree::decoration() const {
  switch (kind_) {
    case NodeKind::Join:
      return LabeledGraph::complete(children_.size());
    case NodeKind::Union:
      return LabeledGraph::edgeless(children_.size());
    case NodeKind::Graph:
      return decoration_;
    case NodeKind::Leaf:
      break;
  }
  throw ContractViolation("leaves carry no decoration");
}

std::size_t SubstitutionTree::internal_count() const {
  if (is_leaf()) return 0;
  std::size_t n = 1;
  for (const auto& c : children_) n += c.internal_count();
  return n;
}

std::size_t SubstitutionTree::edge_count() const {
  std::size_t n = children_.size();
  for (const auto& c : children_) n += c.edge_count();
  return n;
}

std::vector<std::size_t> SubstitutionTree::leaf_labels() const {
  std::vector<std::size_t> out;
  out.reserve(leaves_);
  std::vector<const SubstitutionTree*> stack{this};
  while (!stack.empty()) {
    const SubstitutionTree* t = stack.back();
    stack.pop_back();
    if (t->is_leaf()) out.push_back(t->label_);
    for (const auto& c : t->children_) stack.push_back(&c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool SubstitutionTree::is_reduced() const {
  std::vector<std::size_t> labels = leaf_labels();
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != i + 1) return false;
  return true;
}

bool SubstitutionTree::is_binary() const {
  if (is_leaf()) return true;
  if (children_.size() != 2) return false;
  return children_[0].is_binary() && children_[1].is_binary();
}

bool SubstitutionTree::operator==(const SubstitutionTree& other) const {
  if (kind_ != other.kind_ || leaves_ != other.leaves_) return false;
  if (kind_ == NodeKind::Leaf) return label_ == other.label_;
  if (kind_ == NodeKind::Graph && !(decoration_ == other.decoration_)) return false;
  return children_ == other.children_;
}

std::vector<NodePath> internal_nodes(const SubstitutionTree& t) {
  std::vector<NodePath> out;
  NodePath path;
  auto walk = [&](auto&& self, const SubstitutionTree& node) -> void {
    if (node.is_leaf()) return;
    out.push_back(path);
    for (std::size_t i = 0; i < node.children().size(); ++i) {
      path.push_back(i);
      self(self, node.children()[i]);
      path.pop_back();
    }
  };
  walk(walk, t);
  return out;
}

const SubstitutionTree& subtree_at(const SubstitutionTree& t, const NodePath& path) {
  const SubstitutionTree* cur = &t;
  for (std::size_t i : path) {
    if (i >= cur->children().size()) throw ContractViolation("node path out of range");
    cur = &cur->children()[i];
  }
  return *cur;
}

std::string tree_key(const SubstitutionTree& t) {
  if (t.is_leaf()) return std::to_string(t.label());
  std::string out;
  switch (t.kind()) {
    case NodeKind::Join:
      out = "J(";
      break;
    case NodeKind::Union:
      out = "U(";
      break;
    default: {
      out = "G[";
      for (auto [u, v] : t.graph_decoration().edges())
        out += std::to_string(u + 1) + "-" + std::to_string(v + 1) + ";";
      out += "](";
    }
  }
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    if (i) out += ",";
    out += tree_key(t.children()[i]);
  }
  return out + ")";
}

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const SubstitutionTree& t) {
  Json j;
  if (t.is_leaf()) {
    j["leaf"] = t.label();
    return j;
  }
  if (t.kind() == NodeKind::Join) {
    j["dec"] = "join";
  } else if (t.kind() == NodeKind::Union) {
    j["dec"] = "union";
  } else {
    j["dec"] = Json{{"prime", format_graph(t.graph_decoration())}};
  }
  Json kids = Json::array();
  for (const auto& c : t.children()) kids.push_back(to_json(c));
  j["children"] = std::move(kids);
  return j;
}

SubstitutionTree from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("tree node must be an object", 0);
  if (j.contains("leaf")) {
    if (!j["leaf"].is_number_unsigned() || j["leaf"].get<std::size_t>() == 0)
      throw ParseError("leaf label must be a positive integer", 0);
    return SubstitutionTree::leaf(j["leaf"].get<std::size_t>());
  }
  if (!j.contains("dec") || !j.contains("children") || !j["children"].is_array())
    throw ParseError("internal node needs 'dec' and 'children'", 0);
  std::vector<SubstitutionTree> kids;
  for (const auto& c : j["children"]) kids.push_back(from_json(c));
  if (kids.size() < 2) throw ParseError("internal node needs at least two children", 0);
  const Json& dec = j["dec"];
  if (dec.is_string()) {
    if (dec == "join") return SubstitutionTree::join(std::move(kids));
    if (dec == "union") return SubstitutionTree::union_of(std::move(kids));
    throw ParseError("unknown decoration '" + dec.get<std::string>() + "'", 0);
  }
  if (dec.is_object() && dec.contains("prime") && dec["prime"].is_string()) {
    LabeledGraph g = parse_graph(dec["prime"].get<std::string>());
    if (g.size() != kids.size())
      throw ParseError("prime decoration size differs from child count", 0);
    return SubstitutionTree::node(g, std::move(kids));
  }
  throw ParseError("malformed decoration", 0);
}

}  // namespace

std::string tree_to_json(const SubstitutionTree& t, int indent) {
  return to_json(t).dump(indent) + "\n";
}

SubstitutionTree tree_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 0);
  }
  try {
    return from_json(j);
  } catch (const ContractViolation& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace modgraph
