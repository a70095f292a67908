#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "modgraph/graph.hpp"

namespace modgraph {

// Text format: first line `n`, then one `u v` line per edge, 1-based labels.
LabeledGraph parse_graph(std::string_view text);
std::string format_graph(const LabeledGraph& g);

// Several graphs separated by blank lines.
std::vector<LabeledGraph> parse_graph_stream(std::string_view text);

LabeledGraph read_graph_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace modgraph
