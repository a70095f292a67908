#include "modgraph/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "modgraph/errors.hpp"

namespace modgraph {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("expected a nonnegative integer, got '" + std::string(tok) + "'", line);
  return v;
}

struct Line {
  std::string_view text;
  std::size_t number;
};

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0, number = 1;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back({text.substr(start, end - start), number++});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

LabeledGraph parse_block(const std::vector<Line>& lines, std::size_t first, std::size_t last) {
  auto head = split_ws(lines[first].text);
  if (head.size() != 1) throw ParseError("first line must hold the vertex count", lines[first].number);
  const std::size_t n = parse_count(head[0], lines[first].number);
  LabeledGraph g(n);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = first + 1; i < last; ++i) {
    auto tok = split_ws(lines[i].text);
    if (tok.empty()) continue;
    const std::size_t ln = lines[i].number;
    if (tok.size() != 2) throw ParseError("edge line must hold two labels", ln);
    std::size_t u = parse_count(tok[0], ln), v = parse_count(tok[1], ln);
    if (u < 1 || u > n || v < 1 || v > n) throw ParseError("edge label out of range", ln);
    if (u == v) throw ParseError("self-loop", ln);
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second)
      throw ParseError("duplicate edge", ln);
    g.add_edge(u - 1, v - 1);
  }
  return g;
}

bool blank(std::string_view s) { return split_ws(s).empty(); }

}  // namespace

LabeledGraph parse_graph(std::string_view text) {
  auto lines = lines_of(text);
  std::size_t first = 0;
  while (first < lines.size() && blank(lines[first].text)) ++first;
  if (first == lines.size()) throw ParseError("empty graph text", 0);
  for (std::size_t i = first + 1; i < lines.size(); ++i) {
    if (!blank(lines[i].text)) continue;
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (!blank(lines[j].text)) throw ParseError("unexpected content after blank line", lines[j].number);
  }
  return parse_block(lines, first, lines.size());
}

std::vector<LabeledGraph> parse_graph_stream(std::string_view text) {
  auto lines = lines_of(text);
  std::vector<LabeledGraph> out;
  std::size_t i = 0;
  while (i < lines.size()) {
    while (i < lines.size() && blank(lines[i].text)) ++i;
    if (i == lines.size()) break;
    std::size_t j = i + 1;
    while (j < lines.size() && !blank(lines[j].text)) ++j;
    out.push_back(parse_block(lines, i, j));
    i = j;
  }
  return out;
}

std::string format_graph(const LabeledGraph& g) {
  std::string out = std::to_string(g.size()) + "\n";
  for (auto [u, v] : g.edges()) {
    out += std::to_string(u + 1);
    out += ' ';
    out += std::to_string(v + 1);
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

LabeledGraph read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

}  // namespace modgraph
