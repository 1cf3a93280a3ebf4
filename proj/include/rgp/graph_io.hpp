#pragma once

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rgp/graph.hpp"

namespace rgp {

// Text format:
//   n m d          (d = -1 when the graph is not regular)
//   u v            (m lines, u < v, sorted lexicographically)

inline std::string write_graph(const Graph& g) {
  std::string out;
  out.reserve(16 + g.size() * 14);
  const auto d = g.regular_degree();
  out += std::to_string(g.order()) + ' ' + std::to_string(g.size()) + ' ' +
         (d ? std::to_string(*d) : std::string("-1")) + '\n';
  for (const auto& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) throw GraphError("graph file: missing trailing newline");
    line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_no_;
    return true;
  }
  std::size_t line_no() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

// Parses exactly `count` space-separated integers with nothing else on the line.
template <typename T>
bool parse_fields(std::string_view line, std::vector<T>& out, std::size_t count) {
  out.clear();
  std::size_t pos = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) {
      if (pos >= line.size() || line[pos] != ' ') return false;
      ++pos;
    }
    T value{};
    const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
    if (ec != std::errc{} || ptr == line.data() + pos) return false;
    pos = static_cast<std::size_t>(ptr - line.data());
    out.push_back(value);
  }
  return pos == line.size();
}

}  // namespace detail

/// Strict reader: rejects malformed lines, loops, duplicates, unsorted edges,
/// and a header whose m or d disagrees with the body.
inline Graph read_graph(std::string_view text) {
  detail::LineReader reader(text);
  std::string_view line;
  if (!reader.next(line)) throw GraphError("graph file: empty input");
  std::vector<long long> header;
  if (!detail::parse_fields(line, header, 3) || header[0] < 0 || header[1] < 0 || header[2] < -1) {
    throw GraphError("graph file: malformed header");
  }
  const auto n = static_cast<std::size_t>(header[0]);
  const auto m = static_cast<std::size_t>(header[1]);

  std::vector<Edge> edges;
  edges.reserve(m);
  std::vector<unsigned long long> fields;
  while (reader.next(line)) {
    const auto where = "graph file line " + std::to_string(reader.line_no()) + ": ";
    if (!detail::parse_fields(line, fields, 2)) throw GraphError(where + "malformed edge line");
    if (fields[0] == fields[1]) throw GraphError(where + "loop");
    if (fields[0] > fields[1]) throw GraphError(where + "edge not written as u < v");
    if (fields[1] >= n) throw GraphError(where + "vertex out of range");
    const Edge e{static_cast<Vertex>(fields[0]), static_cast<Vertex>(fields[1])};
    if (!edges.empty()) {
      if (e == edges.back()) throw GraphError(where + "duplicate edge");
      if (e < edges.back()) throw GraphError(where + "edges not sorted");
    }
    edges.push_back(e);
  }
  if (edges.size() != m) throw GraphError("graph file: header edge count disagrees with body");
  Graph g = Graph::from_edges(n, std::move(edges));
  const auto d = g.regular_degree();
  const long long actual = d ? static_cast<long long>(*d) : -1;
  if (actual != header[2]) throw GraphError("graph file: header degree disagrees with body");
  return g;
}

inline void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot open " + path + " for writing");
  out << write_graph(g);
  if (!out) throw GraphError("write to " + path + " failed");
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_graph(text);
}

}  // namespace rgp
