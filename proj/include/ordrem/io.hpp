#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ordrem/error.hpp"
#include "ordrem/ordered_graph.hpp"

namespace ordrem {

// Text graph format:
//   n <count>
//   <u> <v>        one edge per line, 0 <= u < v < n
// '#' starts a comment; blank lines are ignored.
inline OrderedGraph read_graph(std::istream& in, const std::string& source = "<input>") {
  std::string line;
  std::size_t line_no = 0;
  std::optional<OrderedGraph> g;
  auto fail = [&](const std::string& msg) -> void {
    throw InputError(source + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (!g) {
      std::string count;
      if (first != "n" || !(fields >> count)) fail("expected header 'n <count>'");
      std::size_t n = 0;
      try {
        std::size_t used = 0;
        n = std::stoull(count, &used);
        if (used != count.size()) fail("malformed vertex count '" + count + "'");
      } catch (const std::logic_error&) {
        fail("malformed vertex count '" + count + "'");
      }
      std::string extra;
      if (fields >> extra) fail("unexpected token '" + extra + "' after header");
      try {
        g.emplace(n);
      } catch (const TooLargeError& e) {
        fail(e.what());
      }
      continue;
    }
    std::string second, extra;
    if (!(fields >> second)) fail("expected two vertex labels");
    if (fields >> extra) fail("unexpected token '" + extra + "'");
    auto parse_vertex = [&](const std::string& s) -> Vertex {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) fail("malformed vertex '" + s + "'");
      try {
        return std::stoull(s);
      } catch (const std::logic_error&) {
        fail("malformed vertex '" + s + "'");
      }
      return 0;
    };
    const Vertex u = parse_vertex(first), v = parse_vertex(second);
    if (u >= g->size() || v >= g->size()) fail("vertex out of range (n = " + std::to_string(g->size()) + ")");
    if (u >= v) fail("edge must satisfy u < v");
    g->add_edge(u, v);
  }
  if (!g) {
    line_no = 0;
    fail("missing header 'n <count>'");
  }
  return std::move(*g);
}

inline OrderedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_graph(in, path);
}

inline void write_graph(std::ostream& out, const OrderedGraph& g) {
  out << "n " << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string to_text(const OrderedGraph& g) {
  std::ostringstream s;
  write_graph(s, g);
  return s.str();
}

inline OrderedGraph from_text(const std::string& text) {
  std::istringstream s(text);
  return read_graph(s);
}

inline void write_graph_file(const std::string& path, const OrderedGraph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_graph(out, g);
}

}  // namespace ordrem
