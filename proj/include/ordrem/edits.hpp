#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ordrem/error.hpp"
#include "ordrem/ordered_graph.hpp"

namespace ordrem {

enum class EditAction { add, remove };

struct Edit {
  Vertex u = 0;
  Vertex v = 0;
  EditAction action = EditAction::add;
  std::string step;
  friend bool operator==(const Edit&, const Edit&) = default;
};

// Net pair toggles against a fixed source graph. Toggling a pair twice
// cancels; the surviving entry keeps the label of its most recent toggle.
class EditSet {
 public:
  // Records a toggle of {u,v}. `was_present` is the adjacency in the source
  // graph, which determines the action if the edit survives.
  void toggle(Vertex u, Vertex v, bool was_present, const std::string& step) {
    if (u > v) std::swap(u, v);
    if (u == v) throw InputError("edit on a self-pair");
    const auto key = std::make_pair(u, v);
    if (auto it = entries_.find(key); it != entries_.end()) {
      entries_.erase(it);
      return;
    }
    entries_[key] = Entry{was_present ? EditAction::remove : EditAction::add, step, ++clock_};
  }

  // Inserts an explicit edit; a second edit on the same pair must match.
  void insert(Edit e) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) throw InputError("edit on a self-pair");
    const auto key = std::make_pair(e.u, e.v);
    if (auto it = entries_.find(key); it != entries_.end()) {
      if (it->second.action != e.action) throw InputError("conflicting edits on one pair");
      it->second.step = e.step;
      return;
    }
    entries_[key] = Entry{e.action, e.step, ++clock_};
  }

  void erase(Vertex u, Vertex v) { entries_.erase(std::minmax(u, v)); }

  bool contains(Vertex u, Vertex v) const { return entries_.count(std::minmax(u, v)) > 0; }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::size_t count(const std::string& step) const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [&](const auto& kv) { return kv.second.step == step; }));
  }

  // Sorted by pair.
  std::vector<Edit> edits() const {
    std::vector<Edit> out;
    out.reserve(entries_.size());
    for (const auto& [key, e] : entries_) out.push_back({key.first, key.second, e.action, e.step});
    return out;
  }

  // Most recent first.
  std::vector<Edit> by_recency() const {
    std::vector<std::pair<std::uint64_t, Edit>> tmp;
    for (const auto& [key, e] : entries_) tmp.push_back({e.stamp, {key.first, key.second, e.action, e.step}});
    std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<Edit> out;
    for (auto& t : tmp) out.push_back(std::move(t.second));
    return out;
  }

  void relabel(const std::string& step) {
    for (auto& kv : entries_) kv.second.step = step;
  }

 private:
  struct Entry {
    EditAction action;
    std::string step;
    std::uint64_t stamp;
  };
  std::map<std::pair<Vertex, Vertex>, Entry> entries_;
  std::uint64_t clock_ = 0;
};

// Adds must hit non-edges and deletions must hit edges.
inline OrderedGraph apply(const OrderedGraph& g, const EditSet& edits) {
  OrderedGraph out = g;
  for (const auto& e : edits.edits()) {
    if (e.u >= g.size() || e.v >= g.size()) throw InputError("edit pair out of range");
    const bool present = out.adjacent(e.u, e.v);
    if (e.action == EditAction::add && present)
      throw InputError("edit adds existing edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    if (e.action == EditAction::remove && !present)
      throw InputError("edit deletes missing edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    out.set_edge(e.u, e.v, e.action == EditAction::add);
  }
  return out;
}

// Mutable graph that logs every change into an EditSet against its
// starting state.
class EditingGraph {
 public:
  explicit EditingGraph(OrderedGraph g) : source_(g), current_(std::move(g)) {}

  const OrderedGraph& source() const noexcept { return source_; }
  const OrderedGraph& graph() const noexcept { return current_; }
  const EditSet& edits() const noexcept { return edits_; }

  void set(Vertex u, Vertex v, bool present, const std::string& step) {
    if (current_.adjacent(u, v) == present) return;
    current_.set_edge(u, v, present);
    edits_.toggle(u, v, source_.adjacent(u, v), step);
  }

  // Applies a change list computed against the current graph.
  void apply(const EditSet& delta, const std::string& step) {
    for (const auto& e : delta.edits()) set(e.u, e.v, e.action == EditAction::add, step);
  }

  // Puts {u,v} back to its source state, dropping the edit.
  void revert(Vertex u, Vertex v) {
    current_.set_edge(u, v, source_.adjacent(u, v));
    edits_.erase(u, v);
  }

 private:
  OrderedGraph source_;
  OrderedGraph current_;
  EditSet edits_;
};

// Edits file: one "+ u v" or "- u v" per line, '#' comments allowed.
inline void write_edits(std::ostream& out, const EditSet& edits) {
  for (const auto& e : edits.edits()) out << (e.action == EditAction::add ? '+' : '-') << ' ' << e.u << ' ' << e.v << '\n';
}

inline EditSet read_edits(std::istream& in, const std::string& source = "<edits>") {
  EditSet out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string sign;
    if (!(fields >> sign)) continue;
    long long u = -1, v = -1;
    std::string extra;
    if ((sign != "+" && sign != "-") || !(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0 || u == v)
      throw InputError(source + ":" + std::to_string(line_no) + ": expected '+ u v' or '- u v'");
    out.insert({static_cast<Vertex>(u), static_cast<Vertex>(v), sign == "+" ? EditAction::add : EditAction::remove, ""});
  }
  return out;
}

inline EditSet read_edits_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_edits(in, path);
}

}  // namespace ordrem
