#pragma once

#include <array>
#include <optional>
#include <string>

#include "ordrem/ordered_graph.hpp"

namespace ordrem {

// The four order-compatible symmetries of ordered graphs. All are
// involutions and they commute.
enum class Symmetry { identity, reverse, complement, reverse_complement };

inline constexpr std::array<Symmetry, 4> all_symmetries = {Symmetry::identity, Symmetry::reverse,
                                                          Symmetry::complement, Symmetry::reverse_complement};

inline bool reverses(Symmetry s) { return s == Symmetry::reverse || s == Symmetry::reverse_complement; }
inline bool complements(Symmetry s) { return s == Symmetry::complement || s == Symmetry::reverse_complement; }

inline std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::identity: return "identity";
    case Symmetry::reverse: return "reverse";
    case Symmetry::complement: return "complement";
    case Symmetry::reverse_complement: return "complement+reverse";
  }
  return "?";
}

inline OrderedGraph apply(Symmetry s, const OrderedGraph& g) {
  OrderedGraph out = reverses(s) ? reverse(g) : g;
  return complements(s) ? complement(out) : out;
}

// First symmetry s (in the order above) with apply(s, f) == target.
inline std::optional<Symmetry> matching_symmetry(const OrderedGraph& f, const OrderedGraph& target) {
  for (auto s : all_symmetries)
    if (apply(s, f) == target) return s;
  return std::nullopt;
}

}  // namespace ordrem
