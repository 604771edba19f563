#pragma once

#include <string>

#include "ordrem/constructions.hpp"
#include "ordrem/ordered_graph.hpp"
#include "ordrem/symmetry.hpp"

namespace ordrem {

enum class Verdict { polynomial, not_polynomial, conjectured_polynomial };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::polynomial: return "polynomial";
    case Verdict::not_polynomial: return "not_polynomial";
    case Verdict::conjectured_polynomial: return "conjectured_polynomial";
  }
  return "?";
}

struct InducedClassification {
  Verdict verdict = Verdict::not_polynomial;
  std::string reason;
  std::optional<Symmetry> symmetry;  // maps f onto D, when polynomial via D
};

// Polynomial exactly for two or fewer vertices and for the symmetric images
// of D; otherwise the reason names the hard-instance case.
inline InducedClassification classify_induced(const OrderedGraph& f) {
  if (f.size() <= 2) return {Verdict::polynomial, "at most two vertices", std::nullopt};
  if (auto s = matching_symmetry(f, named::D()))
    return {Verdict::polynomial, s == Symmetry::identity ? "equals D" : "via " + to_string(*s) + " of D", s};
  auto c = induced_case(f);
  return {Verdict::not_polynomial, "case \"" + c->label + "\"", std::nullopt};
}

struct NonInducedClassification {
  Verdict verdict = Verdict::not_polynomial;
  std::string reason;
  OrderedGraph core;
};

// Not polynomial iff the core has a cycle. A forest core only gives a
// conjectured verdict.
inline NonInducedClassification classify_noninduced(const OrderedGraph& f) {
  OrderedGraph k = core(f);
  if (!is_forest(k)) return {Verdict::not_polynomial, "core contains a cycle", std::move(k)};
  return {Verdict::conjectured_polynomial, "core is a forest (conjectured, not a theorem)", std::move(k)};
}

}  // namespace ordrem
