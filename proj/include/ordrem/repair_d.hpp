#pragma once

// The six-step pipeline that makes an ordered graph induced-D-free.
//
// theorem mode: parameters follow the exact cascade eps_1..delta and every
// step hypothesis is enforced; a failure surfaces as PreconditionError.
// practical mode: step parameters come from overrides (with defaults scaled
// from epsilon), hypotheses are advisory, each step takes the cheapest of
// several sound edit sets, and a final prune pass reverts unneeded edits.

#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <string>

#include "ordrem/repair.hpp"

namespace ordrem {

enum class RepairMode { theorem, practical };

inline std::string to_string(RepairMode m) { return m == RepairMode::theorem ? "theorem" : "practical"; }

inline RepairMode parse_repair_mode(const std::string& s) {
  if (s == "theorem") return RepairMode::theorem;
  if (s == "practical") return RepairMode::practical;
  throw InputError("unknown mode '" + s + "' (expected theorem or practical)");
}

struct Cascade {
  Rational epsilon, eps1, eps2, eps3, delta, threshold;  // threshold = N
};

// eps_1 = eps^5/1000, eps_2 = eps^3 eps_1^36 / 2^100,
// eps_3 = min(c eps^6 eps_1^15 / 2^40, eps_1^18 eps_2^18 / 2^100),
// delta = eps_3^2 eps_1^3 / 512, N = delta eps_1^3 n^3 / 32.
inline Cascade compute_cascade(const Rational& eps, std::size_t n, const Rational& c = Rational(1, 64)) {
  Cascade k;
  k.epsilon = eps;
  k.eps1 = pow(eps, 5) / 1000;
  k.eps2 = pow(eps, 3) * pow(k.eps1, 36) / pow(Rational(2), 100);
  const Rational a = c * pow(eps, 6) * pow(k.eps1, 15) / pow(Rational(2), 40);
  const Rational b = pow(k.eps1, 18) * pow(k.eps2, 18) / pow(Rational(2), 100);
  k.eps3 = a < b ? a : b;
  k.delta = k.eps3 * k.eps3 * pow(k.eps1, 3) / 512;
  k.threshold = k.delta * pow(k.eps1, 3) * pow(Rational(n), 3) / 32;
  return k;
}

// Approximate log10 of a positive rational, for human-readable traces only.
inline double log10_approx(const Rational& r) {
  if (r <= 0) return -HUGE_VAL;
  auto digits = [](const BigInt& v) {
    const std::string s = v.str();
    const std::size_t lead = std::min<std::size_t>(s.size(), 15);
    return std::log10(std::stod(s.substr(0, lead))) + static_cast<double>(s.size() - lead);
  };
  return digits(numerator(r)) - digits(denominator(r));
}

struct RepairParams {
  Rational partition_gamma, partition_delta;
  Rational pair_gamma;
  Rational interval_gamma, interval_c3;
  Rational interval_pair_gamma;
  Rational independent_gamma;
  bool prune = false;
};

inline const std::vector<std::string>& repair_param_names() {
  static const std::vector<std::string> names{"partition_gamma", "partition_delta", "pair_gamma",
                                              "interval_gamma",  "interval_c3",     "interval_pair_gamma",
                                              "independent_gamma", "prune"};
  return names;
}

inline RepairParams practical_defaults(const Rational& eps) {
  return {eps / 4, Rational(1, 4), eps, eps / 12, 1, eps, eps, true};
}

inline RepairParams theorem_params(const Cascade& k) {
  return {k.eps1, k.delta, k.eps3, k.epsilon / 12, 1, k.eps2, k.epsilon, false};
}

inline void apply_overrides(RepairParams& p, const std::map<std::string, Rational>& overrides) {
  for (const auto& [name, value] : overrides) {
    if (name == "partition_gamma") p.partition_gamma = value;
    else if (name == "partition_delta") p.partition_delta = value;
    else if (name == "pair_gamma") p.pair_gamma = value;
    else if (name == "interval_gamma") p.interval_gamma = value;
    else if (name == "interval_c3") p.interval_c3 = value;
    else if (name == "interval_pair_gamma") p.interval_pair_gamma = value;
    else if (name == "independent_gamma") p.independent_gamma = value;
    else if (name == "prune") {
      if (value != 0 && value != 1) throw InputError("prune must be 0 or 1");
      p.prune = value == 1;
    } else {
      throw InputError("unknown parameter '" + name + "'");
    }
  }
  for (const auto* r : {&p.partition_gamma, &p.partition_delta, &p.interval_gamma})
    detail::require_unit_interval(*r, "step parameter");
  for (const auto* r : {&p.pair_gamma, &p.interval_c3, &p.interval_pair_gamma, &p.independent_gamma})
    detail::require_positive(*r, "step parameter");
}

struct RepairTrace {
  RepairMode mode = RepairMode::practical;
  Rational epsilon;
  std::size_t n = 0;
  BigInt initial_count;
  RepairParams params;
  std::optional<Cascade> cascade;
  NearCliquePartition partition;
  IntervalDecomposition decomposition;
  VertexSet removed;                                     // final S (decomposition plus step 4)
  std::vector<VertexSet> step4_copies;                   // copies whose vertices joined S
  std::vector<std::pair<std::string, std::string>> notes;  // (step, text)
  std::size_t pruned = 0;
  EditSet edits;

  // K_1, K_2, K_3, K_5, K_6 by step label of the final edit set.
  std::size_t subtotal(const std::string& step) const { return edits.count(step); }
};

struct RepairResult {
  EditSet edits;
  RepairTrace trace;
};

namespace detail {

inline std::size_t interval_of(const std::vector<VertexSet>& intervals, Vertex v) {
  for (std::size_t i = 0; i < intervals.size(); ++i)
    if (intervals[i].contains(v)) return i;
  return SIZE_MAX;
}

inline void require_d_free(const OrderedGraph& g, const VertexSet& s, const std::string& step) {
  if (d_count(g, s) != 0) throw Error(step + ": result still contains an induced D");
}

inline void prune_edits(EditingGraph& eg, RepairTrace& trace) {
  for (const auto& e : eg.edits().by_recency()) {
    eg.revert(e.u, e.v);
    if (count_induced_D_through_pair(eg.graph(), e.u, e.v) == 0) {
      ++trace.pruned;
      continue;
    }
    eg.set(e.u, e.v, e.action == EditAction::add, e.step);
  }
}

}  // namespace detail

inline RepairResult repair_D(const OrderedGraph& g, const Rational& epsilon, RepairMode mode = RepairMode::practical,
                             const std::map<std::string, Rational>& overrides = {}) {
  if (epsilon <= 0 || epsilon >= 1) throw InputError("epsilon must lie in (0,1), got " + to_string(epsilon));
  const std::size_t n = g.size();
  const bool strict = mode == RepairMode::theorem;
  RepairTrace trace;
  trace.mode = mode;
  trace.epsilon = epsilon;
  trace.n = n;
  trace.initial_count = count_induced_D(g);
  if (strict) {
    trace.cascade = compute_cascade(epsilon, n);
    trace.params = theorem_params(*trace.cascade);
  } else {
    trace.params = practical_defaults(epsilon);
  }
  apply_overrides(trace.params, overrides);
  const RepairParams& p = trace.params;
  auto note = [&](const std::string& step, const std::string& text) { trace.notes.emplace_back(step, text); };

  if (trace.initial_count == 0) return {{}, std::move(trace)};
  if (strict && Rational(trace.initial_count) >= trace.cascade->threshold)
    throw PreconditionError("hypothesis", "at least N = delta eps_1^3 n^3 / 32 induced copies of D",
                            to_string(trace.initial_count));
  if (!strict) note("hypothesis", "count hypotheses are advisory in practical mode");

  EditingGraph eg(g);
  trace.partition = near_clique_partition(g, p.partition_gamma, p.partition_delta,
                                          strict ? PartitionMode::strict : PartitionMode::practical);
  const auto& cliques = trace.partition.cliques;
  const VertexSet& y = trace.partition.residue;
  const std::size_t m = cliques.size();
  if (!strict)
    if (auto bad = check_partition(g, trace.partition)) note("partition", "advisory: " + *bad);

  // m = 0: deleting every edge is the whole repair.
  if (m == 0) {
    for (const auto& [u, v] : g.edges()) eg.set(u, v, false, "step1");
    trace.edits = eg.edits();
    return {eg.edits(), std::move(trace)};
  }

  // Step 1: X_i cliques, Y independent.
  for (const auto& x : cliques)
    for (std::size_t a = 0; a < x.size(); ++a)
      for (std::size_t b = a + 1; b < x.size(); ++b) eg.set(x[a], x[b], true, "step1");
  for (std::size_t a = 0; a < y.size(); ++a)
    for (std::size_t b = a + 1; b < y.size(); ++b) eg.set(y[a], y[b], false, "step1");

  // Step 2: every G[X_i u X_j] D-free.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const OrderedGraph& cur = eg.graph();
      EditSet delta;
      if (strict) {
        delta = repair_clique_pair_general(cur, cliques[i], cliques[j], p.pair_gamma);
      } else {
        EditSet guaranteed = detail::general_pair_edits(cur, cliques[i], cliques[j], p.pair_gamma);
        EditSet best = detail::best_split_repair(cur, cliques[i], cliques[j]);
        delta = guaranteed.size() <= best.size() ? std::move(guaranteed) : std::move(best);
      }
      eg.apply(delta, "step2");
      detail::require_d_free(eg.graph(), set_union(cliques[i], cliques[j]), "step2");
    }

  // Interval decomposition of X.
  trace.decomposition = interval_partition(eg.graph(), cliques, p.interval_gamma, p.interval_c3,
                                           strict ? DecompositionMode::strict : DecompositionMode::practical);
  const auto& dec = trace.decomposition;
  for (const auto& text : dec.notes) note("intervals", text);
  if (strict && !dec.count_hypothesis)
    throw PreconditionError("intervals", "too many induced copies of D in G[X] for the interval decomposition");
  const std::size_t t = dec.intervals.size();
  VertexSet x_all;
  for (const auto& x : cliques) x_all = set_union(x_all, x);

  // Step 3: every G[I_a u I_b] D-free, changing only pairs between them.
  const Rational xs = x_all.size();
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = a + 1; b < t; ++b) {
      const OrderedGraph& cur = eg.graph();
      const auto& ia = dec.intervals[a];
      const auto& ib = dec.intervals[b];
      const auto as = detail::members(dec.cliques[a]), bs = detail::members(dec.cliques[b]);
      const Rational small = p.interval_pair_gamma * xs / (4 * Rational(t));
      EditSet guaranteed;
      if (Rational(ia.size()) < small || Rational(ib.size()) < small) {
        detail::set_bipartite(cur, ia, ib, false, guaranteed);
      } else if (strict) {
        guaranteed = repair_interval_pair(cur, ia, ib, as, bs, p.interval_pair_gamma, m);
      } else {
        guaranteed = detail::interval_pair_edits(cur, ia, ib, as, bs, p.interval_pair_gamma, m);
      }
      EditSet delta = std::move(guaranteed);
      if (!strict) {
        EditSet best = detail::interval_pair_optimum(cur, as, bs);
        if (best.size() < delta.size()) delta = std::move(best);
      }
      eg.apply(delta, "step3");
      detail::require_d_free(eg.graph(), set_union(ia, ib), "step3");
    }

  // Step 4: a maximal family of vertex-disjoint copies in G[X \ S]; each one
  // spans three intervals since every pair of intervals is now D-free.
  VertexSet s = dec.deleted;
  {
    const VertexSet rest = set_difference(x_all, s);
    const auto sub = induced_subgraph(eg.graph(), rest);
    std::vector<char> taken(rest.size(), 0);
    std::vector<Vertex> added;
    for_each_induced_D(sub, [&](Vertex a, Vertex b, Vertex c) {
      if (taken[a] || taken[b] || taken[c]) return true;
      taken[a] = taken[b] = taken[c] = 1;
      const VertexSet copy{rest[a], rest[b], rest[c]};
      std::set<std::size_t> spans;
      for (auto v : copy) spans.insert(detail::interval_of(dec.intervals, v));
      if (spans.size() != 3) throw Error("step4: a copy does not span three distinct intervals");
      trace.step4_copies.push_back(copy);
      added.insert(added.end(), copy.begin(), copy.end());
      return true;
    });
    s = set_union(s, VertexSet(std::move(added)));
  }
  trace.removed = s;

  // Step 5: isolate S.
  for (auto v : s)
    for (Vertex u = 0; u < n; ++u)
      if (u != v && eg.graph().adjacent(u, v)) eg.set(u, v, false, "step5");

  // Step 6: (X \ S, Y).
  const VertexSet x_rest = set_difference(x_all, s);
  EditSet delta;
  if (strict) {
    delta = repair_against_independent_set(eg.graph(), x_rest, y, p.independent_gamma);
  } else {
    if (Rational(y.size()) < 4 / p.independent_gamma) note("step6", "advisory: |Y| < 4/gamma");
    delta = detail::independent_set_edits(eg.graph(), x_rest, y);
  }
  eg.apply(delta, "step6");

  if (count_induced_D_u64(eg.graph()) != 0) throw Error("final check: repaired graph still contains an induced D");
  if (p.prune) {
    detail::prune_edits(eg, trace);
    if (count_induced_D_u64(eg.graph()) != 0) throw Error("prune: repaired graph contains an induced D");
  }
  trace.edits = eg.edits();
  if (strict && Rational(trace.edits.size()) > epsilon * n * n)
    note("budget", "edit count exceeds epsilon n^2");
  return {eg.edits(), std::move(trace)};
}

// Returns the first violated step-locality invariant, if any:
// step3 edits join distinct intervals, step5 edits are deletions at S,
// step6 edits are deletions between X \ S and Y.
inline std::optional<std::string> check_trace_invariants(const OrderedGraph& g, const RepairTrace& trace) {
  const auto& intervals = trace.decomposition.intervals;
  VertexSet x_all;
  for (const auto& x : trace.partition.cliques) x_all = set_union(x_all, x);
  const VertexSet x_rest = set_difference(x_all, trace.removed);
  const VertexSet& y = trace.partition.residue;
  std::size_t total = 0;
  for (const auto* step : {"step1", "step2", "step3", "step5", "step6"}) total += trace.subtotal(step);
  if (total != trace.edits.size()) return "subtotals do not sum to the edit count";
  for (const auto& e : trace.edits.edits()) {
    const std::string where = " {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
    if (g.adjacent(e.u, e.v) != (e.action == EditAction::remove)) return "edit does not match the source graph" + where;
    if (e.step == "step3") {
      const auto a = detail::interval_of(intervals, e.u), b = detail::interval_of(intervals, e.v);
      if (a == SIZE_MAX || b == SIZE_MAX || a == b) return "step3 edit outside distinct intervals" + where;
    } else if (e.step == "step5") {
      if (e.action != EditAction::remove) return "step5 edit is not a deletion" + where;
      if (!trace.removed.contains(e.u) && !trace.removed.contains(e.v)) return "step5 edit not incident to S" + where;
    } else if (e.step == "step6") {
      if (e.action != EditAction::remove) return "step6 edit is not a deletion" + where;
      const bool ok = (x_rest.contains(e.u) && y.contains(e.v)) || (x_rest.contains(e.v) && y.contains(e.u));
      if (!ok) return "step6 edit not between X \\ S and Y" + where;
    }
  }
  return std::nullopt;
}

namespace detail {

inline std::string join(const VertexSet& s) {
  std::string out;
  for (auto v : s) out += (out.empty() ? "" : " ") + std::to_string(v);
  return out;
}

}  // namespace detail

// Structured text: blank-line separated blocks of "key: value" lines.
inline void write_trace(std::ostream& out, const RepairTrace& t) {
  out << "block: run\n"
      << "mode: " << to_string(t.mode) << "\n"
      << "epsilon: " << to_string(t.epsilon) << "\n"
      << "n: " << t.n << "\n"
      << "initial_count: " << to_string(t.initial_count) << "\n"
      << "edits: " << t.edits.size() << "\n"
      << "pruned: " << t.pruned << "\n";
  out << "\nblock: parameters\n"
      << "partition_gamma: " << to_string(t.params.partition_gamma) << "\n"
      << "partition_delta: " << to_string(t.params.partition_delta) << "\n"
      << "pair_gamma: " << to_string(t.params.pair_gamma) << "\n"
      << "interval_gamma: " << to_string(t.params.interval_gamma) << "\n"
      << "interval_c3: " << to_string(t.params.interval_c3) << "\n"
      << "interval_pair_gamma: " << to_string(t.params.interval_pair_gamma) << "\n"
      << "independent_gamma: " << to_string(t.params.independent_gamma) << "\n"
      << "prune: " << (t.params.prune ? 1 : 0) << "\n";
  if (t.cascade) {
    out << "\nblock: cascade\n";
    const std::pair<const char*, const Rational*> items[] = {{"eps1", &t.cascade->eps1},
                                                             {"eps2", &t.cascade->eps2},
                                                             {"eps3", &t.cascade->eps3},
                                                             {"delta", &t.cascade->delta},
                                                             {"N", &t.cascade->threshold}};
    for (const auto& [name, value] : items)
      out << name << "_log10: " << log10_approx(*value) << "\n" << name << ": " << to_string(*value) << "\n";
  }
  out << "\nblock: partition\n"
      << "m: " << t.partition.cliques.size() << "\n";
  for (std::size_t i = 0; i < t.partition.cliques.size(); ++i)
    out << "X" << i + 1 << ": " << detail::join(t.partition.cliques[i]) << "\n";
  out << "Y: " << detail::join(t.partition.residue) << "\n";
  out << "\nblock: intervals\n"
      << "t: " << t.decomposition.intervals.size() << "\n"
      << "S: " << detail::join(t.decomposition.deleted) << "\n";
  for (std::size_t j = 0; j < t.decomposition.intervals.size(); ++j) {
    out << "I" << j + 1 << ": " << detail::join(t.decomposition.intervals[j]) << "\n";
    for (const auto& c : t.decomposition.cliques[j]) {
      out << "I" << j + 1 << "_clique: M=";
      for (std::size_t k = 0; k < c.sources.size(); ++k) out << (k ? "," : "") << c.sources[k] + 1;
      out << " " << detail::join(c.members) << "\n";
    }
  }
  out << "\nblock: removal\n"
      << "copies: " << t.step4_copies.size() << "\n"
      << "S: " << detail::join(t.removed) << "\n";
  for (const auto* step : {"step1", "step2", "step3", "step5", "step6"})
    out << "\nblock: " << step << "\nedits: " << t.subtotal(step) << "\n";
  if (!t.notes.empty()) {
    out << "\nblock: notes\n";
    for (const auto& [step, text] : t.notes) out << step << ": " << text << "\n";
  }
}

}  // namespace ordrem
