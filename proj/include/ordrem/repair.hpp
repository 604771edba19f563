#pragma once

// Building blocks for making an ordered graph induced-D-free: dense-set
// extraction, near-clique partitions, two-clique characterisations and their
// removal versions, sequence hitting sets, interval decompositions, and the
// three repair procedures used by the full pipeline (see repair_d.hpp).

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ordrem/counting.hpp"
#include "ordrem/edits.hpp"
#include "ordrem/ordered_graph.hpp"
#include "ordrem/rational.hpp"

namespace ordrem {

using Triple = std::array<Vertex, 3>;

inline std::string describe(const Triple& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

// d(X) = e(X) / C(|X|, 2); sets with fewer than two vertices count as dense.
inline Rational density(const OrderedGraph& g, const VertexSet& x) {
  if (x.size() < 2) return 1;
  return Rational(g.edges_within(x)) / Rational(choose(x.size(), 2));
}

namespace detail {

inline void require_unit_interval(const Rational& r, const char* name) {
  if (r <= 0 || r > 1) throw InputError(std::string(name) + " must lie in (0,1], got " + to_string(r));
}

inline void require_positive(const Rational& r, const char* name) {
  if (r <= 0) throw InputError(std::string(name) + " must be positive, got " + to_string(r));
}

inline void require_clique(const OrderedGraph& g, const VertexSet& s, const char* name) {
  if (!s.empty() && s.back() >= g.size()) throw InputError(std::string(name) + " has a vertex out of range");
  if (!g.is_clique(s)) throw PreconditionError("", std::string(name) + " is not a clique");
}

inline void require_disjoint(const VertexSet& a, const VertexSet& b, const char* what) {
  if (!a.disjoint_from(b)) throw PreconditionError("", std::string(what) + " must be disjoint");
}

inline std::uint64_t d_count(const OrderedGraph& g, const VertexSet& s) { return count_induced_D_in(g, s); }

inline bool neighbourhood_is_suffix(const OrderedGraph& g, Vertex v, const VertexSet& within) {
  bool seen = false;
  for (auto x : within) {
    if (g.adjacent(v, x)) seen = true;
    else if (seen) return false;
  }
  return true;
}

// Vertices in `within` that follow v and are adjacent to it.
inline VertexSet forward_within(const OrderedGraph& g, Vertex v, const VertexSet& within) {
  std::vector<Vertex> out;
  for (auto it = std::upper_bound(within.begin(), within.end(), v); it != within.end(); ++it)
    if (g.adjacent(v, *it)) out.push_back(*it);
  return VertexSet(std::move(out));
}

// Drops low-degree members until every vertex sees at least half of the rest.
inline VertexSet majority_core(const OrderedGraph& g, const VertexSet& x) {
  std::vector<Vertex> items = x.items();
  std::vector<std::size_t> deg(items.size(), 0);
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j)
      if (g.adjacent(items[i], items[j])) ++deg[i], ++deg[j];
  std::vector<bool> alive(items.size(), true);
  std::size_t size = items.size();
  bool changed = true;
  while (changed && size > 1) {
    changed = false;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!alive[i] || 2 * deg[i] >= size - 1) continue;
      alive[i] = false;
      --size;
      changed = true;
      for (std::size_t j = 0; j < items.size(); ++j)
        if (alive[j] && g.adjacent(items[i], items[j])) --deg[j];
    }
  }
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (alive[i]) out.push_back(items[i]);
  return VertexSet(std::move(out));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dense subsets and near-clique partitions

enum class ExtractionRule {
  first,    // first forward neighbourhood meeting both thresholds
  cleaned,  // {v} plus N_v, trimmed to its majority core; largest qualifying set
};

// Searches the forward neighbourhoods N_v (inside `universe`) of size at
// least `min_size` for one of density >= 1 - delta.
inline std::optional<VertexSet> extract_dense_in(const OrderedGraph& g, const VertexSet& universe,
                                                 const Rational& min_size, const Rational& delta,
                                                 ExtractionRule rule = ExtractionRule::first) {
  std::optional<VertexSet> best;
  for (auto v : universe) {
    VertexSet nv = detail::forward_within(g, v, universe);
    if (Rational(nv.size()) < min_size) continue;
    if (rule == ExtractionRule::first) {
      if (density(g, nv) >= 1 - delta) return nv;
      continue;
    }
    nv.insert(v);
    VertexSet x = detail::majority_core(g, nv);
    if (Rational(x.size()) < min_size || x.empty() || density(g, x) < 1 - delta) continue;
    if (!best || x.size() > best->size()) best = std::move(x);
  }
  return best;
}

// If e(g) >= gamma n^2 and g has at most delta gamma^3 n^3 / 32 induced
// copies of D, a set of size >= gamma n / 2 and density >= 1 - delta exists
// among the forward neighbourhoods; returns the first such neighbourhood.
inline std::optional<VertexSet> extract_dense_subset(const OrderedGraph& g, const Rational& gamma,
                                                     const Rational& delta) {
  detail::require_unit_interval(gamma, "gamma");
  detail::require_unit_interval(delta, "delta");
  const auto n = g.size();
  return extract_dense_in(g, VertexSet::range(0, n), gamma * n / 2, delta);
}

struct NearCliquePartition {
  std::vector<VertexSet> cliques;  // X_1..X_m
  VertexSet residue;               // Y
  Rational gamma;
  Rational delta;
};

// Checks |X_i| >= gamma n / 2, d(X_i) >= 1 - delta, e(Y) <= gamma n^2 and
// that the parts partition V(g). Returns a description of the first failure.
inline std::optional<std::string> check_partition(const OrderedGraph& g, const NearCliquePartition& p) {
  const auto n = g.size();
  std::vector<int> seen(n, 0);
  auto mark = [&](const VertexSet& s) {
    for (auto v : s)
      if (v >= n || seen[v]++) return false;
    return true;
  };
  for (std::size_t i = 0; i < p.cliques.size(); ++i) {
    if (!mark(p.cliques[i])) return "parts overlap or leave the vertex range";
    if (Rational(p.cliques[i].size()) < p.gamma * n / 2) return "X_" + std::to_string(i + 1) + " is too small";
    if (density(g, p.cliques[i]) < 1 - p.delta) return "X_" + std::to_string(i + 1) + " is too sparse";
  }
  if (!mark(p.residue)) return "parts overlap or leave the vertex range";
  if (std::count(seen.begin(), seen.end(), 1) != static_cast<std::ptrdiff_t>(n)) return "parts do not cover V(G)";
  if (Rational(g.edges_within(p.residue)) > p.gamma * n * n) return "e(Y) exceeds gamma n^2";
  return std::nullopt;
}

enum class PartitionMode {
  // Peel while e(V_i) > gamma n^2 with size threshold gamma n^2 / (2|V_i|);
  // the count hypothesis is enforced and an extraction failure is an error.
  strict,
  // Peel while V_i has edges and a cleaned extraction of size >= gamma n / 2
  // exists; no hypothesis is enforced.
  practical,
};

inline NearCliquePartition near_clique_partition(const OrderedGraph& g, const Rational& gamma, const Rational& delta,
                                                 PartitionMode mode = PartitionMode::strict) {
  detail::require_unit_interval(gamma, "gamma");
  detail::require_unit_interval(delta, "delta");
  const auto n = g.size();
  if (mode == PartitionMode::strict) {
    const auto count = count_induced_D(g);
    if (Rational(count) > delta * pow(gamma, 3) * n * n * n / 32)
      throw PreconditionError("partition", "more than delta gamma^3 n^3 / 32 induced copies of D", to_string(count));
  }
  NearCliquePartition out{{}, VertexSet::range(0, n), gamma, delta};
  while (true) {
    const auto e = g.edges_within(out.residue);
    std::optional<VertexSet> x;
    if (mode == PartitionMode::strict) {
      if (Rational(e) <= gamma * n * n) break;
      const Rational threshold = gamma * n * n / (2 * Rational(out.residue.size()));
      x = extract_dense_in(g, out.residue, threshold, delta);
      if (!x) throw Error("partition: no dense forward neighbourhood although the count hypothesis holds");
    } else {
      if (e == 0) break;
      x = extract_dense_in(g, out.residue, gamma * n / 2, delta, ExtractionRule::cleaned);
      if (!x) break;
    }
    out.residue = set_difference(out.residue, *x);
    out.cliques.push_back(std::move(*x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Two cliques

struct SuffixCheck {
  bool d_free = true;
  std::optional<Triple> witness;  // x, y in A, z in B
};

// A < B cliques: D-free iff every N_A(b) is a suffix of A.
inline SuffixCheck check_suffix_characterization(const OrderedGraph& g, const VertexSet& a, const VertexSet& b) {
  detail::require_clique(g, a, "A");
  detail::require_clique(g, b, "B");
  detail::require_disjoint(a, b, "A and B");
  if (!a.precedes(b)) throw PreconditionError("", "A must precede B");
  for (auto z : b) {
    std::optional<Vertex> first_neighbour;
    for (auto x : a) {
      if (g.adjacent(x, z)) {
        if (!first_neighbour) first_neighbour = x;
      } else if (first_neighbour) {
        return {false, Triple{*first_neighbour, x, z}};
      }
    }
  }
  return {};
}

struct TwoCliqueSplit {
  VertexSet i;  // lower interval of A u B
  VertexSet j;  // upper interval of A u B
};

struct TwoCliqueCheck {
  bool d_free = true;
  TwoCliqueSplit split;           // the maximal-J split (always computed)
  std::optional<Triple> witness;  // first induced D of G[A u B] when not free
};

namespace detail {

// J = the maximal suffix of A u B on which A and B are completely joined.
inline TwoCliqueSplit maximal_complete_suffix(const OrderedGraph& g, const VertexSet& a, const VertexSet& b) {
  const VertexSet all = set_union(a, b);
  std::vector<Vertex> in_a, in_b;
  std::size_t cut = all.size();
  while (cut > 0) {
    const Vertex w = all[cut - 1];
    const bool from_a = a.contains(w);
    const auto& other = from_a ? in_b : in_a;
    bool ok = true;
    for (auto o : other)
      if (!g.adjacent(w, o)) {
        ok = false;
        break;
      }
    if (!ok) break;
    (from_a ? in_a : in_b).push_back(w);
    --cut;
  }
  std::vector<Vertex> lo(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cut));
  std::vector<Vertex> hi(all.begin() + static_cast<std::ptrdiff_t>(cut), all.end());
  return {VertexSet(std::move(lo)), VertexSet(std::move(hi))};
}


inline std::optional<Triple> first_D_in(const OrderedGraph& g, const VertexSet& s) {
  const auto sub = induced_subgraph(g, s);
  if (auto t = find_induced_D(sub)) return Triple{s[(*t)[0]], s[(*t)[1]], s[(*t)[2]]};
  return std::nullopt;
}

}  // namespace detail

// A, B disjoint cliques in any interleaving. G[A u B] is D-free iff the
// maximal-J split satisfies: (A n I, B n I) empty, (A n J, B n J) complete,
// N_{A n I}(b) a suffix for b in B n J, N_{B n I}(a) a suffix for a in A n J.
inline TwoCliqueCheck check_two_clique_characterization(const OrderedGraph& g, const VertexSet& a,
                                                        const VertexSet& b) {
  detail::require_clique(g, a, "A");
  detail::require_clique(g, b, "B");
  detail::require_disjoint(a, b, "A and B");
  TwoCliqueCheck out;
  out.split = detail::maximal_complete_suffix(g, a, b);
  const auto ai = set_intersection(a, out.split.i), bi = set_intersection(b, out.split.i);
  const auto aj = set_intersection(a, out.split.j), bj = set_intersection(b, out.split.j);
  bool ok = g.edges_between(ai, bi) == 0;
  for (auto v : bj)
    if (ok && !detail::neighbourhood_is_suffix(g, v, ai)) ok = false;
  for (auto v : aj)
    if (ok && !detail::neighbourhood_is_suffix(g, v, bi)) ok = false;
  if (!ok) {
    out.d_free = false;
    out.witness = detail::first_D_in(g, set_union(a, b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Removal versions for two cliques

namespace detail {


// Changes that make N_A(b) the suffix of A starting at position `start`.
inline void suffix_edits(const OrderedGraph& g, const VertexSet& a, Vertex b, std::size_t start, EditSet& out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool want = i >= start;
    if (g.adjacent(a[i], b) != want) out.toggle(a[i], b, !want, "");
  }
}

// Cheapest suffix for N_A(b): position and cost; ties go to the larger suffix.
inline std::pair<std::size_t, std::size_t> best_suffix(const OrderedGraph& g, const VertexSet& a, Vertex b) {
  // cost(start) = neighbours before start + non-neighbours from start on
  std::size_t non_neighbours = 0;
  for (auto x : a) non_neighbours += !g.adjacent(x, b);
  std::size_t best_cost = non_neighbours, best_start = 0, before = 0, after_non = non_neighbours;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (g.adjacent(a[i], b)) ++before;
    else --after_non;
    const std::size_t cost = before + after_non;
    if (cost < best_cost) best_cost = cost, best_start = i + 1;
  }
  return {best_start, best_cost};
}

inline std::size_t best_suffix_cost(const OrderedGraph& g, const VertexSet& a, Vertex b) {
  return best_suffix(g, a, b).second;
}

inline void optimal_suffix_repair(const OrderedGraph& g, const VertexSet& a, const VertexSet& b, EditSet& out) {
  for (auto v : b) suffix_edits(g, a, v, best_suffix(g, a, v).first, out);
}

// The rounding rule of the simple clique-pair repair: leave b alone when
// N_A(b) is already a suffix, complete b when it has at most gamma|A|/2
// non-neighbours, otherwise use the largest suffix that holds exactly
// ceil(gamma|A|/2) of them.
inline void simple_pair_edits(const OrderedGraph& g, const VertexSet& a, const VertexSet& b, const Rational& gamma,
                              EditSet& out) {
  const Rational half = gamma * Rational(a.size()) / 2;
  const auto target = static_cast<std::size_t>(ceil(half));
  for (auto v : b) {
    if (neighbourhood_is_suffix(g, v, a)) continue;
    std::size_t non = 0;
    for (auto x : a) non += !g.adjacent(x, v);
    if (Rational(non) <= half) {
      suffix_edits(g, a, v, 0, out);
      continue;
    }
    std::size_t seen = 0, start = a.size();
    while (start > 0) {
      if (!g.adjacent(a[start - 1], v)) {
        if (seen == target) break;
        ++seen;
      }
      --start;
    }
    suffix_edits(g, a, v, start, out);
  }
}

inline void set_bipartite(const OrderedGraph& g, const VertexSet& a, const VertexSet& b, bool present, EditSet& out) {
  for (auto x : a)
    for (auto y : b)
      if (g.adjacent(x, y) != present) out.toggle(x, y, !present, "");
}

// Least-cost edit set of the characterised form, over all I/J cut points of
// A u B. Cost of a cut: edges in the lower quadrant, non-edges in the upper
// one, and the cheapest suffix repairs of the two crossing quadrants.
inline EditSet best_split_repair(const OrderedGraph& g, const VertexSet& a, const VertexSet& b) {
  const VertexSet all = set_union(a, b);
  std::size_t best_cost = SIZE_MAX, best_cut = 0;
  for (std::size_t cut = 0; cut <= all.size(); ++cut) {
    const Vertex pivot = cut < all.size() ? all[cut] : SIZE_MAX;
    std::vector<Vertex> ai, aj, bi, bj;
    for (auto x : a) (x < pivot ? ai : aj).push_back(x);
    for (auto x : b) (x < pivot ? bi : bj).push_back(x);
    const VertexSet AI(ai), AJ(aj), BI(bi), BJ(bj);
    std::size_t cost = g.edges_between(AI, BI) + g.non_edges_between(AJ, BJ);
    if (cost >= best_cost) continue;
    for (auto v : BJ) cost += best_suffix_cost(g, AI, v);
    for (auto v : AJ) cost += best_suffix_cost(g, BI, v);
    if (cost < best_cost) best_cost = cost, best_cut = cut;
  }
  const Vertex pivot = best_cut < all.size() ? all[best_cut] : SIZE_MAX;
  std::vector<Vertex> ai, aj, bi, bj;
  for (auto x : a) (x < pivot ? ai : aj).push_back(x);
  for (auto x : b) (x < pivot ? bi : bj).push_back(x);
  const VertexSet AI(ai), AJ(aj), BI(bi), BJ(bj);
  EditSet out;
  set_bipartite(g, AI, BI, false, out);
  set_bipartite(g, AJ, BJ, true, out);
  optimal_suffix_repair(g, AI, BJ, out);
  optimal_suffix_repair(g, BI, AJ, out);
  return out;
}

inline EditSet general_pair_edits(const OrderedGraph& g, const VertexSet& a, const VertexSet& b, const Rational& gamma) {
  EditSet out;
  const Rational ab = Rational(a.size()) * Rational(b.size());
  if (Rational(g.non_edges_between(a, b)) <= gamma * ab) {
    set_bipartite(g, a, b, true, out);
    return out;
  }
  // minimal suffix J of A u B with non-edges(A n J, B n J) >= gamma|A||B|/8
  const VertexSet all = set_union(a, b);
  std::vector<Vertex> ja, jb;
  std::size_t missing = 0, cut = all.size();
  while (cut > 0 && Rational(missing) < gamma * ab / 8) {
    const Vertex w = all[--cut];
    const bool from_a = a.contains(w);
    for (auto o : from_a ? jb : ja) missing += !g.adjacent(w, o);
    (from_a ? ja : jb).push_back(w);
  }
  const Vertex pivot = all[cut];
  std::vector<Vertex> ai, bi;
  for (auto x : a)
    if (x < pivot) ai.push_back(x);
  for (auto x : b)
    if (x < pivot) bi.push_back(x);
  const VertexSet AI(ai), BI(bi), AJ(ja), BJ(jb);
  set_bipartite(g, AI, BI, false, out);
  set_bipartite(g, AJ, BJ, true, out);
  optimal_suffix_repair(g, AI, BJ, out);
  optimal_suffix_repair(g, BI, AJ, out);
  return out;
}

inline void verify_d_free(const OrderedGraph& g, const EditSet& e, const VertexSet& s, const char* who) {
  const auto after = apply(g, e);
  if (d_count(after, s) != 0) throw Error(std::string(who) + ": repaired subgraph still contains an induced D");
}

}  // namespace detail

// A < B cliques with at most gamma^2 |A|^2 |B| / 4 induced copies of D in
// G[A u B]: at most gamma|A||B| changes between A and B make it D-free.
inline EditSet repair_clique_pair_simple(const OrderedGraph& g, const VertexSet& a, const VertexSet& b,
                                         const Rational& gamma) {
  detail::require_positive(gamma, "gamma");
  detail::require_clique(g, a, "A");
  detail::require_clique(g, b, "B");
  detail::require_disjoint(a, b, "A and B");
  if (!a.precedes(b)) throw PreconditionError("clique_pair_simple", "A must precede B");
  const VertexSet ab = set_union(a, b);
  const auto count = detail::d_count(g, ab);
  const Rational as = a.size(), bs = b.size();
  if (Rational(count) > gamma * gamma * as * as * bs / 4)
    throw PreconditionError("clique_pair_simple", "more than gamma^2 |A|^2 |B| / 4 induced copies of D",
                            std::to_string(count));
  EditSet out;
  detail::simple_pair_edits(g, a, b, gamma, out);
  detail::verify_d_free(g, out, ab, "clique_pair_simple");
  return out;
}

// A, B disjoint cliques in any interleaving, |A|,|B| >= 8/gamma, at most
// (gamma^2/64)|A||B|min(|A|,|B|) induced copies of D.
inline EditSet repair_clique_pair_general(const OrderedGraph& g, const VertexSet& a, const VertexSet& b,
                                          const Rational& gamma) {
  detail::require_positive(gamma, "gamma");
  detail::require_clique(g, a, "A");
  detail::require_clique(g, b, "B");
  detail::require_disjoint(a, b, "A and B");
  const Rational as = a.size(), bs = b.size();
  if (as < 8 / gamma || bs < 8 / gamma) throw PreconditionError("clique_pair_general", "|A| and |B| must be >= 8/gamma");
  const VertexSet ab = set_union(a, b);
  const auto count = detail::d_count(g, ab);
  if (Rational(count) > gamma * gamma / 64 * as * bs * std::min(as, bs))
    throw PreconditionError("clique_pair_general", "more than (gamma^2/64)|A||B|min(|A|,|B|) induced copies of D",
                            std::to_string(count));
  EditSet out = detail::general_pair_edits(g, a, b, gamma);
  detail::verify_d_free(g, out, ab, "clique_pair_general");
  return out;
}

// ---------------------------------------------------------------------------
// Sequences

struct SequenceHit {
  VertexSet hit;            // a minimum set meeting every sequence
  BigInt sequences;         // number of (A_1..A_k)-sequences before removal
  bool within_budget;       // |hit| <= epsilon n
  bool count_hypothesis;    // sequences <= c_k epsilon^k n^k
};

// Exact minimum hitting set for (A_1..A_k)-sequences. Scanning left to right,
// the state is the longest prefix A_1..A_j already realised by kept vertices
// (greedy matching realises the longest one), so a vertex of A_{j+1} must be
// deleted or advances the state; reaching j = k is forbidden.
inline SequenceHit sequence_hitting_set(std::size_t n, const std::vector<VertexSet>& sets, const Rational& epsilon,
                                        const Rational& c_k = 1) {
  if (sets.empty()) throw InputError("at least one set is required");
  detail::require_unit_interval(epsilon, "epsilon");
  SequenceHit out{{}, count_sequences(n, sets), true, true};
  const std::size_t k = sets.size();
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < k; ++i)
    for (auto v : sets[i]) owner[v] = static_cast<int>(i);
  constexpr std::size_t inf = SIZE_MAX / 2;
  std::vector<std::size_t> cost(k, inf);
  cost[0] = 0;
  // per scanned vertex and resulting state: previous state and whether the
  // vertex was deleted on the way
  std::vector<std::vector<std::pair<std::size_t, char>>> parent;
  std::vector<Vertex> order;
  for (Vertex v = 0; v < n; ++v) {
    if (owner[v] < 0) continue;
    const auto i = static_cast<std::size_t>(owner[v]);
    std::vector<std::pair<std::size_t, char>> par(k);
    for (std::size_t j = 0; j < k; ++j) par[j] = {j, 0};
    if (cost[i] < inf) {
      const std::size_t from_i = cost[i];
      cost[i] = from_i + 1;
      par[i] = {i, 1};
      if (i + 1 < k && from_i <= cost[i + 1]) {
        cost[i + 1] = from_i;
        par[i + 1] = {i, 0};
      }
    }
    parent.push_back(std::move(par));
    order.push_back(v);
  }
  std::size_t state = 0;
  for (std::size_t j = 1; j < k; ++j)
    if (cost[j] < cost[state]) state = j;
  std::vector<Vertex> hit;
  for (std::size_t idx = order.size(); idx-- > 0;) {
    const auto [p, del] = parent[idx][state];
    if (del) hit.push_back(order[idx]);
    state = p;
  }
  out.hit = VertexSet(std::move(hit));
  out.within_budget = Rational(out.hit.size()) <= epsilon * n;
  out.count_hypothesis = Rational(out.sequences) <= c_k * pow(epsilon * n, static_cast<unsigned>(k));
  return out;
}

// ---------------------------------------------------------------------------
// Interval decomposition

struct CliqueTag {
  VertexSet members;
  std::vector<std::size_t> sources;  // indices i with X_i meeting the clique
};

struct IntervalDecomposition {
  VertexSet deleted;                           // S
  std::vector<VertexSet> intervals;            // I_1..I_t
  std::vector<std::vector<CliqueTag>> cliques;  // components of G[I_j]
  std::size_t coarse_intervals = 0;            // s, before trimming and refining
  bool count_hypothesis = true;                // D-count <= c gamma^6 n^3 / m^15
  std::vector<std::string> notes;
};

enum class DecompositionMode {
  strict,     // every hitting set must respect its budget
  practical,  // additionally hits every D-shaped clique triple, no budgets
};

namespace detail {

// Components of G[s], each reported with the cliques X_i it meets.
inline std::vector<CliqueTag> clique_components(const OrderedGraph& g, const VertexSet& s,
                                                const std::vector<int>& source_of) {
  std::vector<CliqueTag> out;
  std::vector<char> done(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (done[i]) continue;
    std::vector<Vertex> comp;
    std::vector<std::size_t> stack{i};
    done[i] = 1;
    while (!stack.empty()) {
      const auto c = stack.back();
      stack.pop_back();
      comp.push_back(s[c]);
      for (std::size_t j = 0; j < s.size(); ++j)
        if (!done[j] && g.adjacent(s[c], s[j])) done[j] = 1, stack.push_back(j);
    }
    CliqueTag tag{VertexSet(std::move(comp)), {}};
    for (auto v : tag.members)
      if (source_of[v] >= 0) tag.sources.push_back(static_cast<std::size_t>(source_of[v]));
    std::sort(tag.sources.begin(), tag.sources.end());
    tag.sources.erase(std::unique(tag.sources.begin(), tag.sources.end()), tag.sources.end());
    out.push_back(std::move(tag));
  }
  return out;
}

// Each component must be a clique equal to I_j n (union of its sources).
inline bool components_are_tagged_cliques(const OrderedGraph& g, const VertexSet& interval,
                                          const std::vector<CliqueTag>& comps, const std::vector<int>& source_of) {
  for (const auto& c : comps) {
    if (!g.is_clique(c.members)) return false;
    std::size_t expected = 0;
    for (auto v : interval)
      if (source_of[v] >= 0 && std::binary_search(c.sources.begin(), c.sources.end(), source_of[v])) ++expected;
    if (expected != c.members.size()) return false;
  }
  return true;
}

}  // namespace detail

inline IntervalDecomposition interval_partition(const OrderedGraph& g, const std::vector<VertexSet>& cliques,
                                                const Rational& gamma, const Rational& c3 = 1,
                                                DecompositionMode mode = DecompositionMode::strict) {
  detail::require_unit_interval(gamma, "gamma");
  detail::require_positive(c3, "c_3");
  const std::size_t m = cliques.size();
  std::vector<int> source_of(g.size(), -1);
  std::vector<Vertex> universe_items;
  for (std::size_t i = 0; i < m; ++i) {
    detail::require_clique(g, cliques[i], "X_i");
    for (auto v : cliques[i]) {
      if (source_of[v] >= 0) throw PreconditionError("interval_partition", "cliques overlap");
      source_of[v] = static_cast<int>(i);
      universe_items.push_back(v);
    }
  }
  const VertexSet universe(std::move(universe_items));
  const std::size_t n = universe.size();
  IntervalDecomposition out;
  if (n == 0) return out;

  // cut positions (indices into universe) from every pairwise split
  std::vector<std::size_t> cuts{0, n};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto chk = check_two_clique_characterization(g, cliques[i], cliques[j]);
      if (!chk.d_free)
        throw PreconditionError("interval_partition",
                                "G[X_" + std::to_string(i + 1) + " u X_" + std::to_string(j + 1) +
                                    "] contains an induced D " + describe(*chk.witness));
      if (!chk.split.j.empty()) cuts.push_back(universe.rank(chk.split.j.front()));
      else cuts.push_back(n);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  out.coarse_intervals = cuts.size() - 1;

  const Rational mm = m;
  const auto d_total = detail::d_count(g, universe);
  out.count_hypothesis = Rational(d_total) <= c3 / 64 * pow(gamma, 6) * pow(Rational(n), 3) / pow(mm, 15);

  const Rational min_len = gamma * n / (mm * mm);
  const Rational eps = gamma / (2 * mm * mm * mm);
  std::vector<Vertex> deleted;

  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    std::vector<Vertex> piece(universe.begin() + static_cast<std::ptrdiff_t>(cuts[c]),
                              universe.begin() + static_cast<std::ptrdiff_t>(cuts[c + 1]));
    if (Rational(piece.size()) < min_len) {
      deleted.insert(deleted.end(), piece.begin(), piece.end());
      continue;
    }
    VertexSet current(std::move(piece));
    // Per clique pair inside this piece the bipartite graph is complete or
    // empty; record which.
    auto joined = [&](std::size_t i, std::size_t j) {
      const auto xi = set_intersection(cliques[i], current), xj = set_intersection(cliques[j], current);
      return !xi.empty() && !xj.empty() && g.non_edges_between(xi, xj) == 0;
    };
    auto apart = [&](std::size_t i, std::size_t j) {
      const auto xi = set_intersection(cliques[i], current), xj = set_intersection(cliques[j], current);
      return g.edges_between(xi, xj) == 0;
    };
    std::vector<char> used(m * m * m, 0);
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t i2 = 0; i2 < m; ++i2)
          for (std::size_t i3 = 0; i3 < m; ++i3) {
            if (i1 == i2 || i1 == i3 || i2 == i3) continue;
            auto& flag = used[(i1 * m + i2) * m + i3];
            if (flag) continue;
            const std::vector<VertexSet> sets{set_intersection(cliques[i1], current),
                                              set_intersection(cliques[i2], current),
                                              set_intersection(cliques[i3], current)};
            const auto count = count_sequences(g.size(), sets);
            if (count == 0) continue;
            const Rational len = current.size();
            const bool few = Rational(count) <= c3 * pow(eps, 3) * len * len * len;
            const bool d_shaped = joined(i1, i2) && joined(i1, i3) && apart(i2, i3);
            if (!few && !(mode == DecompositionMode::practical && d_shaped)) continue;
            const auto res = sequence_hitting_set(g.size(), sets, std::min(Rational(1), Rational(eps * len / g.size())), c3);
            if (mode == DecompositionMode::strict && Rational(res.hit.size()) > eps * len)
              throw PreconditionError("interval_partition", "sequence hitting set exceeds its budget",
                                      std::to_string(res.hit.size()));
            if (!few)
              out.notes.push_back("forced hit on D-shaped triple (" + std::to_string(i1 + 1) + "," +
                                  std::to_string(i2 + 1) + "," + std::to_string(i3 + 1) + ")");
            flag = 1;
            progress = true;
            deleted.insert(deleted.end(), res.hit.begin(), res.hit.end());
            current = set_difference(current, res.hit);
          }
    }
    if (current.empty()) continue;
    // refine by the minimal subintervals J_i covering X_i n I''
    std::vector<std::size_t> inner{0, current.size()};
    for (std::size_t i = 0; i < m; ++i) {
      const auto xi = set_intersection(cliques[i], current);
      if (xi.empty()) continue;
      inner.push_back(current.rank(xi.front()));
      inner.push_back(current.rank(xi.back()) + 1);
    }
    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    for (std::size_t p = 0; p + 1 < inner.size(); ++p) {
      VertexSet part(std::vector<Vertex>(current.begin() + static_cast<std::ptrdiff_t>(inner[p]),
                                         current.begin() + static_cast<std::ptrdiff_t>(inner[p + 1])));
      auto comps = detail::clique_components(g, part, source_of);
      if (!detail::components_are_tagged_cliques(g, part, comps, source_of))
        throw Error("interval_partition: interval does not induce a union of tagged cliques");
      out.intervals.push_back(std::move(part));
      out.cliques.push_back(std::move(comps));
    }
  }
  out.deleted = VertexSet(std::move(deleted));
  if (Rational(out.deleted.size()) > gamma * n) out.notes.push_back("|S| exceeds gamma n");
  if (out.intervals.size() > 2 * m * m * m) out.notes.push_back("more than 2 m^3 intervals");
  return out;
}

// ---------------------------------------------------------------------------
// Pairs of intervals

namespace detail {

inline std::vector<VertexSet> members(const std::vector<CliqueTag>& tags) {
  std::vector<VertexSet> out;
  for (const auto& t : tags) out.push_back(t.members);
  return out;
}

// After the per-pair steps, a clique of I joined to two cliques of J still
// spans induced copies of D; keep only its heaviest attachment.
inline void single_attachment(const OrderedGraph& g, const std::vector<VertexSet>& as,
                              const std::vector<VertexSet>& bs, EditSet& out) {
  for (const auto& a : as) {
    std::size_t best = 0, best_edges = 0, attached = 0;
    for (std::size_t j = 0; j < bs.size(); ++j) {
      const auto e = g.edges_between(a, bs[j]);
      if (e > 0) ++attached;
      if (e > best_edges) best_edges = e, best = j;
    }
    if (attached < 2) continue;
    for (std::size_t j = 0; j < bs.size(); ++j)
      if (j != best) set_bipartite(g, a, bs[j], false, out);
  }
}

inline EditSet interval_pair_edits(const OrderedGraph& g, const VertexSet& i_set, const VertexSet& j_set,
                                   const std::vector<VertexSet>& as, const std::vector<VertexSet>& bs,
                                   const Rational& gamma, std::size_t m) {
  const Rational mm = m;
  const Rational delta = pow(gamma, 6) / (Rational(65536) * mm * mm * mm);
  const Rational big_a = gamma * Rational(i_set.size()) / (4 * mm), big_b = gamma * Rational(j_set.size()) / (4 * mm);
  EditSet step1;
  for (const auto& a : as)
    for (const auto& b : bs)
      if (Rational(a.size()) >= big_a && Rational(b.size()) >= big_b) simple_pair_edits(g, a, b, delta, step1);
  const OrderedGraph g1 = apply(g, step1);
  EditSet step2;
  for (const auto& a : as)
    for (const auto& b : bs) {
      const Rational ab = Rational(a.size()) * Rational(b.size());
      if (Rational(g1.edges_between(a, b)) <= gamma * ab / 4 || Rational(a.size()) <= big_a ||
          Rational(b.size()) <= big_b)
        set_bipartite(g1, a, b, false, step2);
    }
  const OrderedGraph g2 = apply(g1, step2);
  EditSet step3;
  single_attachment(g2, as, bs, step3);
  EditingGraph eg(g);
  for (const auto* part : {&step1, &step2, &step3}) eg.apply(*part, "");
  return eg.edits();
}

// Least-cost D-free completion among edits between I and J: each clique of
// I keeps edges to at most one clique of J, with cheapest suffix structure.
inline EditSet interval_pair_optimum(const OrderedGraph& g, const std::vector<VertexSet>& as,
                                     const std::vector<VertexSet>& bs) {
  EditSet out;
  for (const auto& a : as) {
    std::vector<std::size_t> edges(bs.size());
    std::size_t total = 0;
    for (std::size_t j = 0; j < bs.size(); ++j) total += edges[j] = g.edges_between(a, bs[j]);
    std::size_t best_cost = total;
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < bs.size(); ++j) {
      std::size_t cost = total - edges[j];
      for (auto v : bs[j]) cost += best_suffix_cost(g, a, v);
      if (cost < best_cost) best_cost = cost, best = j;
    }
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (best && j == *best) optimal_suffix_repair(g, a, bs[j], out);
      else set_bipartite(g, a, bs[j], false, out);
    }
  }
  return out;
}

}  // namespace detail

// I < J intervals, each inducing a disjoint union of at most m cliques, with
// at most (gamma^15 / (2^40 m^9)) |I||J| min(|I|,|J|) induced copies of D.
// Changes are made only between I and J.
inline EditSet repair_interval_pair(const OrderedGraph& g, const VertexSet& i_set, const VertexSet& j_set,
                                    const std::vector<VertexSet>& i_cliques, const std::vector<VertexSet>& j_cliques,
                                    const Rational& gamma, std::size_t m) {
  detail::require_positive(gamma, "gamma");
  if (!i_set.precedes(j_set) || !i_set.disjoint_from(j_set))
    throw PreconditionError("interval_pair", "I must precede J");
  auto check_side = [&](const VertexSet& side, const std::vector<VertexSet>& parts, const char* name) {
    if (parts.size() > m) throw PreconditionError("interval_pair", std::string(name) + " has more than m cliques");
    std::vector<Vertex> all;
    for (const auto& p : parts) {
      detail::require_clique(g, p, name);
      all.insert(all.end(), p.begin(), p.end());
    }
    if (VertexSet(all) != side || all.size() != side.size())
      throw PreconditionError("interval_pair", std::string(name) + " cliques must partition the interval");
    for (std::size_t x = 0; x < parts.size(); ++x)
      for (std::size_t y = x + 1; y < parts.size(); ++y)
        if (g.edges_between(parts[x], parts[y]) != 0)
          throw PreconditionError("interval_pair", std::string(name) + " is not a disjoint union of cliques");
  };
  check_side(i_set, i_cliques, "I");
  check_side(j_set, j_cliques, "J");
  const VertexSet both = set_union(i_set, j_set);
  const auto count = detail::d_count(g, both);
  const Rational is = i_set.size(), js = j_set.size(), mm = m;
  if (Rational(count) > pow(gamma, 15) / (pow(Rational(2), 40) * pow(mm, 9)) * is * js * std::min(is, js))
    throw PreconditionError("interval_pair", "too many induced copies of D for the interval-pair repair",
                            std::to_string(count));
  EditSet out = detail::interval_pair_edits(g, i_set, j_set, i_cliques, j_cliques, gamma, m);
  detail::verify_d_free(g, out, both, "interval_pair");
  return out;
}

// ---------------------------------------------------------------------------
// Three cliques and vertex removal

// A < B < C cliques covering the instance, pairwise D-free, at most s^3/12
// induced copies of D: the vertices of a maximal vertex-disjoint family of
// copies (at most 3s of them) meet every copy.
inline VertexSet three_cliques_vertex_removal(const OrderedGraph& g, const VertexSet& a, const VertexSet& b,
                                              const VertexSet& c, const Rational& s) {
  if (s < 1) throw InputError("s must be at least 1");
  detail::require_clique(g, a, "A");
  detail::require_clique(g, b, "B");
  detail::require_clique(g, c, "C");
  if (!a.precedes(b) || !b.precedes(c) || !a.disjoint_from(b) || !b.disjoint_from(c))
    throw PreconditionError("three_cliques", "need A < B < C");
  for (const auto& [x, y] : {std::pair{&a, &b}, std::pair{&a, &c}, std::pair{&b, &c}}) {
    const auto chk = check_suffix_characterization(g, *x, *y);
    if (!chk.d_free)
      throw PreconditionError("three_cliques", "pairwise union contains an induced D " + describe(*chk.witness));
  }
  const VertexSet all = set_union(set_union(a, b), c);
  const auto count = detail::d_count(g, all);
  if (Rational(count) > s * s * s / 12)
    throw PreconditionError("three_cliques", "more than s^3/12 induced copies of D", std::to_string(count));
  const auto sub = induced_subgraph(g, all);
  std::vector<char> taken(all.size(), 0);
  std::vector<Vertex> out;
  for_each_induced_D(sub, [&](Vertex x, Vertex y, Vertex z) {
    if (!taken[x] && !taken[y] && !taken[z]) {
      taken[x] = taken[y] = taken[z] = 1;
      out.insert(out.end(), {all[x], all[y], all[z]});
    }
    return true;
  });
  VertexSet result(std::move(out));
  if (detail::d_count(g, set_difference(all, result)) != 0)
    throw Error("three_cliques: copies survive the vertex removal");
  return result;
}

// ---------------------------------------------------------------------------
// Independent residue

namespace detail {

// Deletes forward X -> Y edges, then for each y a maximum matching of
// non-edges inside its forward neighbourhood N_y in X.
inline EditSet independent_set_edits(const OrderedGraph& g, const VertexSet& x, const VertexSet& y) {
  EditSet out;
  for (auto u : x)
    for (auto it = std::upper_bound(y.begin(), y.end(), u); it != y.end(); ++it)
      if (g.adjacent(u, *it)) out.toggle(u, *it, true, "");
  using MatchGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  for (auto v : y) {
    const VertexSet ny = forward_within(g, v, x);
    if (ny.size() < 2) continue;
    MatchGraph mg(ny.size());
    bool any = false;
    for (std::size_t i = 0; i < ny.size(); ++i)
      for (std::size_t j = i + 1; j < ny.size(); ++j)
        if (!g.adjacent(ny[i], ny[j])) boost::add_edge(i, j, mg), any = true;
    if (!any) continue;
    std::vector<boost::graph_traits<MatchGraph>::vertex_descriptor> mate(ny.size());
    boost::edmonds_maximum_cardinality_matching(mg, &mate[0]);
    for (std::size_t i = 0; i < ny.size(); ++i)
      if (mate[i] != boost::graph_traits<MatchGraph>::null_vertex()) out.toggle(v, ny[i], true, "");
  }
  return out;
}

}  // namespace detail

// V = X u Y, Y independent, G[X] D-free, |Y| >= 4/gamma, at most
// (gamma^2/32)|X||Y|min(|X|,|Y|) induced copies of D: at most gamma|X||Y|
// deletions between X and Y.
inline EditSet repair_against_independent_set(const OrderedGraph& g, const VertexSet& x, const VertexSet& y,
                                              const Rational& gamma) {
  detail::require_positive(gamma, "gamma");
  detail::require_disjoint(x, y, "X and Y");
  if (Rational(y.size()) < 4 / gamma) throw PreconditionError("independent_set", "|Y| must be >= 4/gamma");
  if (!g.is_independent(y)) throw PreconditionError("independent_set", "Y is not independent");
  if (const auto w = detail::first_D_in(g, x))
    throw PreconditionError("independent_set", "G[X] contains an induced D " + describe(*w));
  const VertexSet all = set_union(x, y);
  const auto count = detail::d_count(g, all);
  const Rational xs = x.size(), ys = y.size();
  if (Rational(count) > gamma * gamma / 32 * xs * ys * std::min(xs, ys))
    throw PreconditionError("independent_set", "more than (gamma^2/32)|X||Y|min(|X|,|Y|) induced copies of D",
                            std::to_string(count));
  EditSet out = detail::independent_set_edits(g, x, y);
  detail::verify_d_free(g, out, all, "independent_set");
  return out;
}

}  // namespace ordrem
