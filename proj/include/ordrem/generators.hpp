#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ordrem/ordered_graph.hpp"
#include "ordrem/random.hpp"

namespace ordrem {

// G(n, num/den).
inline OrderedGraph random_graph(std::size_t n, std::uint64_t num, std::uint64_t den, Rng& rng) {
  OrderedGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.chance(num, den)) g.add_edge(u, v);
  return g;
}

// Random pair toggles applied to a base graph; the count of distinct pairs
// actually toggled is the known repair budget of the result.
struct NoisyInstance {
  OrderedGraph base;
  OrderedGraph graph;
  std::vector<Edge> toggled;
};

inline NoisyInstance add_noise(const OrderedGraph& base, std::size_t toggles, Rng& rng) {
  NoisyInstance out{base, base, {}};
  const std::size_t n = base.size();
  if (n < 2) return out;
  OrderedGraph seen(n);
  for (std::size_t t = 0; t < toggles; ++t) {
    Vertex u = rng.below(n), v = rng.below(n);
    if (u == v || seen.adjacent(u, v)) continue;
    if (u > v) std::swap(u, v);
    seen.add_edge(u, v);
    out.graph.set_edge(u, v, !out.graph.adjacent(u, v));
    out.toggled.emplace_back(u, v);
  }
  std::sort(out.toggled.begin(), out.toggled.end());
  return out;
}

// Induced-D-free base graphs with planted cliques.
//
// interleaved: vertices are dealt to `cliques` groups at random (so groups
// interleave in the order) and each group is a clique; a disjoint union of
// cliques never contains an induced D.
// chained: consecutive blocks X_1 < ... < X_m, each a clique, with X_i and
// X_{i+1} either completely joined or not at all.
// Vertices with probability `loose_num/loose_den` stay isolated.
enum class BaseShape { interleaved, chained };

inline OrderedGraph planted_cliques(std::size_t n, std::size_t cliques, BaseShape shape, std::uint64_t loose_num,
                                    std::uint64_t loose_den, Rng& rng) {
  OrderedGraph g(n);
  if (cliques == 0) return g;
  std::vector<std::vector<Vertex>> groups(cliques);
  if (shape == BaseShape::interleaved) {
    for (Vertex v = 0; v < n; ++v) {
      if (rng.chance(loose_num, loose_den)) continue;
      groups[rng.below(cliques)].push_back(v);
    }
  } else {
    // cut points chosen uniformly, then sorted
    std::vector<Vertex> cuts;
    for (std::size_t i = 0; i + 1 < cliques; ++i) cuts.push_back(rng.below(n + 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.insert(cuts.begin(), 0);
    cuts.push_back(n);
    for (std::size_t i = 0; i < cliques; ++i)
      for (Vertex v = cuts[i]; v < cuts[i + 1]; ++v)
        if (!rng.chance(loose_num, loose_den)) groups[i].push_back(v);
  }
  for (const auto& grp : groups)
    for (std::size_t a = 0; a < grp.size(); ++a)
      for (std::size_t b = a + 1; b < grp.size(); ++b) g.add_edge(grp[a], grp[b]);
  if (shape == BaseShape::chained)
    for (std::size_t i = 0; i + 1 < cliques; ++i)
      if (rng.chance(1, 2))
        for (auto u : groups[i])
          for (auto v : groups[i + 1]) g.add_edge(u, v);
  return g;
}

// Cliques A < B < C of size r each, pairwise D-free, where a_i ~ b_j and
// a_i ~ c_j iff j <= i, and b_j ~ c_k iff j > k. Induced copies of D are
// exactly (a_i, b_j, c_k) with j <= k <= i, so there are C(r+2,3) of them,
// and the lexicographic greedy family is {(a_i, b_i, c_i)}.
struct ThreeCliqueInstance {
  OrderedGraph graph;
  VertexSet a, b, c;
};

inline ThreeCliqueInstance three_clique_instance(std::size_t r) {
  ThreeCliqueInstance out{OrderedGraph(3 * r), VertexSet::range(0, r), VertexSet::range(r, 2 * r),
                          VertexSet::range(2 * r, 3 * r)};
  auto& g = out.graph;
  for (const auto* part : {&out.a, &out.b, &out.c})
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) g.add_edge((*part)[i], (*part)[j]);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      g.add_edge(out.a[i], out.b[j]);
      g.add_edge(out.a[i], out.c[j]);
    }
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < j; ++k) g.add_edge(out.b[j], out.c[k]);
  return out;
}

}  // namespace ordrem
