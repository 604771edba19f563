#pragma once

// Deliberately naive reference implementations used as test oracles. None of
// these share code with the library beyond the graph container.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ordrem/ordered_graph.hpp"
#include "ordrem/random.hpp"

namespace oracle {

using ordrem::OrderedGraph;
using ordrem::Vertex;

// Visits every increasing k-tuple of {0..n-1}.
inline void for_each_tuple(std::size_t n, std::size_t k, const std::function<void(const std::vector<Vertex>&)>& f) {
  std::vector<Vertex> t(k);
  std::function<void(std::size_t, Vertex)> rec = [&](std::size_t depth, Vertex from) {
    if (depth == k) {
      f(t);
      return;
    }
    for (Vertex v = from; v < n; ++v) {
      t[depth] = v;
      rec(depth + 1, v + 1);
    }
  };
  rec(0, 0);
}

inline std::uint64_t count(const OrderedGraph& f, const OrderedGraph& g, bool induced) {
  std::uint64_t total = 0;
  for_each_tuple(g.size(), f.size(), [&](const std::vector<Vertex>& t) {
    for (Vertex a = 0; a < f.size(); ++a)
      for (Vertex b = a + 1; b < f.size(); ++b) {
        const bool e = g.adjacent(t[a], t[b]);
        if (f.adjacent(a, b) && !e) return;
        if (induced && !f.adjacent(a, b) && e) return;
      }
    ++total;
  });
  return total;
}

// Triple loop straight from the definition of D.
inline std::uint64_t count_D(const OrderedGraph& g) {
  std::uint64_t total = 0;
  const std::size_t n = g.size();
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y)
      for (Vertex z = y + 1; z < n; ++z)
        if (g.adjacent(x, y) && g.adjacent(x, z) && !g.adjacent(y, z)) ++total;
  return total;
}

// All monotone maps, checked against the edge condition only.
inline std::vector<std::vector<Vertex>> all_homomorphisms(const OrderedGraph& a, const OrderedGraph& b) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> img(a.size());
  std::function<void(std::size_t)> rec = [&](std::size_t d) {
    if (d == a.size()) {
      for (Vertex u = 0; u < a.size(); ++u)
        for (Vertex v = u + 1; v < a.size(); ++v)
          if (a.adjacent(u, v) && !b.adjacent(img[u], img[v])) return;
      out.push_back(img);
      return;
    }
    for (Vertex t = d == 0 ? 0 : img[d - 1]; t < b.size(); ++t) {
      img[d] = t;
      rec(d + 1);
    }
  };
  if (b.size() > 0 || a.size() == 0) rec(0);
  return out;
}

inline OrderedGraph random_graph(std::size_t n, double p, ordrem::Rng& rng) {
  OrderedGraph g(n);
  const auto threshold = static_cast<std::uint64_t>(p * 1e9);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.below(1000000000) < threshold) g.add_edge(u, v);
  return g;
}

// Graph from a bitmask over the pairs (0,1),(0,2),...,(n-2,n-1).
inline OrderedGraph from_mask(std::size_t n, std::uint64_t mask) {
  OrderedGraph g(n);
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++bit)
      if ((mask >> bit) & 1u) g.add_edge(u, v);
  return g;
}

// Number of increasing transversals v_1 < ... < v_k with v_i in sets[i],
// skipping vertices in `removed`; plain recursion.
inline std::uint64_t count_sequences(const std::vector<std::vector<Vertex>>& sets, const std::vector<bool>& removed,
                                     std::size_t depth = 0, long long after = -1) {
  if (depth == sets.size()) return 1;
  std::uint64_t total = 0;
  for (auto v : sets[depth])
    if (static_cast<long long>(v) > after && !removed[v]) total += count_sequences(sets, removed, depth + 1, v);
  return total;
}

// Size of a smallest vertex set meeting every sequence, by trying subsets of
// increasing size.
inline std::size_t min_hitting_set_size(std::size_t n, const std::vector<std::vector<Vertex>>& sets) {
  for (std::size_t size = 0; size <= n; ++size) {
    bool found = false;
    std::vector<bool> removed(n, false);
    for_each_tuple(n, size, [&](const std::vector<Vertex>& t) {
      if (found) return;
      for (auto v : t) removed[v] = true;
      if (count_sequences(sets, removed) == 0) found = true;
      for (auto v : t) removed[v] = false;
    });
    if (found) return size;
  }
  return n;
}

// Every equation p_1 s_1 + ... + p_{t-1} s_{t-1} = (sum p) s_t, by nested
// enumeration of weights and of all t values (s_t included).
inline bool solution_free(const std::vector<std::uint64_t>& s, std::uint64_t k) {
  for (std::uint64_t t = 3; t <= k; ++t) {
    std::vector<std::uint64_t> w(t - 1, 1), vals(t);
    std::function<bool(std::size_t)> over_values = [&](std::size_t pos) -> bool {
      if (pos == t) {
        std::uint64_t lhs = 0, total = 0;
        bool all_equal = true;
        for (std::size_t i = 0; i + 1 < t; ++i) {
          lhs += w[i] * vals[i];
          total += w[i];
          all_equal &= vals[i] == vals[t - 1];
        }
        return lhs != total * vals[t - 1] || all_equal;
      }
      for (auto x : s) {
        vals[pos] = x;
        if (!over_values(pos + 1)) return false;
      }
      return true;
    };
    std::function<bool(std::size_t, std::uint64_t)> over_weights = [&](std::size_t pos, std::uint64_t sum) -> bool {
      if (pos == t - 1) return over_values(0);
      for (std::uint64_t x = 1; sum + x <= k; ++x) {
        w[pos] = x;
        if (!over_weights(pos + 1, sum + x)) return false;
      }
      return true;
    };
    if (!over_weights(0, 0)) return false;
  }
  return true;
}

}  // namespace oracle
