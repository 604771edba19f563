#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordrem/error.hpp"
#include "ordrem/vertex_set.hpp"

namespace ordrem {

// Size guards for the exhaustive routines; adjustable at runtime.
struct Limits {
  std::size_t max_vertices = 100000;
  std::size_t max_homomorphism_vertices = 16;
  std::size_t max_core_vertices = 12;
  std::size_t max_pattern_vertices = 8;
};

inline Limits& limits() {
  static Limits l;
  return l;
}

using Edge = std::pair<Vertex, Vertex>;

// Simple graph on 0..n-1 whose vertex order is the label order. Adjacency is
// a packed bit matrix, one row per vertex; the matrix is kept symmetric.
class OrderedGraph {
 public:
  OrderedGraph() = default;

  explicit OrderedGraph(std::size_t n) : n_(n), words_(bits::words_for(n)) {
    if (n > limits().max_vertices)
      throw TooLargeError("graph with " + std::to_string(n) + " vertices exceeds the configured cap of " +
                          std::to_string(limits().max_vertices));
    data_.assign(n_ * words_, 0);
  }

  OrderedGraph(std::size_t n, const std::vector<Edge>& edges) : OrderedGraph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }

  bool adjacent(Vertex u, Vertex v) const { return bits::test(row(u), v); }

  void set_edge(Vertex u, Vertex v, bool present) {
    check_pair(u, v);
    if (present) {
      bits::set(mutable_row(u), v);
      bits::set(mutable_row(v), u);
    } else {
      bits::reset(mutable_row(u), v);
      bits::reset(mutable_row(v), u);
    }
  }
  void add_edge(Vertex u, Vertex v) { set_edge(u, v, true); }
  void remove_edge(Vertex u, Vertex v) { set_edge(u, v, false); }

  std::span<const std::uint64_t> row(Vertex u) const { return {data_.data() + u * words_, words_}; }

  std::size_t degree(Vertex u) const { return bits::popcount(row(u)); }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (Vertex u = 0; u < n_; ++u) total += degree(u);
    return total / 2;
  }

  // Edges sorted lexicographically, each as (u, v) with u < v.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < n_; ++u) {
      auto r = row(u);
      bits::for_each(r, [&](std::size_t v) {
        if (v > u) out.emplace_back(u, v);
      });
    }
    return out;
  }

  // Neighbours of u that come after u.
  VertexSet forward_neighbourhood(Vertex u) const {
    std::vector<Vertex> out;
    bits::for_each(row(u), [&](std::size_t v) {
      if (v > u) out.push_back(v);
    });
    return VertexSet(std::move(out));
  }

  VertexSet neighbourhood_in(Vertex u, const VertexSet& s) const {
    std::vector<Vertex> out;
    for (auto v : s)
      if (v != u && adjacent(u, v)) out.push_back(v);
    return VertexSet(std::move(out));
  }

  // e(S): edges with both ends in s.
  std::size_t edges_within(const VertexSet& s) const {
    const auto m = s.mask(n_);
    std::size_t total = 0;
    for (auto v : s) total += bits::popcount_and(row(v), m);
    return total / 2;
  }

  // e(A, B) for disjoint a, b.
  std::size_t edges_between(const VertexSet& a, const VertexSet& b) const {
    const auto m = b.mask(n_);
    std::size_t total = 0;
    for (auto v : a) total += bits::popcount_and(row(v), m);
    return total;
  }

  std::size_t non_edges_between(const VertexSet& a, const VertexSet& b) const {
    return a.size() * b.size() - edges_between(a, b);
  }

  bool is_clique(const VertexSet& s) const {
    const std::size_t k = s.size();
    return edges_within(s) == k * (k == 0 ? 0 : k - 1) / 2;
  }

  bool is_independent(const VertexSet& s) const { return edges_within(s) == 0; }

  friend bool operator==(const OrderedGraph& a, const OrderedGraph& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

 private:
  std::span<std::uint64_t> mutable_row(Vertex u) { return {data_.data() + u * words_, words_}; }

  void check_pair(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) throw InputError("vertex out of range");
    if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

inline OrderedGraph complement(const OrderedGraph& g) {
  const std::size_t n = g.size();
  OrderedGraph out(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) out.add_edge(u, v);
  return out;
}

inline OrderedGraph reverse(const OrderedGraph& g) {
  const std::size_t n = g.size();
  OrderedGraph out(n);
  for (auto [u, v] : g.edges()) out.add_edge(n - 1 - u, n - 1 - v);
  return out;
}

// Each vertex becomes an independent interval of `factor` clones; clones of
// adjacent vertices are completely joined.
inline OrderedGraph blowup(const OrderedGraph& g, std::size_t factor) {
  if (factor == 0) throw InputError("blowup factor must be positive");
  OrderedGraph out(g.size() * factor);
  for (auto [u, v] : g.edges())
    for (std::size_t a = 0; a < factor; ++a)
      for (std::size_t b = 0; b < factor; ++b) out.add_edge(u * factor + a, v * factor + b);
  return out;
}

inline OrderedGraph induced_subgraph(const OrderedGraph& g, const VertexSet& s) {
  if (!s.empty() && s.back() >= g.size())
    throw InputError("vertex " + std::to_string(s.back()) + " out of range for graph of size " + std::to_string(g.size()));
  OrderedGraph out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (g.adjacent(s[i], s[j])) out.add_edge(i, j);
  return out;
}

// Order- and edge-preserving vertex map; image[v] is the target of v.
struct Homomorphism {
  std::vector<Vertex> image;
  friend bool operator==(const Homomorphism&, const Homomorphism&) = default;
};

// Validates a candidate map, including the derived property that every
// preimage is an interval spanning an independent set.
inline bool is_homomorphism(const OrderedGraph& from, const OrderedGraph& to, const Homomorphism& h) {
  if (h.image.size() != from.size()) return false;
  for (std::size_t i = 0; i < h.image.size(); ++i) {
    if (h.image[i] >= to.size()) return false;
    if (i > 0 && h.image[i] < h.image[i - 1]) return false;
  }
  for (auto [u, v] : from.edges())
    if (!to.adjacent(h.image[u], h.image[v])) return false;
  // Monotone maps have interval preimages; each must be independent.
  for (std::size_t i = 0; i < h.image.size();) {
    std::size_t j = i;
    while (j < h.image.size() && h.image[j] == h.image[i]) ++j;
    for (std::size_t a = i; a < j; ++a)
      for (std::size_t b = a + 1; b < j; ++b)
        if (from.adjacent(a, b)) return false;
    i = j;
  }
  return true;
}

namespace detail {

inline void guard_homomorphism_size(const OrderedGraph& a, const OrderedGraph& b) {
  const auto cap = limits().max_homomorphism_vertices;
  if (a.size() > cap || b.size() > cap)
    throw TooLargeError("instance too large for exhaustive homomorphism search (cap " + std::to_string(cap) +
                        " vertices)");
}

// Depth-first over monotone maps, images tried in increasing order, so the
// first map visited is the lexicographically least one.
template <typename Visit>
bool homomorphism_search(const OrderedGraph& from, const OrderedGraph& to, std::vector<Vertex>& image,
                         std::size_t depth, Visit& visit) {
  if (depth == from.size()) return visit(image);
  const Vertex lo = depth == 0 ? 0 : image[depth - 1];
  for (Vertex t = lo; t < to.size(); ++t) {
    bool ok = true;
    for (std::size_t j = 0; j < depth && ok; ++j)
      if (from.adjacent(j, depth) && !to.adjacent(image[j], t)) ok = false;
    if (!ok) continue;
    image[depth] = t;
    if (!homomorphism_search(from, to, image, depth + 1, visit)) return false;
  }
  return true;
}

}  // namespace detail

// Calls visit(h) for every homomorphism in lexicographic order until visit
// returns false.
inline void for_each_homomorphism(const OrderedGraph& from, const OrderedGraph& to,
                                  const std::function<bool(const Homomorphism&)>& visit) {
  detail::guard_homomorphism_size(from, to);
  if (from.size() == 0) {
    visit(Homomorphism{});
    return;
  }
  if (to.size() == 0) return;
  std::vector<Vertex> image(from.size(), 0);
  auto adapter = [&](const std::vector<Vertex>& img) { return visit(Homomorphism{img}); };
  detail::homomorphism_search(from, to, image, 0, adapter);
}

inline std::optional<Homomorphism> find_homomorphism(const OrderedGraph& from, const OrderedGraph& to) {
  std::optional<Homomorphism> found;
  for_each_homomorphism(from, to, [&](const Homomorphism& h) {
    found = h;
    return false;
  });
  return found;
}

struct CoreResult {
  OrderedGraph core;
  VertexSet vertices;  // the chosen vertex set inside the input graph
  Homomorphism retraction;  // input -> core
};

// Smallest induced subgraph receiving a homomorphism; ties among equal sizes
// go to the lexicographically least vertex set.
inline CoreResult compute_core(const OrderedGraph& g) {
  const std::size_t n = g.size();
  if (n > limits().max_core_vertices)
    throw TooLargeError("core search capped at " + std::to_string(limits().max_core_vertices) + " vertices");
  if (n == 0) return {OrderedGraph(0), VertexSet{}, Homomorphism{}};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Vertex> pick(k);
    std::iota(pick.begin(), pick.end(), Vertex{0});
    while (true) {
      VertexSet s(pick);
      OrderedGraph sub = induced_subgraph(g, s);
      if (auto h = find_homomorphism(g, sub)) return {std::move(sub), std::move(s), std::move(*h)};
      // next k-combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  // unreachable: the identity always works at k = n
  return {g, VertexSet::range(0, n), Homomorphism{}};
}

inline OrderedGraph core(const OrderedGraph& g) { return compute_core(g).core; }

// K is a core iff its only endomorphism is the identity.
inline bool is_core(const OrderedGraph& k) {
  std::size_t count = 0;
  for_each_homomorphism(k, k, [&](const Homomorphism&) { return ++count < 2; });
  return count == 1;
}

inline bool is_forest(const OrderedGraph& g) {
  std::vector<Vertex> parent(g.size());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  std::function<Vertex(Vertex)> find = [&](Vertex x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [u, v] : g.edges()) {
    const Vertex a = find(u), b = find(v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

// Returns the vertices of some cycle in traversal order, or empty if acyclic.
inline std::vector<Vertex> find_cycle(const OrderedGraph& g) {
  const std::size_t n = g.size();
  std::vector<int> state(n, 0);
  std::vector<Vertex> parent(n, n);
  for (Vertex root = 0; root < n; ++root) {
    if (state[root]) continue;
    std::vector<std::pair<Vertex, Vertex>> stack{{root, 0}};
    state[root] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next == n) {
        state[u] = 2;
        stack.pop_back();
        continue;
      }
      const Vertex w = next++;
      if (w == u || !g.adjacent(u, w) || w == parent[u]) continue;
      if (state[w] == 1) {
        std::vector<Vertex> cycle;
        for (Vertex x = u; x != w; x = parent[x]) cycle.push_back(x);
        cycle.push_back(w);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (state[w] == 0) {
        state[w] = 1;
        parent[w] = u;
        stack.emplace_back(w, 0);
      }
    }
  }
  return {};
}

// Small named graphs used throughout.
namespace named {

// x < y < z with edges {x,y}, {x,z}.
inline OrderedGraph D() { return OrderedGraph(3, {{0, 1}, {0, 2}}); }

inline OrderedGraph single_edge() { return OrderedGraph(2, {{0, 1}}); }

inline OrderedGraph complete(std::size_t n) {
  OrderedGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline OrderedGraph empty(std::size_t n) { return OrderedGraph(n); }

inline OrderedGraph monotone_path(std::size_t k) {
  OrderedGraph g(k);
  for (Vertex i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
  return g;
}

// Path visiting the listed vertices in order.
inline OrderedGraph path(const std::vector<Vertex>& order) {
  OrderedGraph g(order.size());
  for (std::size_t i = 0; i + 1 < order.size(); ++i) g.add_edge(order[i], order[i + 1]);
  return g;
}

// Cycle visiting the listed vertices in order and closing back.
inline OrderedGraph cycle(const std::vector<Vertex>& order) {
  OrderedGraph g = path(order);
  if (order.size() > 2) g.add_edge(order.back(), order.front());
  return g;
}

inline OrderedGraph c4_1() { return cycle({0, 1, 2, 3}); }
inline OrderedGraph c4_2() { return cycle({0, 2, 1, 3}); }
inline OrderedGraph c4_3() { return cycle({0, 1, 3, 2}); }
inline OrderedGraph p4_1() { return path({1, 0, 3, 2}); }
inline OrderedGraph p4_2() { return path({1, 0, 2, 3}); }
inline OrderedGraph p4_3() { return path({2, 1, 0, 3}); }

}  // namespace named

}  // namespace ordrem
