#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ordrem/ordered_graph.hpp"
#include "ordrem/parallel.hpp"
#include "ordrem/random.hpp"
#include "ordrem/rational.hpp"

namespace ordrem {

enum class CopyKind { induced, non_induced };

namespace detail {

inline void guard_pattern_size(const OrderedGraph& f) {
  if (f.size() > limits().max_pattern_vertices)
    throw TooLargeError("pattern with " + std::to_string(f.size()) + " vertices exceeds the counting cap of " +
                        std::to_string(limits().max_pattern_vertices));
}

// Ordered backtracking over order-preserving injections V(f) -> V(g). The
// candidate set at each depth is the intersection of (co-)neighbourhood rows
// of the already placed vertices, restricted to labels after the previous
// image.
class EmbeddingSearch {
 public:
  EmbeddingSearch(const OrderedGraph& f, const OrderedGraph& g, CopyKind kind)
      : f_(f), g_(g), kind_(kind), k_(f.size()), words_(g.words()), scratch_((k_ + 1) * words_, 0), image_(k_, 0) {
    valid_.assign(words_, ~std::uint64_t{0});
    if (words_ > 0 && g.size() % 64) valid_.back() = (std::uint64_t{1} << (g.size() % 64)) - 1;
  }

  // Candidates for pattern vertex `depth` given image_[0..depth).
  std::span<std::uint64_t> candidates(std::size_t depth) {
    std::span<std::uint64_t> c(scratch_.data() + depth * words_, words_);
    std::copy(valid_.begin(), valid_.end(), c.begin());
    if (depth > 0) bits::clear_through(c, image_[depth - 1]);
    for (std::size_t j = 0; j < depth; ++j) {
      const auto row = g_.row(image_[j]);
      if (f_.adjacent(j, depth)) {
        for (std::size_t w = 0; w < words_; ++w) c[w] &= row[w];
      } else if (kind_ == CopyKind::induced) {
        for (std::size_t w = 0; w < words_; ++w) c[w] &= ~row[w];
      }
    }
    return c;
  }

  // Number of embeddings extending a fixed image of pattern vertex 0.
  unsigned __int128 count_from_root(Vertex root) {
    image_[0] = root;
    return count_rec(1);
  }

  // Visits embeddings in lexicographic order; `prune(depth, image)` may
  // reject partial maps, `visit(image)` returns false to stop.
  template <typename Prune, typename Visit>
  bool enumerate(Prune& prune, Visit& visit, std::size_t depth = 0) {
    if (depth == k_) return visit(std::span<const Vertex>(image_));
    auto c = candidates(depth);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t x = c[w];
      while (x) {
        const Vertex v = w * 64 + static_cast<std::size_t>(std::countr_zero(x));
        x &= x - 1;
        image_[depth] = v;
        if (!prune(depth, std::span<const Vertex>(image_.data(), depth + 1))) continue;
        if (!enumerate(prune, visit, depth + 1)) return false;
        // candidates(depth + 1) overwrote only deeper scratch rows
      }
    }
    return true;
  }

 private:
  unsigned __int128 count_rec(std::size_t depth) {
    if (depth == k_) return 1;
    auto c = candidates(depth);
    if (depth + 1 == k_) return bits::popcount(c);
    unsigned __int128 total = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t x = c[w];
      while (x) {
        image_[depth] = w * 64 + static_cast<std::size_t>(std::countr_zero(x));
        x &= x - 1;
        total += count_rec(depth + 1);
      }
    }
    return total;
  }

  const OrderedGraph& f_;
  const OrderedGraph& g_;
  CopyKind kind_;
  std::size_t k_;
  std::size_t words_;
  std::vector<std::uint64_t> scratch_;
  std::vector<std::uint64_t> valid_;
  std::vector<Vertex> image_;
};

inline BigInt to_big(unsigned __int128 v) {
  BigInt r = static_cast<std::uint64_t>(v >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(v);
  return r;
}

}  // namespace detail

// Number of order-preserving injections of f into g (induced or not).
inline BigInt count_embeddings(const OrderedGraph& f, const OrderedGraph& g, CopyKind kind) {
  detail::guard_pattern_size(f);
  if (f.size() == 0) return 1;
  if (f.size() > g.size()) return 0;
  std::vector<unsigned __int128> per_root(g.size(), 0);
  const std::size_t workers = std::min<std::size_t>(thread_count(), g.size());
  parallel_for(workers, [&](std::size_t w) {
    detail::EmbeddingSearch search(f, g, kind);
    for (Vertex r = w; r < g.size(); r += workers) per_root[r] = search.count_from_root(r);
  });
  BigInt total = 0;
  for (auto c : per_root) total += detail::to_big(c);
  return total;
}

inline BigInt count_induced(const OrderedGraph& f, const OrderedGraph& g) {
  return count_embeddings(f, g, CopyKind::induced);
}

inline BigInt count_copies(const OrderedGraph& f, const OrderedGraph& g) {
  return count_embeddings(f, g, CopyKind::non_induced);
}

// Visits copies of f in g in lexicographic order of their vertex tuples.
inline void for_each_copy(const OrderedGraph& f, const OrderedGraph& g, CopyKind kind,
                          const std::function<bool(std::span<const Vertex>)>& visit) {
  detail::guard_pattern_size(f);
  if (f.size() > g.size()) return;
  if (f.size() == 0) {
    visit({});
    return;
  }
  detail::EmbeddingSearch search(f, g, kind);
  auto prune = [](std::size_t, std::span<const Vertex>) { return true; };
  auto v = [&](std::span<const Vertex> img) { return visit(img); };
  search.enumerate(prune, v);
}

inline std::optional<VertexSet> find_copy(const OrderedGraph& f, const OrderedGraph& g, CopyKind kind) {
  std::optional<VertexSet> out;
  for_each_copy(f, g, kind, [&](std::span<const Vertex> img) {
    out = VertexSet(std::vector<Vertex>(img.begin(), img.end()));
    return false;
  });
  return out;
}

// Induced copies of D: for every x, the non-adjacent pairs inside its forward
// neighbourhood.
inline std::uint64_t count_induced_D_u64(const OrderedGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint64_t> fwd(g.words());
  std::uint64_t total = 0;
  for (Vertex x = 0; x < n; ++x) {
    auto row = g.row(x);
    std::copy(row.begin(), row.end(), fwd.begin());
    bits::clear_through(fwd, x);
    const std::uint64_t d = bits::popcount(fwd);
    if (d < 2) continue;
    std::uint64_t twice_inside = 0;
    bits::for_each(fwd, [&](std::size_t y) { twice_inside += bits::popcount_and(g.row(y), fwd); });
    total += d * (d - 1) / 2 - twice_inside / 2;
  }
  return total;
}

inline BigInt count_induced_D(const OrderedGraph& g) { return BigInt(count_induced_D_u64(g)); }

// D-count of G[s].
inline std::uint64_t count_induced_D_in(const OrderedGraph& g, const VertexSet& s) {
  return count_induced_D_u64(induced_subgraph(g, s));
}

// Visits induced copies (x, y, z) of D in lexicographic order.
inline void for_each_induced_D(const OrderedGraph& g, const std::function<bool(Vertex, Vertex, Vertex)>& visit) {
  const std::size_t n = g.size();
  std::vector<std::uint64_t> fwd(g.words()), tail(g.words());
  for (Vertex x = 0; x < n; ++x) {
    auto row = g.row(x);
    std::copy(row.begin(), row.end(), fwd.begin());
    bits::clear_through(fwd, x);
    bool go = true;
    bits::for_each(fwd, [&](std::size_t y) {
      if (!go) return;
      auto ry = g.row(y);
      for (std::size_t w = 0; w < fwd.size(); ++w) tail[w] = fwd[w] & ~ry[w];
      bits::clear_through(tail, y);
      bits::for_each(tail, [&](std::size_t z) {
        if (go && !visit(x, y, z)) go = false;
      });
    });
    if (!go) return;
  }
}

inline std::optional<std::array<Vertex, 3>> find_induced_D(const OrderedGraph& g) {
  std::optional<std::array<Vertex, 3>> out;
  for_each_induced_D(g, [&](Vertex x, Vertex y, Vertex z) {
    out = std::array<Vertex, 3>{x, y, z};
    return false;
  });
  return out;
}

// Induced copies of D that use both u and v (u < v), in the current graph.
inline std::uint64_t count_induced_D_through_pair(const OrderedGraph& g, Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  const auto ru = g.row(u), rv = g.row(v);
  const std::size_t words = g.words();
  std::uint64_t total = 0;
  std::vector<std::uint64_t> m(words);
  if (g.adjacent(u, v)) {
    // {u,v} = {x,y}: z > v, z ~ u, z !~ v
    for (std::size_t w = 0; w < words; ++w) m[w] = ru[w] & ~rv[w];
    bits::clear_through(m, v);
    total += bits::popcount(m);
    // {u,v} = {x,z}: u < y < v, y ~ u, y !~ v
    for (std::size_t w = 0; w < words; ++w) m[w] = ru[w] & ~rv[w];
    bits::clear_through(m, u);
    std::uint64_t between = 0;
    bits::for_each(m, [&](std::size_t y) { between += y < v; });
    total += between;
  } else {
    // {u,v} = {y,z}: x < u, x ~ u, x ~ v
    for (std::size_t w = 0; w < words; ++w) m[w] = ru[w] & rv[w];
    std::uint64_t before = 0;
    bits::for_each(m, [&](std::size_t x) { before += x < u; });
    total += before;
  }
  return total;
}

// Number of increasing transversals v_1 < ... < v_k with v_i in sets[i].
inline BigInt count_sequences(std::size_t n, const std::vector<VertexSet>& sets) {
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (auto v : sets[i]) {
      if (v >= n) throw InputError("vertex " + std::to_string(v) + " out of range");
      if (owner[v] != -1) throw InputError("sets overlap at vertex " + std::to_string(v));
      owner[v] = static_cast<int>(i);
    }
  std::vector<BigInt> ways(sets.size() + 1, 0);
  ways[0] = 1;
  for (Vertex v = 0; v < n; ++v)
    if (owner[v] >= 0) ways[owner[v] + 1] += ways[owner[v]];
  return ways.back();
}

// Greedy first-fit (lexicographic copy order) family of copies pairwise
// sharing at most one vertex. `seed` copies, if given, are verified and taken
// first.
inline std::vector<VertexSet> pack_disjoint_copies(const OrderedGraph& f, const OrderedGraph& g, CopyKind kind,
                                                   const std::vector<VertexSet>& seed = {}) {
  detail::guard_pattern_size(f);
  std::vector<VertexSet> chosen;
  OrderedGraph used(g.size());
  auto pairs_free = [&](std::span<const Vertex> c) {
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        if (used.adjacent(c[i], c[j])) return false;
    return true;
  };
  auto take = [&](std::span<const Vertex> c) {
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) used.add_edge(c[i], c[j]);
    chosen.emplace_back(std::vector<Vertex>(c.begin(), c.end()));
  };
  for (const auto& s : seed) {
    if (s.size() != f.size() || (!s.empty() && s.back() >= g.size()))
      throw InputError("seed copy has the wrong size or is out of range");
    const OrderedGraph sub = induced_subgraph(g, s);
    bool ok = true;
    for (Vertex a = 0; a < f.size() && ok; ++a)
      for (Vertex b = a + 1; b < f.size() && ok; ++b) {
        if (f.adjacent(a, b) && !sub.adjacent(a, b)) ok = false;
        if (kind == CopyKind::induced && !f.adjacent(a, b) && sub.adjacent(a, b)) ok = false;
      }
    if (!ok) throw InputError("seed set is not a copy of the pattern");
    if (!pairs_free(s.items())) throw InputError("seed copies are not pairwise pair-disjoint");
    take(s.items());
  }
  if (f.size() > g.size() || f.size() == 0) return chosen;
  detail::EmbeddingSearch search(f, g, kind);
  auto prune = [&](std::size_t depth, std::span<const Vertex> partial) {
    for (std::size_t j = 0; j < depth; ++j)
      if (used.adjacent(partial[j], partial[depth])) return false;
    return true;
  };
  auto visit = [&](std::span<const Vertex> c) {
    if (pairs_free(c)) take(c);
    return true;
  };
  search.enumerate(prune, visit);
  return chosen;
}

// Fraction of uniformly random k-subsets of V(g) spanning an induced copy of
// f; an unbiased estimate of count_induced(f, g) / C(n, k).
inline Rational estimate_induced(const OrderedGraph& f, const OrderedGraph& g, std::uint64_t samples,
                                 std::uint64_t seed) {
  if (samples == 0) throw InputError("samples must be positive");
  const std::size_t k = f.size(), n = g.size();
  if (k > n) return 0;
  Rng rng(seed);
  std::uint64_t hits = 0;
  std::vector<Vertex> pick;
  for (std::uint64_t s = 0; s < samples; ++s) {
    pick.clear();
    while (pick.size() < k) {
      const Vertex v = rng.below(n);
      if (std::find(pick.begin(), pick.end(), v) == pick.end()) pick.push_back(v);
    }
    std::sort(pick.begin(), pick.end());
    bool match = true;
    for (std::size_t a = 0; a < k && match; ++a)
      for (std::size_t b = a + 1; b < k && match; ++b)
        if (f.adjacent(a, b) != g.adjacent(pick[a], pick[b])) match = false;
    hits += match;
  }
  return Rational(hits, samples);
}

}  // namespace ordrem
