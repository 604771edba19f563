#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace ordrem {

using Vertex = std::size_t;

// Packed bit helpers shared by the graph and the counters.
namespace bits {

inline std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

inline bool test(std::span<const std::uint64_t> w, std::size_t i) { return (w[i >> 6] >> (i & 63)) & 1u; }
inline void set(std::span<std::uint64_t> w, std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
inline void reset(std::span<std::uint64_t> w, std::size_t i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

inline std::size_t popcount(std::span<const std::uint64_t> w) {
  std::size_t c = 0;
  for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

inline std::size_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

// Clears every bit with index <= v.
inline void clear_through(std::span<std::uint64_t> w, std::size_t v) {
  const std::size_t word = v >> 6;
  for (std::size_t i = 0; i < word && i < w.size(); ++i) w[i] = 0;
  if (word < w.size()) {
    const std::size_t bit = v & 63;
    w[word] &= bit == 63 ? 0 : ~((std::uint64_t{2} << bit) - 1);
  }
}

template <typename F>
void for_each(std::span<const std::uint64_t> w, F&& f) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::uint64_t x = w[i];
    while (x) {
      const auto b = static_cast<std::size_t>(std::countr_zero(x));
      f(i * 64 + b);
      x &= x - 1;
    }
  }
}

}  // namespace bits

// Sorted set of vertex labels. The ordering of the host graph is the label
// order, so "interval", "prefix" and "suffix" are questions about positions.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> init) : items_(init) { normalize(); }
  explicit VertexSet(std::vector<Vertex> items) : items_(std::move(items)) { normalize(); }

  static VertexSet range(Vertex first, Vertex last_exclusive) {
    VertexSet s;
    for (Vertex v = first; v < last_exclusive; ++v) s.items_.push_back(v);
    return s;
  }

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }
  Vertex operator[](std::size_t i) const { return items_[i]; }
  Vertex front() const { return items_.front(); }
  Vertex back() const { return items_.back(); }
  const std::vector<Vertex>& items() const noexcept { return items_; }

  bool contains(Vertex v) const { return std::binary_search(items_.begin(), items_.end(), v); }

  // Position of v inside the set (v must be a member).
  std::size_t rank(Vertex v) const {
    return static_cast<std::size_t>(std::lower_bound(items_.begin(), items_.end(), v) - items_.begin());
  }

  void insert(Vertex v) {
    auto it = std::lower_bound(items_.begin(), items_.end(), v);
    if (it == items_.end() || *it != v) items_.insert(it, v);
  }

  void erase(Vertex v) {
    auto it = std::lower_bound(items_.begin(), items_.end(), v);
    if (it != items_.end() && *it == v) items_.erase(it);
  }

  // True iff this is upward closed inside `whole` (and a subset of it).
  bool is_suffix_of(const VertexSet& whole) const {
    if (!subset_of(whole)) return false;
    if (empty()) return true;
    return whole.size() - whole.rank(front()) == size();
  }

  bool is_prefix_of(const VertexSet& whole) const {
    if (!subset_of(whole)) return false;
    if (empty()) return true;
    return whole.rank(back()) + 1 == size();
  }

  bool subset_of(const VertexSet& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
  }

  bool disjoint_from(const VertexSet& other) const {
    auto a = items_.begin();
    auto b = other.items_.begin();
    while (a != items_.end() && b != other.items_.end()) {
      if (*a == *b) return false;
      if (*a < *b) ++a; else ++b;
    }
    return true;
  }

  // max(this) < min(other); vacuously true when either side is empty.
  bool precedes(const VertexSet& other) const { return empty() || other.empty() || back() < other.front(); }

  std::vector<std::uint64_t> mask(std::size_t n) const {
    std::vector<std::uint64_t> m(bits::words_for(n), 0);
    for (auto v : items_) bits::set(m, v);
    return m;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  friend VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
    return r;
  }
  friend VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
    return r;
  }
  friend VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.items_));
    return r;
  }

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  std::vector<Vertex> items_;
};

}  // namespace ordrem
