#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "ordrem/counting.hpp"
#include "ordrem/error.hpp"
#include "ordrem/ordered_graph.hpp"
#include "ordrem/random.hpp"
#include "ordrem/rational.hpp"
#include "ordrem/symmetry.hpp"

namespace ordrem {

// ---------------------------------------------------------------------------
// Solution-free sets

// p_1 s_1 + ... + p_{t-1} s_{t-1} = (p_1 + ... + p_{t-1}) s_t with not all
// s equal. values holds s_1..s_t.
struct Violation {
  std::vector<std::uint64_t> weights;
  std::vector<std::uint64_t> values;

  std::string describe() const {
    std::ostringstream os;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (i) os << '+';
      if (weights[i] != 1) os << weights[i] << '*';
      os << values[i];
      total += weights[i];
    }
    os << " = " << total << '*' << values.back();
    return os.str();
  }
};

namespace detail {

// Calls visit(weights) for every composition of length `parts` with sum <= k,
// in lexicographic order. Stops when visit returns false.
template <typename Visit>
bool for_each_weighting(std::size_t parts, std::uint64_t k, Visit&& visit) {
  std::vector<std::uint64_t> w(parts);
  std::function<bool(std::size_t, std::uint64_t)> rec = [&](std::size_t pos, std::uint64_t used) {
    if (pos == parts) return visit(w);
    const std::uint64_t reserve = parts - pos - 1;
    for (std::uint64_t x = 1; used + x + reserve <= k; ++x) {
      w[pos] = x;
      if (!rec(pos + 1, used + x)) return false;
    }
    return true;
  };
  return rec(0, 0);
}

// Searches for a violation among `pool` (sorted, distinct). With `pinned`,
// only tuples containing that value are examined; this is the incremental
// check used when growing a set that is already solution-free. `work` counts
// inner steps.
// `member` flags the pool's values and may be longer than needed.
inline std::optional<Violation> search_violation(const std::vector<std::uint64_t>& pool,
                                                 const std::vector<char>& member, std::uint64_t k,
                                                 std::optional<std::uint64_t> pinned, std::uint64_t& work) {
  if (pool.empty()) return std::nullopt;
  const std::uint64_t top = pool.back();
  const std::uint64_t pin = pinned.value_or(0);
  std::optional<Violation> found;

  for (std::uint64_t t = 3; t <= k && !found; ++t) {
    const std::size_t left = t - 1;
    for_each_weighting(left, k, [&](const std::vector<std::uint64_t>& w) {
      std::uint64_t total_weight = 0;
      for (auto x : w) total_weight += x;
      const std::uint64_t limit = total_weight * top;
      std::vector<std::uint64_t> vals(t);

      auto report = [&](std::uint64_t st) {
        vals[t - 1] = st;
        if (std::all_of(vals.begin(), vals.end(), [&](std::uint64_t v) { return v == vals[0]; })) return false;
        found = Violation{w, vals};
        return true;
      };
      auto try_last = [&](std::uint64_t partial, std::uint64_t s) {
        const std::uint64_t total = partial + w[left - 1] * s;
        if (total > limit || total % total_weight) return false;
        const std::uint64_t st = total / total_weight;
        if (!member[st]) return false;
        vals[left - 1] = s;
        return report(st);
      };
      std::function<bool(std::size_t, std::uint64_t, bool)> rec = [&](std::size_t pos, std::uint64_t partial,
                                                                       bool used) -> bool {
        if (partial > limit) return false;
        if (pos + 1 == left) {
          if (pinned && !used) {
            ++work;
            // either s_{t-1} or s_t is the pinned value
            if (try_last(partial, pin)) return true;
            const std::uint64_t target = total_weight * pin;
            if (target > partial && (target - partial) % w[pos] == 0) {
              const std::uint64_t s = (target - partial) / w[pos];
              if (s <= top && member[s] && try_last(partial, s)) return true;
            }
            return false;
          }
          for (auto s : pool) {
            ++work;
            if (partial + w[pos] * s > limit) break;
            if (try_last(partial, s)) return true;
          }
          return false;
        }
        for (auto s : pool) {
          ++work;
          if (partial + w[pos] * s > limit) break;
          vals[pos] = s;
          if (rec(pos + 1, partial + w[pos] * s, used || (pinned && s == pin))) return true;
        }
        return false;
      };
      rec(0, 0, false);
      return !found;
    });
  }
  return found;
}

inline std::vector<std::uint64_t> normalized(std::vector<std::uint64_t> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace detail

struct SolutionCheck {
  bool solution_free = true;
  std::optional<Violation> counterexample;
};

// Exhaustive check over t in 3..k, all positive weightings with sum <= k and
// all element tuples; reports the first violation found.
inline SolutionCheck verify_solution_free(const std::vector<std::uint64_t>& s, std::uint64_t k) {
  for (auto v : s)
    if (v == 0) throw InputError("solution-free sets hold positive integers");
  const auto pool = detail::normalized(s);
  std::vector<char> member(pool.empty() ? 1 : pool.back() + 1, 0);
  for (auto x : pool) member[x] = 1;
  std::uint64_t work = 0;
  auto v = detail::search_violation(pool, member, k, std::nullopt, work);
  return {!v.has_value(), v};
}

// Grows a solution-free subset of [1, m] one element at a time; each
// insertion only examines tuples through the new element.
class SolutionFreeBuilder {
 public:
  SolutionFreeBuilder(std::uint64_t m, std::uint64_t k) : k_(k), member_(m + 1, 0) {}

  // seed must be solution-free and inside [1, m]
  void seed(const std::vector<std::uint64_t>& values) {
    for (auto x : values) {
      member_[x] = 1;
      elems_.insert(std::lower_bound(elems_.begin(), elems_.end(), x), x);
    }
  }

  bool try_add(std::uint64_t x) {
    if (member_[x]) return false;
    auto pos = elems_.insert(std::lower_bound(elems_.begin(), elems_.end(), x), x);
    member_[x] = 1;
    if (detail::search_violation(elems_, member_, k_, x, work_)) {
      member_[x] = 0;
      elems_.erase(pos);
      return false;
    }
    return true;
  }

  const std::vector<std::uint64_t>& elements() const noexcept { return elems_; }
  std::uint64_t work() const noexcept { return work_; }

 private:
  std::uint64_t k_;
  std::vector<char> member_;
  std::vector<std::uint64_t> elems_;
  std::uint64_t work_ = 0;
};

// Greedy baseline: scan 1..m and keep every element that does not create a
// solution.
inline std::vector<std::uint64_t> greedy_solution_free(std::uint64_t m, std::uint64_t k) {
  SolutionFreeBuilder b(m, k);
  for (std::uint64_t x = 1; x <= m; ++x) b.try_add(x);
  return b.elements();
}

struct BehrendSet {
  std::uint64_t m = 1;
  std::uint64_t k = 3;
  std::vector<std::uint64_t> elements;
  bool verified = false;
  std::string method;  // how the set was obtained
  std::size_t sphere_size = 0;  // size of the sphere shell the set started from
};

namespace detail {

struct Shell {
  std::uint64_t digits_below = 0;  // d
  std::uint64_t norm = 0;
  std::vector<std::uint64_t> elements;
};

// Digit vectors over [0, d) written in base k(d-1)+1 (so weighted sums with
// total weight <= k never carry), grouped by squared norm. Strict convexity
// of the sphere rules out non-trivial weighted averages.
inline std::vector<Shell> sphere_shells(std::uint64_t m, std::uint64_t k) {
  std::vector<Shell> out;
  for (std::uint64_t d = 2;; ++d) {
    const std::uint64_t base = k * (d - 1) + 1;
    if (base > m) break;
    std::size_t digits = 0;
    for (std::uint64_t p = 1; p <= m - 1; p *= base) ++digits;
    std::map<std::uint64_t, std::vector<std::uint64_t>> shells;
    std::vector<std::uint64_t> a(digits, 0);
    while (true) {
      std::uint64_t x = 0, norm = 0, p = 1;
      for (std::size_t i = 0; i < digits; ++i) {
        x += a[i] * p;
        norm += a[i] * a[i];
        p *= base;
      }
      if (x + 1 <= m) shells[norm].push_back(x + 1);
      std::size_t i = 0;
      while (i < digits && ++a[i] == d) a[i++] = 0;
      if (i == digits) break;
    }
    for (auto& [norm, elems] : shells) {
      std::sort(elems.begin(), elems.end());
      out.push_back({d, norm, std::move(elems)});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Shell& a, const Shell& b) { return a.elements.size() > b.elements.size(); });
  return out;
}

}  // namespace detail

// Default budget for greedy completion, in inner search steps.
inline constexpr std::uint64_t behrend_completion_budget = 400'000'000;

// Sphere shells over all digit ranges, each used as a seed and completed
// greedily over 1..m; the largest verified set wins (ties: earlier seed). The
// plain greedy scan competes as the empty seed. Completion stops when the
// work budget is spent.
inline BehrendSet behrend_set(std::uint64_t m, std::uint64_t k,
                              std::uint64_t budget = behrend_completion_budget) {
  if (m < 1) throw InputError("behrend_set needs m >= 1");
  if (k < 3) throw InputError("behrend_set needs k >= 3");
  BehrendSet best{m, k, {1}, false, "singleton", 1};
  std::uint64_t work = 0;
  auto complete = [&](const std::vector<std::uint64_t>& seed, const std::string& method, std::size_t sphere) {
    SolutionFreeBuilder b(m, k);
    b.seed(seed);
    for (std::uint64_t x = 1; x <= m && work + b.work() < budget; ++x) b.try_add(x);
    work += b.work();
    if (b.elements().size() > best.elements.size()) best = {m, k, b.elements(), false, method, sphere};
  };
  const auto shells = detail::sphere_shells(m, k);
  // the raw largest shell, before any completion
  if (!shells.empty() && shells.front().elements.size() > best.elements.size()) {
    const auto& s = shells.front();
    best = {m, k, s.elements, false,
            "sphere d=" + std::to_string(s.digits_below) + " norm=" + std::to_string(s.norm), s.elements.size()};
  }
  complete({}, "greedy", 0);
  for (const auto& s : shells) {
    if (work >= budget) break;
    if (s.elements.size() < 2) continue;
    complete(s.elements,
             "sphere d=" + std::to_string(s.digits_below) + " norm=" + std::to_string(s.norm) + " + greedy",
             s.elements.size());
  }
  if (verify_solution_free(best.elements, k).solution_free) {
    best.verified = true;
  } else {
    best = {m, k, {1}, true, "singleton fallback", 1};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Line designs over F_p

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Smallest prime in (r/2, r].
inline std::uint64_t design_prime(std::uint64_t r) {
  for (std::uint64_t p = r / 2 + 1; p <= r; ++p)
    if (is_prime(p)) return p;
  throw InputError("no prime in (r/2, r] for r = " + std::to_string(r));
}

using Tuple = std::vector<std::uint64_t>;

// All p^2 lines x(i) = ((a + (i-1) b) mod p) + 1; any two agree on at most one
// coordinate.
inline std::vector<Tuple> design_tuples(std::uint64_t r, std::uint64_t k) {
  if (k < 2) throw InputError("design_tuples needs k >= 2");
  if (r < 2 * k) throw InputError("design_tuples needs r >= 2k (r = " + std::to_string(r) + ", k = " + std::to_string(k) + ")");
  const std::uint64_t p = design_prime(r);
  std::vector<Tuple> out;
  out.reserve(p * p);
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b) {
      Tuple t(k);
      for (std::uint64_t i = 0; i < k; ++i) t[i] = (a + i * b) % p + 1;
      out.push_back(std::move(t));
    }
  return out;
}

// Number of tuple pairs agreeing on two or more coordinates.
inline std::uint64_t design_violations(const std::vector<Tuple>& tuples) {
  std::uint64_t bad = 0;
  for (std::size_t x = 0; x < tuples.size(); ++x)
    for (std::size_t y = x + 1; y < tuples.size(); ++y) {
      std::size_t agree = 0;
      for (std::size_t i = 0; i < tuples[x].size(); ++i) agree += tuples[x][i] == tuples[y][i];
      bad += agree > 1;
    }
  return bad;
}

// ---------------------------------------------------------------------------
// Patterns

enum class Color { white, black, gray };

inline char to_char(Color c) { return c == Color::white ? 'w' : c == Color::black ? 'b' : 'g'; }

class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::size_t k, Color fill = Color::gray) : k_(k), color_(k * (k ? k - 1 : 0) / 2, fill) {}

  std::size_t k() const noexcept { return k_; }

  Color at(std::size_t i, std::size_t j) const { return color_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, Color c) { color_[index(i, j)] = c; }

  // Reversed order: part i becomes part k-1-i.
  Pattern reversed() const {
    Pattern out(k_);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = i + 1; j < k_; ++j) out.set(k_ - 1 - j, k_ - 1 - i, at(i, j));
    return out;
  }

  // One line per row: colors of pairs (i, j) for j > i.
  std::string describe() const {
    std::string out;
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = i + 1; j < k_; ++j)
        if (at(i, j) != Color::gray)
          out += std::string(out.empty() ? "" : " ") + to_char(at(i, j)) + "{" + std::to_string(i) + "," +
                 std::to_string(j) + "}";
    return out.empty() ? "all gray" : out;
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i == j || i >= k_ || j >= k_) throw InputError("pattern pair out of range");
    if (i > j) std::swap(i, j);
    return i * (2 * k_ - i - 1) / 2 + (j - i - 1);
  }

  std::size_t k_ = 0;
  std::vector<Color> color_;
};

struct PatternCheck {
  bool ok = true;
  std::optional<Edge> witness;
  std::string reason;
};

namespace detail {

inline void require_interval_partition(std::size_t n, const std::vector<VertexSet>& parts) {
  Vertex next = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < parts[i].size(); ++j)
      if (parts[i][j] != next + j)
        throw InputError("part " + std::to_string(i) + " is not the interval following part " +
                         std::to_string(i == 0 ? 0 : i - 1));
    next += parts[i].size();
  }
  if (next != n) throw InputError("parts cover " + std::to_string(next) + " of " + std::to_string(n) + " vertices");
}

}  // namespace detail

// Parts must be consecutive intervals V_1 < ... < V_k covering the graph.
inline PatternCheck check_pattern(const OrderedGraph& g, const Pattern& p, const std::vector<VertexSet>& parts) {
  if (parts.size() != p.k())
    throw InputError("pattern has " + std::to_string(p.k()) + " parts, partition has " + std::to_string(parts.size()));
  detail::require_interval_partition(g.size(), parts);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (auto u : parts[i])
      for (auto v : parts[i])
        if (u < v && g.adjacent(u, v)) return {false, Edge{u, v}, "edge inside part " + std::to_string(i)};
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      const Color c = p.at(i, j);
      if (c == Color::gray) continue;
      for (auto u : parts[i])
        for (auto v : parts[j])
          if (g.adjacent(u, v) != (c == Color::black))
            return {false, Edge{u, v},
                    std::string(c == Color::black ? "missing edge" : "edge") + " across " +
                        (c == Color::black ? "black" : "white") + " pair {" + std::to_string(i) + "," +
                        std::to_string(j) + "}"};
    }
  return {};
}

// (P, A, sigma): sigma[i] is the position of vertex i.
struct GoodnessSpec {
  Pattern pattern;
  std::vector<std::vector<std::size_t>> families;
  std::vector<std::size_t> sigma;
};

// A gray cycle i_1..i_t (t >= 3) inside A with sigma increasing along it.
inline std::optional<std::vector<std::size_t>> increasing_gray_cycle(const Pattern& p, std::vector<std::size_t> a,
                                                                     const std::vector<std::size_t>& sigma) {
  std::sort(a.begin(), a.end(), [&](std::size_t x, std::size_t y) { return sigma[x] < sigma[y]; });
  std::vector<std::size_t> path;
  std::function<bool(std::size_t)> extend = [&](std::size_t from) {
    if (path.size() >= 3 && p.at(path.back(), path.front()) == Color::gray) return true;
    for (std::size_t next = from; next < a.size(); ++next) {
      if (p.at(path.back(), a[next]) != Color::gray) continue;
      path.push_back(a[next]);
      if (extend(next + 1)) return true;
      path.pop_back();
    }
    return false;
  };
  for (std::size_t s = 0; s < a.size(); ++s) {
    path = {a[s]};
    if (extend(s + 1)) return path;
  }
  return std::nullopt;
}

// Structural checks on a spec: sigma a permutation, every family member a
// non-empty subset carrying a sigma-increasing gray cycle.
inline void validate(const GoodnessSpec& spec) {
  const std::size_t k = spec.pattern.k();
  std::vector<std::size_t> sorted = spec.sigma;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i || sorted.size() != k) throw InputError("sigma is not a permutation of 0.." + std::to_string(k - 1));
  if (spec.families.empty()) throw InputError("goodness spec has no families");
  for (const auto& a : spec.families) {
    for (auto i : a)
      if (i >= k) throw InputError("family member out of range");
    if (!increasing_gray_cycle(spec.pattern, a, spec.sigma)) {
      std::string name;
      for (auto i : a) name += (name.empty() ? "" : ",") + std::to_string(i);
      throw InputError("family {" + name + "} has no sigma-increasing gray cycle");
    }
  }
}

// F must have pattern P on its own vertices: black pairs are edges, white
// pairs non-edges.
inline bool has_pattern(const OrderedGraph& f, const Pattern& p) {
  for (std::size_t i = 0; i < p.k(); ++i)
    for (std::size_t j = i + 1; j < p.k(); ++j)
      if (p.at(i, j) != Color::gray && f.adjacent(i, j) != (p.at(i, j) == Color::black)) return false;
  return true;
}

struct GoodnessCounterexample {
  OrderedGraph graph;
  std::vector<VertexSet> parts;
  std::vector<Vertex> copy;
};

namespace detail {

inline std::vector<VertexSet> interval_parts(const std::vector<std::size_t>& sizes) {
  std::vector<VertexSet> parts;
  Vertex start = 0;
  for (auto s : sizes) {
    parts.push_back(VertexSet::range(start, start + s));
    start += s;
  }
  return parts;
}

// Does the copy realise some A in the families by part-respecting vertices?
inline bool realises_family(const OrderedGraph& f, const GoodnessSpec& spec, const OrderedGraph& g,
                            const std::vector<std::size_t>& part_of, std::span<const Vertex> copy) {
  for (const auto& fam : spec.families) {
    if (fam.empty()) continue;  // never realisable
    std::vector<std::size_t> a = fam;
    std::sort(a.begin(), a.end());
    std::vector<std::vector<Vertex>> choice(a.size());
    bool possible = true;
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (auto v : copy)
        if (part_of[v] == a[x]) choice[x].push_back(v);
      possible &= !choice[x].empty();
    }
    if (!possible) continue;
    std::vector<Vertex> pick(a.size());
    std::function<bool(std::size_t)> rec = [&](std::size_t x) {
      if (x == a.size()) return true;
      for (auto v : choice[x]) {
        bool fits = true;
        for (std::size_t y = 0; y < x && fits; ++y) fits = g.adjacent(pick[y], v) == f.adjacent(a[y], a[x]);
        if (!fits) continue;
        pick[x] = v;
        if (rec(x + 1)) return true;
      }
      return false;
    };
    if (rec(0)) return true;
  }
  return false;
}

// Gray cross pairs for the given part sizes.
inline std::vector<Edge> free_pairs(const Pattern& p, const std::vector<VertexSet>& parts) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (p.at(i, j) == Color::gray)
        for (auto u : parts[i])
          for (auto v : parts[j]) out.emplace_back(u, v);
  return out;
}

inline OrderedGraph forced_graph(const Pattern& p, const std::vector<VertexSet>& parts, std::size_t n) {
  OrderedGraph g(n);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (p.at(i, j) == Color::black)
        for (auto u : parts[i])
          for (auto v : parts[j]) g.add_edge(u, v);
  return g;
}

}  // namespace detail

// Searches graphs with a P-partition for an induced copy of f that realises
// no family member. Part sizes 0..3 come first, in order of total size; small
// configurations (at most 12 free pairs) are enumerated exhaustively, larger
// ones sampled. Afterwards random configurations with parts of size 1..4
// until `budget` graphs have been examined. Finding nothing proves nothing.
inline std::optional<GoodnessCounterexample> falsify_goodness(const OrderedGraph& f, const GoodnessSpec& spec,
                                                              std::uint64_t budget = 20000,
                                                              std::uint64_t seed = 1) {
  const std::size_t k = spec.pattern.k();
  if (f.size() != k) throw InputError("pattern size differs from v(f)");
  Rng rng(seed);
  std::uint64_t examined = 0;
  std::optional<GoodnessCounterexample> found;

  auto examine = [&](const std::vector<VertexSet>& parts, const OrderedGraph& g) {
    ++examined;
    std::vector<std::size_t> part_of(g.size());
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (auto v : parts[i]) part_of[v] = i;
    for_each_copy(f, g, CopyKind::induced, [&](std::span<const Vertex> copy) {
      if (detail::realises_family(f, spec, g, part_of, copy)) return true;
      found = GoodnessCounterexample{g, parts, std::vector<Vertex>(copy.begin(), copy.end())};
      return false;
    });
    return !found && examined < budget;
  };

  auto random_fill = [&](const std::vector<VertexSet>& parts, std::size_t n) {
    OrderedGraph g = detail::forced_graph(spec.pattern, parts, n);
    for (auto [u, v] : detail::free_pairs(spec.pattern, parts))
      if (rng.chance(1, 2)) g.add_edge(u, v);
    return g;
  };

  // size vectors over {0..3}^k, ordered by total
  std::vector<std::vector<std::size_t>> configs;
  std::vector<std::size_t> sizes(k, 0);
  while (true) {
    std::size_t total = 0;
    for (auto s : sizes) total += s;
    if (total >= k) configs.push_back(sizes);
    std::size_t i = 0;
    while (i < k && ++sizes[i] == 4) sizes[i++] = 0;
    if (i == k) break;
  }
  std::stable_sort(configs.begin(), configs.end(), [](const auto& a, const auto& b) {
    std::size_t sa = 0, sb = 0;
    for (auto x : a) sa += x;
    for (auto x : b) sb += x;
    return sa < sb;
  });

  for (const auto& cfg : configs) {
    const auto parts = detail::interval_parts(cfg);
    std::size_t n = 0;
    for (auto s : cfg) n += s;
    const auto free = detail::free_pairs(spec.pattern, parts);
    const OrderedGraph base = detail::forced_graph(spec.pattern, parts, n);
    if (free.size() <= 12) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
        OrderedGraph g = base;
        for (std::size_t b = 0; b < free.size(); ++b)
          if (mask >> b & 1) g.add_edge(free[b].first, free[b].second);
        if (!examine(parts, g)) return found;
      }
    } else {
      for (int rep = 0; rep < 16; ++rep)
        if (!examine(parts, random_fill(parts, n))) return found;
    }
  }
  while (examined < budget) {
    std::vector<std::size_t> cfg(k);
    std::size_t n = 0;
    for (auto& s : cfg) n += (s = 1 + rng.below(4));
    const auto parts = detail::interval_parts(cfg);
    if (!examine(parts, random_fill(parts, n))) return found;
  }
  return found;
}

// ---------------------------------------------------------------------------
// The general construction

struct RSOptions {
  std::optional<std::uint64_t> m;  // overrides the formula for m
  std::optional<std::vector<std::uint64_t>> solution_free;  // overrides the Behrend set
  Rational c_k = 1;
  bool census = true;
  std::uint64_t behrend_budget = behrend_completion_budget;
};

struct RSOutput {
  OrderedGraph graph;
  Pattern pattern;  // pattern of graph, or of its complement when `complemented`
  std::vector<VertexSet> parts;
  std::vector<std::vector<Vertex>> planted_copies;
  std::optional<BigInt> census;  // induced copies of the target in graph
  bool complemented = false;
  bool reversed = false;
  std::string case_label;

  std::uint64_t m = 0;
  std::vector<std::uint64_t> solution_free;
  std::string solution_free_method;
  std::size_t base_size = 0;  // v(H)
  std::size_t factor = 0;  // total blowup factor from H to graph
  std::size_t tuples = 0;  // |R|
  std::vector<std::vector<Vertex>> base_copies;  // copies F_{x,s} in H
  std::uint64_t advertised_copies = 0;  // m |S| |R|

  // Non-induced certificates: pairwise disjoint edge sets, each of which must
  // lose an edge in any F-free modification.
  std::vector<std::vector<Edge>> certificates;
};

namespace detail {

inline std::uint64_t formula_m(std::size_t k, const Rational& epsilon, const Rational& c_k) {
  const Rational x = Rational(4) * pow(Rational(static_cast<std::uint64_t>(k)), 4) * epsilon;
  if (x > 1)
    throw InfeasibleError("parameters infeasible at this scale: 4k^4*epsilon = " + to_string(x) +
                          " exceeds 1, so no m >= 1 exists");
  const double lx = std::log(1.0 / static_cast<double>(x));
  const double root = lx / static_cast<double>(c_k);
  const double exponent = root * root;
  if (exponent > 40) return std::uint64_t{1} << 57;  // far beyond any buildable n
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(std::exp(exponent) + 1e-9)));
}

// Pair-disjointness: every vertex pair lies in at most one copy.
inline bool pair_disjoint(const std::vector<std::vector<Vertex>>& copies) {
  std::unordered_set<std::uint64_t> used;
  for (const auto& c : copies)
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) {
        const std::uint64_t key = (static_cast<std::uint64_t>(std::min(c[a], c[b])) << 32) | std::max(c[a], c[b]);
        if (!used.insert(key).second) return false;
      }
  return true;
}

inline bool is_induced_copy(const OrderedGraph& f, const OrderedGraph& g, const std::vector<Vertex>& c) {
  if (c.size() != f.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i && c[i] <= c[i - 1]) return false;
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (g.adjacent(c[i], c[j]) != f.adjacent(i, j)) return false;
  }
  return true;
}

}  // namespace detail

// Checks every structural claim of an output against its target: pattern
// (on the complement when complemented), planted copies induced and pairwise
// sharing at most one vertex. Returns the first failure.
inline std::optional<std::string> check_rs_output(const OrderedGraph& f, const RSOutput& out) {
  const OrderedGraph plain = out.complemented ? complement(out.graph) : out.graph;
  const OrderedGraph target = out.complemented ? complement(f) : f;
  auto pc = check_pattern(plain, out.pattern, out.parts);
  if (!pc.ok) return "pattern: " + pc.reason;
  for (const auto& c : out.planted_copies)
    if (!detail::is_induced_copy(target, plain, c)) return "planted copy is not an induced copy";
  if (!detail::pair_disjoint(out.planted_copies)) return "planted copies share a vertex pair";
  if (out.planted_copies.size() < out.advertised_copies) return "fewer planted copies than advertised";
  return std::nullopt;
}

// H has parts V_i of sigma(i) m vertices (sigma 1-based here), copies
// F_{x,s} at v_i = x + (sigma(i)-1) s, black/white pairs forced, and every
// gray pair outside the planted copies set opposite to F. The output is the
// floor(n / v(H))-blowup of H.
inline RSOutput rs_construct(const OrderedGraph& f, const GoodnessSpec& spec, const Rational& epsilon,
                             std::size_t n, const RSOptions& opt = {}) {
  const std::size_t k = f.size();
  if (spec.pattern.k() != k) throw InputError("pattern size differs from v(f)");
  if (k < 3) throw InputError("the construction needs v(f) >= 3");
  validate(spec);
  if (!has_pattern(f, spec.pattern)) throw InputError("f does not have the pattern of the spec");
  if (epsilon <= 0) throw InputError("epsilon must be positive");

  RSOutput out;
  out.pattern = spec.pattern;
  out.m = opt.m ? *opt.m : detail::formula_m(k, epsilon, opt.c_k);
  if (out.m < 1) throw InfeasibleError("parameters infeasible at this scale: m < 1");
  const std::size_t sigma_sum = k * (k + 1) / 2;
  if (out.m > n / sigma_sum)
    throw InfeasibleError("parameters infeasible at this scale: n = " + std::to_string(n) + " < v(H) = " +
                          std::to_string(sigma_sum) + "*m with m = " + std::to_string(out.m));

  if (opt.solution_free) {
    auto s = detail::normalized(*opt.solution_free);
    for (auto x : s)
      if (x < 1 || x > out.m) throw InputError("solution-free override leaves [1, m]");
    auto chk = verify_solution_free(s, k);
    if (!chk.solution_free) throw InputError("solution-free override has " + chk.counterexample->describe());
    out.solution_free = s;
    out.solution_free_method = "override";
  } else {
    auto b = behrend_set(out.m, k, opt.behrend_budget);
    out.solution_free = b.elements;
    out.solution_free_method = b.method;
  }
  if (out.solution_free.empty()) throw InfeasibleError("parameters infeasible at this scale: empty solution-free set");

  // H
  const std::uint64_t m = out.m;
  std::vector<std::size_t> offset(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) offset[i + 1] = offset[i] + (spec.sigma[i] + 1) * m;
  const std::size_t hn = offset[k];
  out.base_size = hn;
  OrderedGraph h(hn);
  for (const auto s : out.solution_free)
    for (std::uint64_t x = 1; x <= m; ++x) {
      std::vector<Vertex> c(k);
      for (std::size_t i = 0; i < k; ++i) c[i] = offset[i] + (x + spec.sigma[i] * s) - 1;
      out.base_copies.push_back(std::move(c));
    }
  std::unordered_set<std::uint64_t> planted_pairs;
  for (const auto& c : out.base_copies)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) planted_pairs.insert((std::uint64_t{c[i]} << 32) | c[j]);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const Color col = spec.pattern.at(i, j);
      const bool fe = f.adjacent(i, j);
      for (Vertex u = offset[i]; u < offset[i + 1]; ++u)
        for (Vertex v = offset[j]; v < offset[j + 1]; ++v) {
          bool edge;
          if (col == Color::black) edge = true;
          else if (col == Color::white) edge = false;
          else edge = planted_pairs.count((std::uint64_t{u} << 32) | v) ? fe : !fe;
          if (edge) h.add_edge(u, v);
        }
    }

  // blowup
  const std::size_t r = n / hn;
  out.factor = r;
  out.graph = blowup(h, r);
  for (std::size_t i = 0; i < k; ++i) out.parts.push_back(VertexSet::range(offset[i] * r, offset[i + 1] * r));
  std::vector<Tuple> tuples;
  if (r >= 2 * k) {
    tuples = design_tuples(r, k);
  } else {
    for (std::uint64_t c = 1; c <= r; ++c) tuples.push_back(Tuple(k, c));
  }
  out.tuples = tuples.size();
  for (const auto& c : out.base_copies)
    for (const auto& t : tuples) {
      std::vector<Vertex> bc(k);
      for (std::size_t i = 0; i < k; ++i) bc[i] = c[i] * r + (t[i] - 1);
      out.planted_copies.push_back(std::move(bc));
    }
  out.advertised_copies = m * out.solution_free.size() * tuples.size();
  if (opt.census) out.census = count_induced(f, out.graph);
  out.case_label = "general";
  if (auto bad = check_rs_output(f, out)) throw Error("construction self-check failed: " + *bad);
  return out;
}

// ---------------------------------------------------------------------------
// Hard-instance catalog

namespace detail {

inline GoodnessSpec core_spec(const OrderedGraph& k) {
  const std::size_t n = k.size();
  GoodnessSpec spec{Pattern(n, Color::white), {}, std::vector<std::size_t>(n)};
  for (auto [u, v] : k.edges()) spec.pattern.set(u, v, Color::gray);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  spec.families = {all};
  // sigma walks a cycle first, then the remaining vertices
  auto cyc = find_cycle(k);
  if (cyc.empty()) throw RefusalError("core has no cycle");
  std::vector<char> placed(n, 0);
  std::size_t next = 0;
  for (auto v : cyc) {
    spec.sigma[v] = next++;
    placed[v] = 1;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!placed[v]) spec.sigma[v] = next++;
  return spec;
}

inline std::vector<std::size_t> identity_perm(std::size_t k) {
  std::vector<std::size_t> s(k);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

inline bool has_triangle(const OrderedGraph& f) {
  const std::size_t n = f.size();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if (f.adjacent(a, b) && f.adjacent(a, c) && f.adjacent(b, c)) return true;
  return false;
}

inline GoodnessSpec triangle_spec(const OrderedGraph& f) {
  const std::size_t n = f.size();
  GoodnessSpec spec{Pattern(n, Color::white), {}, identity_perm(n)};
  for (auto [u, v] : f.edges()) spec.pattern.set(u, v, Color::gray);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if (f.adjacent(a, b) && f.adjacent(a, c) && f.adjacent(b, c)) spec.families.push_back({a, b, c});
  return spec;
}

inline GoodnessSpec monotone_path_spec(std::size_t k) {
  GoodnessSpec spec{Pattern(k, Color::white), {identity_perm(k)}, identity_perm(k)};
  for (std::size_t i = 0; i + 1 < k; ++i) spec.pattern.set(i, i + 1, Color::gray);
  spec.pattern.set(0, k - 1, Color::gray);
  return spec;
}

inline bool is_cycle_graph(const OrderedGraph& f) {
  if (f.edge_count() != f.size()) return false;
  for (Vertex v = 0; v < f.size(); ++v)
    if (f.degree(v) != 2) return false;
  return find_cycle(f).size() == f.size();
}

}  // namespace detail

// One entry of the four-vertex catalog: the graph it applies to and its spec.
struct CatalogEntry {
  std::string label;
  OrderedGraph graph;
  GoodnessSpec spec;
};

inline std::vector<CatalogEntry> four_vertex_catalog() {
  using detail::identity_perm;
  std::vector<CatalogEntry> out;
  out.push_back({"C4^(1) core", named::c4_1(), detail::core_spec(named::c4_1())});
  {
    GoodnessSpec s{Pattern(4, Color::gray), {identity_perm(4)}, {0, 2, 1, 3}};
    s.pattern.set(0, 1, Color::black);
    s.pattern.set(2, 3, Color::black);
    out.push_back({"C4^(2) complement trick", complement(named::c4_2()), s});
  }
  {
    GoodnessSpec s{Pattern(4, Color::gray), {{0, 1, 3}, {0, 2, 3}}, identity_perm(4)};
    s.pattern.set(1, 2, Color::white);
    out.push_back({"C4^(3) pattern", named::c4_3(), s});
  }
  {
    GoodnessSpec s{Pattern(4, Color::gray), {identity_perm(4)}, identity_perm(4)};
    s.pattern.set(0, 2, Color::white);
    s.pattern.set(1, 3, Color::white);
    out.push_back({"P4^(1) pattern", named::p4_1(), s});
  }
  {
    GoodnessSpec s{Pattern(4, Color::gray), {{0, 2, 3}}, identity_perm(4)};
    s.pattern.set(1, 2, Color::white);
    s.pattern.set(1, 3, Color::white);
    out.push_back({"P4^(2) pattern", named::p4_2(), s});
  }
  {
    GoodnessSpec s{Pattern(4, Color::gray), {{0, 1, 2}}, identity_perm(4)};
    s.pattern.set(1, 3, Color::white);
    s.pattern.set(2, 3, Color::white);
    out.push_back({"P4^(3) pattern", named::p4_3(), s});
  }
  out.push_back({"monotone path", named::monotone_path(4), detail::monotone_path_spec(4)});
  return out;
}

// Which case of the hardness argument handles f: build `spec` for `base`,
// then apply `symmetry` to the resulting graph.
struct InducedCase {
  std::string label;
  Symmetry symmetry = Symmetry::identity;
  OrderedGraph base;
  GoodnessSpec spec;
};

inline bool in_D_orbit(const OrderedGraph& f) { return matching_symmetry(f, named::D()).has_value(); }

// nullopt when f has polynomial removal bounds (two vertices or the orbit of D).
inline std::optional<InducedCase> induced_case(const OrderedGraph& f) {
  const std::size_t k = f.size();
  if (k <= 2 || in_D_orbit(f)) return std::nullopt;
  if (detail::has_triangle(f)) return InducedCase{"triangle", Symmetry::identity, f, detail::triangle_spec(f)};
  const OrderedGraph fc = complement(f);
  if (detail::has_triangle(fc))
    return InducedCase{"independent set of size 3 (complement of triangle case)", Symmetry::complement, fc,
                       detail::triangle_spec(fc)};
  // no triangle and no independent triple: k <= 5
  if (k == 3) {
    for (auto s : {Symmetry::identity, Symmetry::complement})
      if (apply(s, f) == named::monotone_path(3))
        return InducedCase{s == Symmetry::identity ? "monotone path" : "monotone path (complement)", s,
                           named::monotone_path(3), detail::monotone_path_spec(3)};
  }
  if (k == 4) {
    for (const auto& e : four_vertex_catalog())
      if (auto s = matching_symmetry(f, e.graph))
        return InducedCase{*s == Symmetry::identity ? e.label : e.label + " (" + to_string(*s) + ")", *s, e.graph,
                           e.spec};
  }
  if (k == 5 && detail::is_cycle_graph(f)) return InducedCase{"5-cycle core", Symmetry::identity, f, detail::core_spec(f)};
  if (k == 5 && detail::is_cycle_graph(fc))
    return InducedCase{"5-cycle core (complement)", Symmetry::complement, fc, detail::core_spec(fc)};
  throw Error("no catalog case matches this graph");
}

namespace detail {

inline void reverse_output(RSOutput& out) {
  const std::size_t n = out.graph.size();
  out.graph = reverse(out.graph);
  out.pattern = out.pattern.reversed();
  std::vector<VertexSet> parts;
  for (auto it = out.parts.rbegin(); it != out.parts.rend(); ++it)
    parts.push_back(VertexSet::range(n - 1 - it->back(), n - it->front()));
  out.parts = std::move(parts);
  for (auto& c : out.planted_copies) {
    for (auto& v : c) v = n - 1 - v;
    std::reverse(c.begin(), c.end());
  }
  const std::size_t hn = out.base_size;
  for (auto& c : out.base_copies) {
    for (auto& v : c) v = hn - 1 - v;
    std::reverse(c.begin(), c.end());
  }
  out.reversed = !out.reversed;
}

}  // namespace detail

inline RSOutput hard_instance_induced(const OrderedGraph& f, const Rational& epsilon, std::size_t n,
                                      const RSOptions& opt = {}) {
  auto c = induced_case(f);
  if (!c)
    throw RefusalError("f has polynomial induced removal bounds (two vertices or a symmetric image of D); "
                       "no hard instance exists");
  RSOptions inner = opt;
  inner.census = false;
  RSOutput out = rs_construct(c->base, c->spec, epsilon, n, inner);
  if (reverses(c->symmetry)) detail::reverse_output(out);
  if (complements(c->symmetry)) {
    out.graph = complement(out.graph);
    out.complemented = true;
  }
  out.case_label = c->label;
  if (auto bad = check_rs_output(f, out)) throw Error("hard instance self-check failed: " + *bad);
  if (opt.census) out.census = count_induced(f, out.graph);
  return out;
}

// Core construction for core(f), blown up by v(f). Certificates E_i are the
// edge sets of the blown-up planted core copies; they are pairwise disjoint
// and each spans a copy of f, stored as planted_copies.
inline RSOutput hard_instance_noninduced(const OrderedGraph& f, const Rational& epsilon, std::size_t n,
                                         const RSOptions& opt = {}) {
  const auto core_res = compute_core(f);
  const OrderedGraph& kg = core_res.core;
  if (is_forest(kg))
    throw RefusalError("core(f) is a forest; polynomial bounds are conjectured in this case, no hard instance");
  const std::size_t vf = f.size();
  RSOptions inner = opt;
  inner.census = false;
  RSOutput base = rs_construct(kg, detail::core_spec(kg), Rational(static_cast<std::uint64_t>(vf * vf)) * epsilon,
                               n / vf, inner);
  RSOutput out;
  out.graph = blowup(base.graph, vf);
  out.pattern = base.pattern;
  for (const auto& p : base.parts) out.parts.push_back(VertexSet::range(p.front() * vf, (p.back() + 1) * vf));
  out.m = base.m;
  out.solution_free = base.solution_free;
  out.solution_free_method = base.solution_free_method;
  out.base_size = base.base_size;
  out.factor = base.factor * vf;
  out.tuples = base.tuples;
  out.base_copies = base.base_copies;
  out.advertised_copies = base.advertised_copies;
  out.case_label = "non-induced core construction";

  // preimage rank of each f-vertex inside its retraction class
  const auto& img = core_res.retraction.image;
  std::vector<std::size_t> slot(vf, 0);
  for (std::size_t x = 1; x < vf; ++x) slot[x] = img[x] == img[x - 1] ? slot[x - 1] + 1 : 0;
  for (const auto& kc : base.planted_copies) {
    std::vector<Edge> cert;
    for (std::size_t a = 0; a < kc.size(); ++a)
      for (std::size_t b = a + 1; b < kc.size(); ++b)
        if (base.graph.adjacent(kc[a], kc[b]))
          for (std::size_t x = 0; x < vf; ++x)
            for (std::size_t y = 0; y < vf; ++y) cert.emplace_back(kc[a] * vf + x, kc[b] * vf + y);
    out.certificates.push_back(std::move(cert));
    std::vector<Vertex> copy(vf);
    for (std::size_t x = 0; x < vf; ++x) copy[x] = kc[img[x]] * vf + slot[x];
    out.planted_copies.push_back(std::move(copy));
  }
  if (opt.census) out.census = count_copies(f, out.graph);
  return out;
}

// Certificate sets pairwise disjoint and each containing the edges of its
// (non-induced) copy of f.
inline std::optional<std::string> check_certificates(const OrderedGraph& f, const RSOutput& out) {
  if (out.certificates.size() != out.planted_copies.size()) return "certificate count mismatch";
  std::set<Edge> seen;
  for (std::size_t i = 0; i < out.certificates.size(); ++i) {
    std::set<Edge> mine(out.certificates[i].begin(), out.certificates[i].end());
    for (const auto& e : mine) {
      if (!out.graph.adjacent(e.first, e.second)) return "certificate lists a non-edge";
      if (!seen.insert(e).second) return "certificates overlap";
    }
    const auto& c = out.planted_copies[i];
    for (std::size_t a = 0; a < c.size(); ++a) {
      if (a && c[a] <= c[a - 1]) return "copy is not increasing";
      for (std::size_t b = a + 1; b < c.size(); ++b)
        if (f.adjacent(a, b) && !mine.count({c[a], c[b]})) return "copy edge outside its certificate";
    }
  }
  return std::nullopt;
}

}  // namespace ordrem
