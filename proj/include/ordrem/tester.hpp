#pragma once

#include <optional>
#include <vector>

#include "ordrem/counting.hpp"
#include "ordrem/error.hpp"
#include "ordrem/ordered_graph.hpp"
#include "ordrem/parallel.hpp"
#include "ordrem/random.hpp"
#include "ordrem/rational.hpp"

namespace ordrem {

struct TesterRun {
  bool reject = false;
  std::vector<Vertex> sample;  // in draw order, repeats included
  std::vector<Vertex> witness;  // increasing copy of f inside the sample
};

namespace detail {

inline bool is_copy(const OrderedGraph& f, const OrderedGraph& g, const std::vector<Vertex>& c, bool induced) {
  if (c.size() != f.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i && c[i] <= c[i - 1]) return false;
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const bool e = g.adjacent(c[i], c[j]);
      if (f.adjacent(i, j) ? !e : induced && e) return false;
    }
  }
  return true;
}

// Draws for one trial. Every q uses a prefix of the same stream, so for a
// fixed seed a larger q sees a superset of vertices.
inline std::vector<Vertex> draw(std::size_t n, std::size_t q, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vertex> out(q);
  for (auto& v : out) v = rng.below(n);
  return out;
}

inline TesterRun test_sample(const OrderedGraph& g, const OrderedGraph& f, std::vector<Vertex> sample, bool induced) {
  TesterRun run;
  run.sample = std::move(sample);
  const VertexSet distinct(run.sample);
  const OrderedGraph sub = induced_subgraph(g, distinct);
  if (auto c = find_copy(f, sub, induced ? CopyKind::induced : CopyKind::non_induced)) {
    for (auto i : *c) run.witness.push_back(distinct[i]);
    // one-sidedness: never reject without a copy that checks out in g
    if (!is_copy(f, g, run.witness, induced)) throw Error("tester produced an invalid witness");
    run.reject = true;
  }
  return run;
}

}  // namespace detail

// Samples q vertices uniformly with replacement, queries all pairs among
// them, and rejects iff they span an (induced) copy of f.
inline TesterRun run_tester(const OrderedGraph& g, const OrderedGraph& f, std::size_t q, bool induced,
                            std::uint64_t seed) {
  if (q < f.size()) throw InputError("sample size q must be at least v(f)");
  if (g.size() == 0) return {};
  return detail::test_sample(g, f, detail::draw(g.size(), q, seed), induced);
}

struct RateEstimate {
  std::size_t q = 0;
  std::size_t trials = 0;
  std::size_t rejections = 0;

  double rate() const { return trials ? static_cast<double>(rejections) / static_cast<double>(trials) : 0.0; }
};

// Trial i runs with derive_seed(seed, i); trials run in parallel.
inline RateEstimate rejection_rate(const OrderedGraph& g, const OrderedGraph& f, std::size_t q, bool induced,
                                   std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("trials must be at least 1");
  std::vector<char> rejected(trials, 0);
  parallel_for(trials, [&](std::size_t i) { rejected[i] = run_tester(g, f, q, induced, derive_seed(seed, i)).reject; });
  RateEstimate out{q, trials, 0};
  for (auto r : rejected) out.rejections += r;
  return out;
}

struct SweepInstance {
  Rational epsilon;
  OrderedGraph graph;  // asserted epsilon-far by the caller
};

struct SweepRow {
  Rational epsilon;
  std::optional<std::size_t> q_star;  // nullopt: 2/3 not reached by q_max
  double rate = 0.0;  // at q_star, or at q_max when not reached
};

// Minimal q in [v(f), q_max] with rejection rate >= 2/3, by binary search.
// The rate is monotone in q because trials share their draw streams.
inline std::vector<SweepRow> query_complexity_sweep(const std::vector<SweepInstance>& instances, const OrderedGraph& f,
                                                    std::size_t trials, std::uint64_t seed, bool induced,
                                                    std::size_t q_max) {
  if (trials < 1) throw InputError("trials must be at least 1");
  if (q_max < f.size()) throw InputError("q_max must be at least v(f)");
  std::vector<SweepRow> rows;
  auto good = [&](const RateEstimate& r) { return 3 * r.rejections >= 2 * r.trials; };
  for (const auto& inst : instances) {
    SweepRow row{inst.epsilon, std::nullopt, 0.0};
    auto top = rejection_rate(inst.graph, f, q_max, induced, trials, seed);
    row.rate = top.rate();
    if (good(top)) {
      std::size_t lo = f.size(), hi = q_max;
      double at_hi = top.rate();
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        auto r = rejection_rate(inst.graph, f, mid, induced, trials, seed);
        if (good(r)) {
          hi = mid;
          at_hi = r.rate();
        } else {
          lo = mid + 1;
        }
      }
      row.q_star = hi;
      row.rate = at_hi;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ordrem
