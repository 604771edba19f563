// Acceptance run: one PASS/FAIL line per criterion, with the measured numbers.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "ordrem/classify.hpp"
#include "ordrem/constructions.hpp"
#include "ordrem/generators.hpp"
#include "ordrem/repair_d.hpp"
#include "ordrem/tester.hpp"

using namespace ordrem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("criterion %2d %s: %s (%s; %.1fs)\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

template <class... T>
std::string cat(const T&... parts) {
  std::ostringstream out;
  (out << ... << parts);
  return out.str();
}

// Two cliques split by `side` (bit set: vertex in B), cross edges from `cross`.
OrderedGraph two_cliques(std::size_t n, std::uint32_t side, std::uint64_t cross, VertexSet& a, VertexSet& b) {
  std::vector<Vertex> av, bv;
  for (Vertex v = 0; v < n; ++v) ((side >> v) & 1u ? bv : av).push_back(v);
  OrderedGraph g(n);
  for (const auto* part : {&av, &bv})
    for (std::size_t i = 0; i < part->size(); ++i)
      for (std::size_t j = i + 1; j < part->size(); ++j) g.add_edge((*part)[i], (*part)[j]);
  std::size_t bit = 0;
  for (auto x : av)
    for (auto y : bv) {
      if ((cross >> bit) & 1u) g.add_edge(x, y);
      ++bit;
    }
  a = VertexSet(av);
  b = VertexSet(bv);
  return g;
}

NoisyInstance planted_instance(Rng& rng, std::size_t max_n) {
  const std::size_t n = 30 + rng.below(max_n - 29);
  const auto shape = rng.chance(1, 2) ? BaseShape::chained : BaseShape::interleaved;
  const auto base = planted_cliques(n, 1 + rng.below(6), shape, 1, 10, rng);
  return add_noise(base, n / 4 + rng.below(n), rng);
}

OrderedGraph triangle() { return named::complete(3); }

}  // namespace

int main() {
  criterion(1, "counting oracles", [] {
    Rng rng(101);
    std::size_t specialised = 0, generic = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto g = oracle::random_graph(1 + rng.below(60), rng.below(101) / 100.0, rng);
      if (count_induced_D(g) != count_induced(named::D(), g)) return Outcome{false, cat("D mismatch at trial ", t)};
      ++specialised;
    }
    for (int t = 0; t < 600; ++t) {
      const std::size_t k = 1 + rng.below(4);
      const auto f = oracle::from_mask(k, rng.below(std::uint64_t{1} << (k * (k - 1) / 2)));
      const auto g = oracle::random_graph(rng.below(26), rng.below(101) / 100.0, rng);
      const bool induced = t % 2 == 0;
      const BigInt fast = induced ? count_induced(f, g) : count_copies(f, g);
      if (fast != BigInt(oracle::count(f, g, induced))) return Outcome{false, cat("generic mismatch at trial ", t)};
      ++generic;
    }
    return Outcome{true, cat(specialised, " D-counts and ", generic, " generic counts match")};
  });

  criterion(2, "two-clique characterization", [] {
    std::uint64_t checked = 0;
    VertexSet a, b;
    auto agree = [&](const OrderedGraph& g) {
      ++checked;
      return check_two_clique_characterization(g, a, b).d_free == (oracle::count_D(g) == 0);
    };
    for (std::size_t n = 2; n <= 8; ++n)
      for (std::uint32_t side = 0; side < (1u << n); side += 2) {
        two_cliques(n, side, 0, a, b);
        const std::size_t pairs = a.size() * b.size();
        for (std::uint64_t cross = 0; cross < (std::uint64_t{1} << pairs); ++cross)
          if (!agree(two_cliques(n, side, cross, a, b)))
            return Outcome{false, cat("discrepancy n=", n, " side=", side, " cross=", cross)};
      }
    const auto exhaustive = checked;
    Rng rng(202);
    for (int t = 0; t < 50000; ++t) {
      const std::size_t n = 9 + rng.below(2);
      if (!agree(two_cliques(n, static_cast<std::uint32_t>(rng.below(1u << n)), rng.next(), a, b)))
        return Outcome{false, cat("discrepancy at random trial ", t)};
    }
    return Outcome{true, cat(exhaustive, " exhaustive (n<=8) + ", checked - exhaustive, " random (n=9..10), 0 discrepancies")};
  });

  criterion(3, "repair soundness", [] {
    Rng rng(303);
    std::size_t edits = 0;
    for (int t = 0; t < 200; ++t) {
      const auto inst = planted_instance(rng, 300);
      const auto r = repair_D(inst.graph, Rational(1, 10), RepairMode::practical);
      if (count_induced_D(apply(inst.graph, r.edits)) != 0) return Outcome{false, cat("copies survive at trial ", t)};
      if (auto inv = check_trace_invariants(inst.graph, r.trace))
        return Outcome{false, cat("trace invariant at trial ", t, ": ", *inv)};
      edits += r.edits.size();
    }
    return Outcome{true, cat("200/200 instances D-free after repair, trace invariants hold, ", edits, " edits total")};
  });

  criterion(4, "repair efficiency", [] {
    Rng rng(404);
    int within = 0;
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
      const auto inst = planted_instance(rng, 300);
      const auto budget = inst.toggled.size();
      const auto r = repair_D(inst.graph, Rational(1, 10), RepairMode::practical);
      within += r.edits.size() <= 10 * budget;
      if (budget) worst = std::max(worst, static_cast<double>(r.edits.size()) / static_cast<double>(budget));
    }
    return Outcome{within >= 90, cat(within, "/100 within 10B (need 90), worst ratio ", worst)};
  });

  criterion(5, "three-clique vertex removal", [] {
    std::ostringstream rows;
    for (std::size_t r = 2; r <= 6; ++r) {
      const auto inst = three_clique_instance(r);
      const auto count = oracle::count_D(inst.graph);
      Rational s = 1;
      while (Rational(count) > s * s * s / 12) s += 1;
      const auto removed = three_cliques_vertex_removal(inst.graph, inst.a, inst.b, inst.c, s);
      const bool ok = removed.size() == 3 * r && BigInt(count) >= choose(r + 1, 3) &&
                      Rational(r * r * r, 12) <= Rational(count) &&
                      oracle::count_D(induced_subgraph(inst.graph, set_difference(VertexSet::range(0, 3 * r), removed))) == 0;
      if (!ok) return Outcome{false, cat("r=", r, " |S|=", removed.size(), " count=", count)};
      rows << (r > 2 ? ", " : "") << "r=" << r << ":|S|=" << removed.size() << ",D=" << count;
    }
    return Outcome{true, rows.str()};
  });

  criterion(6, "design tuples", [] {
    std::size_t families = 0;
    for (std::uint64_t k = 2; k <= 4; ++k)
      for (std::uint64_t r = 2 * k; r <= 40; ++r) {
        const auto tuples = design_tuples(r, k);
        if (4 * tuples.size() < r * r) return Outcome{false, cat("r=", r, " k=", k, " only ", tuples.size(), " tuples")};
        for (std::size_t x = 0; x < tuples.size(); ++x) {
          if (tuples[x].size() != k) return Outcome{false, "wrong tuple length"};
          for (auto c : tuples[x])
            if (c >= r) return Outcome{false, "coordinate out of range"};
          for (std::size_t y = x + 1; y < tuples.size(); ++y) {
            std::size_t same = 0;
            for (std::size_t i = 0; i < k; ++i) same += tuples[x][i] == tuples[y][i];
            if (same > 1) return Outcome{false, cat("r=", r, " k=", k, " tuples agree twice")};
          }
        }
        ++families;
      }
    return Outcome{true, cat(families, " families, |R| >= r^2/4 and pairwise agreement <= 1 throughout")};
  });

  criterion(7, "solution-free sets", [] {
    const auto bad = verify_solution_free({1, 2, 3}, 3);
    if (bad.solution_free || !bad.counterexample) return Outcome{false, "{1,2,3} accepted"};
    const std::string witness = bad.counterexample->describe();
    std::size_t shipped = 0;
    for (std::uint64_t k = 3; k <= 4; ++k)
      for (std::uint64_t m : {10, 50, 200, 1000, 2000}) {
        const auto s = behrend_set(m, k);
        if (!verify_solution_free(s.elements, k).solution_free || !s.verified)
          return Outcome{false, cat("shipped set m=", m, " k=", k, " rejected")};
        if (m <= 200 && !oracle::solution_free(s.elements, k))
          return Outcome{false, cat("naive check rejects m=", m, " k=", k)};
        ++shipped;
      }
    const auto s = behrend_set(2000, 3);
    const auto greedy = greedy_solution_free(2000, 3);
    std::size_t best_shell = 0;
    for (const auto& shell : detail::sphere_shells(2000, 3)) best_shell = std::max(best_shell, shell.elements.size());
    return Outcome{s.elements.size() > greedy.size(),
                   cat("{1,2,3} rejected via ", witness, "; ", shipped, " shipped sets verified; m=2000 k=3: largest sphere shell ",
                       best_shell, ", seed shell ", s.sphere_size, ", greedy ", greedy.size(), ", shipped ", s.elements.size(), " (", s.method, ")")};
  });

  criterion(8, "triangle RS certificate", [] {
    const auto f = triangle();
    std::ostringstream rows;
    double previous = 0;
    for (std::uint64_t m : {4, 8}) {
      RSOptions opt;
      opt.m = m;
      const auto out = hard_instance_induced(f, Rational(1, 1000), 200, opt);
      const auto& copies = out.planted_copies;
      for (std::size_t x = 0; x < copies.size(); ++x)
        for (std::size_t y = x + 1; y < copies.size(); ++y) {
          std::size_t shared = 0;
          for (auto u : copies[x])
            for (auto v : copies[y]) shared += u == v;
          if (shared > 1) return Outcome{false, cat("m=", m, ": copies share a pair")};
        }
      const auto pc = check_pattern(out.graph, out.pattern, out.parts);
      if (!pc.ok) return Outcome{false, cat("m=", m, ": pattern check: ", pc.reason)};
      const auto census = BigInt(oracle::count(f, out.graph, true));
      if (out.census && *out.census != census) return Outcome{false, "reported census disagrees with naive count"};
      const double n = static_cast<double>(out.graph.size());
      const double ratio = census.convert_to<double>() / (n * n * n);
      if (m == 8 && ratio >= previous) return Outcome{false, cat("census/n^3 did not fall: ", previous, " -> ", ratio)};
      previous = ratio;
      rows << (m == 4 ? "" : ", ") << "m=" << m << ": v=" << out.graph.size() << " copies=" << copies.size()
           << " census=" << census << " census/v^3=" << ratio;
    }
    return Outcome{true, rows.str()};
  });

  criterion(9, "classifier census", [] {
    std::size_t polynomial = 0;
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      const auto f = oracle::from_mask(3, mask);
      const bool poly = classify_induced(f).verdict == Verdict::polynomial;
      bool orbit = false;
      for (auto s : all_symmetries) orbit |= apply(s, named::D()) == f;
      if (poly != orbit) return Outcome{false, cat("mask ", mask, " misclassified")};
      polynomial += poly;
    }
    if (polynomial != 4) return Outcome{false, cat(polynomial, " polynomial 3-vertex graphs")};
    std::size_t graphs = 0;
    for (std::size_t n = 1; n <= 4; ++n)
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * (n - 1) / 2)); ++mask) {
        const auto f = oracle::from_mask(n, mask);
        const auto v = classify_induced(f).verdict;
        const auto w = classify_noninduced(f).verdict;
        for (auto s : all_symmetries) {
          const auto g = apply(s, f);
          if (classify_induced(g).verdict != v) return Outcome{false, cat("induced verdict not invariant, n=", n)};
          if (!complements(s) && classify_noninduced(g).verdict != w)
            return Outcome{false, cat("non-induced verdict not reversal-invariant, n=", n)};
        }
        ++graphs;
      }
    return Outcome{true, cat("8 three-vertex graphs, 4 polynomial (the orbit of D); ", graphs,
                             " graphs on <= 4 vertices symmetry-invariant")};
  });

  criterion(10, "cores", [] {
    // the core is the unique subgraph with only the identity as self-map
    // that the graph maps onto; checked by exhaustive homomorphism lists
    auto certified = [](const OrderedGraph& g, const OrderedGraph& k) {
      return oracle::all_homomorphisms(k, k).size() == 1 && !oracle::all_homomorphisms(g, k).empty() &&
             !oracle::all_homomorphisms(k, g).empty();
    };
    const std::pair<const char*, std::pair<OrderedGraph, OrderedGraph>> named_cases[] = {
        {"D", {named::D(), named::single_edge()}},
        {"P3^mon", {named::monotone_path(3), named::monotone_path(3)}},
        {"C4^(1)", {named::c4_1(), named::c4_1()}},
    };
    for (const auto& [name, pair] : named_cases) {
      const auto k = core(pair.first);
      if (!(k == pair.second) || !certified(pair.first, k)) return Outcome{false, cat("core(", name, ") wrong")};
    }
    Rng rng(1010);
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n = 1 + rng.below(6);
      const auto g = oracle::from_mask(n, rng.below(std::uint64_t{1} << (n * (n - 1) / 2)));
      const auto k = core(g);
      if (!(core(k) == k) || !certified(g, k)) return Outcome{false, cat("idempotence/certificate fails at trial ", t)};
    }
    return Outcome{true, "core(D)=edge, core(P3^mon)=P3^mon, core(C4^(1))=C4^(1); 1000 random graphs idempotent"};
  });

  criterion(11, "tester", [] {
    Rng rng(1111);
    // f-free inputs: bipartite graphs for the triangle, clique unions for D
    OrderedGraph bip(120);
    for (Vertex u = 0; u < 120; ++u)
      for (Vertex v = u + 1; v < 120; ++v)
        if ((u + v) % 2 == 1 && rng.chance(1, 2)) bip.add_edge(u, v);
    const auto cliques = planted_cliques(120, 4, BaseShape::interleaved, 0, 1, rng);
    std::size_t runs = 0, rejections = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
      const auto r = i % 3 == 0   ? run_tester(bip, triangle(), 20, false, derive_seed(1, i))
                     : i % 3 == 1 ? run_tester(bip, triangle(), 20, true, derive_seed(2, i))
                                  : run_tester(cliques, named::D(), 20, true, derive_seed(3, i));
      rejections += r.reject;
      ++runs;
    }
    if (rejections) return Outcome{false, cat(rejections, " rejections on free inputs")};
    RSOptions opt;
    opt.m = 4;
    const auto hard = hard_instance_induced(triangle(), Rational(1, 1000), 200, opt).graph;
    const std::size_t trials = 400;
    std::vector<double> rates;
    for (std::size_t q : {3, 4, 6, 8, 12, 16, 24, 32}) rates.push_back(rejection_rate(hard, triangle(), q, true, trials, 5).rate());
    for (std::size_t i = 0; i + 1 < rates.size(); ++i) {
      const double a = rates[i], b = rates[i + 1];
      const double sigma = std::sqrt((a * (1 - a) + b * (1 - b)) / trials);
      if (b < a - 3 * sigma) return Outcome{false, cat("rate drops from ", a, " to ", b)};
    }
    std::ostringstream grid;
    for (auto r : rates) grid << (grid.tellp() ? " " : "") << r;
    return Outcome{true, cat(runs, " runs on free inputs, 0 rejections; rates over q=3..32: ", grid.str())};
  });

  std::printf("%d criteria failed\n", failures);
  return failures ? 1 : 0;
}
