#include <gtest/gtest.h>

#include <cmath>

#include "ordrem/constructions.hpp"
#include "ordrem/generators.hpp"
#include "ordrem/tester.hpp"

using namespace ordrem;

TEST(Tester, OneSidedOnFreeGraphs) {
  Rng rng(5);
  // interleaved cliques are induced-D-free; complete graphs are free of any non-complete f
  const auto free_d = planted_cliques(60, 4, BaseShape::interleaved, 0, 1, rng);
  ASSERT_EQ(count_induced_D_u64(free_d), 0u);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    EXPECT_FALSE(run_tester(free_d, named::D(), 20, true, seed).reject);
    EXPECT_FALSE(run_tester(named::complete(30), named::c4_1(), 12, true, seed).reject);
  }
}

TEST(Tester, FindsTheUniqueCopy) {
  const auto f = named::c4_3();
  std::size_t rejections = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto run = run_tester(f, f, 50, true, seed);
    EXPECT_EQ(run.sample.size(), 50u);
    if (run.reject) {
      ++rejections;
      EXPECT_EQ(run.witness, (std::vector<Vertex>{0, 1, 2, 3}));
    }
  }
  EXPECT_GT(rejections, 40u);
}

TEST(Tester, RejectsNeedQ) {
  EXPECT_THROW(run_tester(named::complete(5), named::complete(3), 2, true, 1), InputError);
}

TEST(Tester, SeedsAreReproducible) {
  Rng rng(9);
  const auto g = random_graph(80, 1, 3, rng);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto a = run_tester(g, named::D(), 8, true, seed);
    auto b = run_tester(g, named::D(), 8, true, seed);
    EXPECT_EQ(a.sample, b.sample);
    EXPECT_EQ(a.witness, b.witness);
  }
  auto r1 = rejection_rate(g, named::D(), 6, true, 200, 4);
  auto r2 = rejection_rate(g, named::D(), 6, true, 200, 4);
  EXPECT_EQ(r1.rejections, r2.rejections);
}

TEST(Tester, NonInducedWitness) {
  // a complete graph contains every non-induced pattern
  auto run = run_tester(named::complete(10), named::c4_2(), 10, false, 3);
  if (run.reject) {
    EXPECT_EQ(run.witness.size(), 4u);
  }
  EXPECT_FALSE(run_tester(named::complete(10), named::c4_2(), 10, true, 3).reject);
}

TEST(Tester, RateMonotoneInQ) {
  Rng rng(21);
  const auto g = random_graph(120, 1, 8, rng);
  RateEstimate prev{};
  for (std::size_t q = 3; q <= 40; q += 3) {
    auto r = rejection_rate(g, named::complete(3), q, true, 300, 77);
    EXPECT_GE(r.rejections, prev.rejections) << q;
    prev = r;
  }
}

TEST(Sweep, FreeGraphNeverReaches) {
  auto rows = query_complexity_sweep({{Rational(1, 10), named::complete(20)}}, named::c4_1(), 30, 1, true, 20);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].q_star);
  EXPECT_EQ(rows[0].rate, 0.0);
}

TEST(Sweep, DecreasingInEpsilon) {
  // n/ (3 t) vertex-disjoint triangles among n vertices: t copies per eps
  const std::size_t n = 150;
  std::vector<SweepInstance> inst;
  for (std::size_t copies : {5, 15, 45}) {
    OrderedGraph g(n);
    for (std::size_t c = 0; c < copies; ++c) {
      // interleaved positions keep the copies disjoint
      const Vertex a = c, b = c + copies, d = c + 2 * copies;
      g.add_edge(a, b);
      g.add_edge(a, d);
      g.add_edge(b, d);
    }
    inst.push_back({Rational(static_cast<std::uint64_t>(copies), static_cast<std::uint64_t>(n * n)), g});
  }
  auto rows = query_complexity_sweep(inst, named::complete(3), 200, 8, true, n);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.q_star);
    EXPECT_GE(r.rate, 2.0 / 3.0);
  }
  EXPECT_GT(*rows[0].q_star, *rows[1].q_star);
  EXPECT_GT(*rows[1].q_star, *rows[2].q_star);
}

TEST(Sweep, CopyCountOrdering) {
  const auto tri = named::complete(3);
  RSOptions few, many;
  few.m = 10;
  few.census = false;
  many.m = 2;
  many.census = false;
  // m = 2 plants roughly ten times as many copies per vertex pair as m = 10
  auto a = hard_instance_induced(tri, Rational(1, 1000), 200, few);
  auto b = hard_instance_induced(tri, Rational(1, 1000), 200, many);
  ASSERT_GE(b.planted_copies.size(), 4 * a.planted_copies.size());
  auto rows = query_complexity_sweep({{Rational(1, 100), a.graph}, {Rational(1, 10), b.graph}}, tri, 200, 5, true, 200);
  ASSERT_TRUE(rows[0].q_star && rows[1].q_star);
  EXPECT_GT(*rows[0].q_star, *rows[1].q_star);
}
