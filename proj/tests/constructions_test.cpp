#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "ordrem/constructions.hpp"

using namespace ordrem;

namespace {

std::vector<std::uint64_t> random_subset(std::uint64_t m, std::uint64_t num, std::uint64_t den, Rng& rng) {
  std::vector<std::uint64_t> s;
  for (std::uint64_t x = 1; x <= m; ++x)
    if (rng.chance(num, den)) s.push_back(x);
  return s;
}

// Exhaustive pairwise comparison of copies, straight from the definition.
bool pairwise_share_at_most_one(const std::vector<std::vector<Vertex>>& copies) {
  for (std::size_t a = 0; a < copies.size(); ++a) {
    std::set<Vertex> va(copies[a].begin(), copies[a].end());
    for (std::size_t b = a + 1; b < copies.size(); ++b) {
      std::size_t shared = 0;
      for (auto v : copies[b]) shared += va.count(v);
      if (shared > 1) return false;
    }
  }
  return true;
}

RSOptions with_m(std::uint64_t m, bool census = true) {
  RSOptions o;
  o.m = m;
  o.census = census;
  return o;
}

OrderedGraph graph_from_mask(std::size_t n, std::uint64_t mask) { return oracle::from_mask(n, mask); }

}  // namespace

TEST(SolutionFree, ThreeTermProgression) {
  auto c = verify_solution_free({1, 2, 3}, 3);
  EXPECT_FALSE(c.solution_free);
  ASSERT_TRUE(c.counterexample);
  EXPECT_EQ(c.counterexample->weights, (std::vector<std::uint64_t>{1, 1}));
  EXPECT_EQ(c.counterexample->values, (std::vector<std::uint64_t>{1, 3, 2}));
  EXPECT_EQ(c.counterexample->describe(), "1+3 = 2*2");
}

TEST(SolutionFree, SmallSets) {
  EXPECT_TRUE(verify_solution_free({1, 2}, 3).solution_free);
  EXPECT_TRUE(verify_solution_free({7}, 5).solution_free);
  EXPECT_TRUE(verify_solution_free({}, 4).solution_free);
  // 1 + 2*4 = 3*3
  auto c = verify_solution_free({1, 3, 4}, 3);
  EXPECT_FALSE(c.solution_free);
  EXPECT_THROW(verify_solution_free({0, 1}, 3), InputError);
}

TEST(SolutionFree, AgreesWithNaiveOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t k = 3 + trial % 3;
    auto s = random_subset(20 + trial % 15, 1, 4, rng);
    if (s.size() > 9) s.resize(9);
    auto c = verify_solution_free(s, k);
    ASSERT_EQ(c.solution_free, oracle::solution_free(s, k)) << "trial " << trial;
    if (!c.solution_free) {
      // the reported equation really holds and is non-trivial
      const auto& v = *c.counterexample;
      std::uint64_t lhs = 0, total = 0;
      for (std::size_t i = 0; i < v.weights.size(); ++i) {
        lhs += v.weights[i] * v.values[i];
        total += v.weights[i];
      }
      EXPECT_EQ(lhs, total * v.values.back());
      EXPECT_LE(total, k);
      std::set<std::uint64_t> distinct(v.values.begin(), v.values.end());
      EXPECT_GT(distinct.size(), 1u);
    }
  }
}

TEST(SolutionFree, GreedyIsMaximal) {
  for (std::uint64_t k : {3, 4}) {
    auto g = greedy_solution_free(60, k);
    ASSERT_TRUE(oracle::solution_free(g, k));
    for (std::uint64_t x = 1; x <= 60; ++x) {
      if (std::binary_search(g.begin(), g.end(), x)) continue;
      auto more = g;
      more.insert(std::lower_bound(more.begin(), more.end(), x), x);
      EXPECT_FALSE(oracle::solution_free(more, k)) << x;
    }
  }
}

TEST(BehrendSet, Degenerate) {
  auto b = behrend_set(1, 3);
  EXPECT_EQ(b.elements, (std::vector<std::uint64_t>{1}));
  EXPECT_TRUE(b.verified);
  EXPECT_THROW(behrend_set(0, 3), InputError);
  EXPECT_THROW(behrend_set(10, 2), InputError);
}

TEST(BehrendSet, AtLeastHalfOfGreedy) {
  auto b = behrend_set(100, 3);
  EXPECT_TRUE(b.verified);
  EXPECT_TRUE(oracle::solution_free(b.elements, 3));
  EXPECT_GE(2 * b.elements.size(), greedy_solution_free(100, 3).size());
  for (auto x : b.elements) {
    EXPECT_GE(x, 1u);
    EXPECT_LE(x, 100u);
  }
}

TEST(BehrendSet, VerifiedAtDeskScale) {
  for (std::uint64_t m : {2, 7, 50, 300})
    for (std::uint64_t k : {3, 4, 5}) {
      auto b = behrend_set(m, k);
      EXPECT_TRUE(b.verified) << m << " " << k;
      EXPECT_TRUE(verify_solution_free(b.elements, k).solution_free);
    }
}

TEST(BehrendSet, SphereShellsAreSolutionFree) {
  for (std::uint64_t k : {3, 4}) {
    auto shells = detail::sphere_shells(400, k);
    ASSERT_FALSE(shells.empty());
    for (const auto& s : shells) {
      if (s.elements.size() > 12) {
        EXPECT_TRUE(verify_solution_free(s.elements, k).solution_free) << s.digits_below << " " << s.norm;
      } else {
        EXPECT_TRUE(oracle::solution_free(s.elements, k)) << s.digits_below << " " << s.norm;
      }
    }
  }
}

TEST(Design, SmallCases) {
  auto r4 = design_tuples(4, 2);
  EXPECT_EQ(design_prime(4), 3u);
  EXPECT_EQ(r4.size(), 9u);
  auto r6 = design_tuples(6, 3);
  EXPECT_EQ(design_prime(6), 5u);
  EXPECT_EQ(r6.size(), 25u);
  EXPECT_EQ(design_violations(r6), 0u);
  for (const auto& t : r6)
    for (auto x : t) {
      EXPECT_GE(x, 1u);
      EXPECT_LE(x, 6u);
    }
  EXPECT_THROW(design_tuples(5, 3), InputError);
  EXPECT_THROW(design_tuples(8, 1), InputError);
}

TEST(Design, ExhaustiveAgreement) {
  for (std::uint64_t k = 2; k <= 4; ++k)
    for (std::uint64_t r = 2 * k; r <= 40; ++r) {
      auto tuples = design_tuples(r, k);
      EXPECT_GE(4 * tuples.size(), r * r) << r << " " << k;
      // independent agreement count
      for (std::size_t a = 0; a < tuples.size(); ++a)
        for (std::size_t b = a + 1; b < tuples.size(); ++b) {
          int agree = 0;
          for (std::size_t i = 0; i < k; ++i) agree += tuples[a][i] == tuples[b][i];
          ASSERT_LE(agree, 1) << r << " " << k;
        }
    }
}

TEST(Pattern, ChecksColours) {
  std::vector<VertexSet> parts{VertexSet::range(0, 2), VertexSet::range(2, 4), VertexSet::range(4, 5)};
  OrderedGraph g(5, {{0, 2}, {1, 3}, {3, 4}});
  Pattern gray(3);
  EXPECT_TRUE(check_pattern(g, gray, parts).ok);

  Pattern p(3);
  p.set(0, 1, Color::black);
  auto c = check_pattern(g, p, parts);
  EXPECT_FALSE(c.ok);
  ASSERT_TRUE(c.witness);
  EXPECT_EQ(*c.witness, (Edge{0, 3}));

  Pattern w(3);
  w.set(1, 2, Color::white);
  c = check_pattern(g, w, parts);
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(*c.witness, (Edge{3, 4}));

  g.add_edge(0, 1);
  c = check_pattern(g, gray, parts);
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(*c.witness, (Edge{0, 1}));
}

TEST(Pattern, RejectsBadPartitions) {
  OrderedGraph g(4);
  Pattern p(2);
  EXPECT_THROW(check_pattern(g, p, {VertexSet{0, 2}, VertexSet{1, 3}}), InputError);
  EXPECT_THROW(check_pattern(g, p, {VertexSet::range(2, 4), VertexSet::range(0, 2)}), InputError);
  EXPECT_THROW(check_pattern(g, p, {VertexSet::range(0, 1), VertexSet::range(1, 3)}), InputError);
  EXPECT_THROW(check_pattern(g, Pattern(3), {VertexSet::range(0, 2), VertexSet::range(2, 4)}), InputError);
}

TEST(Pattern, Reversal) {
  Pattern p(4);
  p.set(0, 1, Color::black);
  p.set(1, 3, Color::white);
  auto r = p.reversed();
  EXPECT_EQ(r.at(2, 3), Color::black);
  EXPECT_EQ(r.at(0, 2), Color::white);
  EXPECT_EQ(r.reversed(), p);
}

TEST(GoodnessSpec, CatalogValidates) {
  for (const auto& e : four_vertex_catalog()) {
    EXPECT_NO_THROW(validate(e.spec)) << e.label;
    EXPECT_TRUE(has_pattern(e.graph, e.spec.pattern)) << e.label;
  }
  EXPECT_NO_THROW(validate(detail::triangle_spec(named::complete(3))));
  EXPECT_NO_THROW(validate(detail::core_spec(named::cycle({0, 2, 4, 1, 3}))));
}

TEST(GoodnessSpec, RejectsMissingCycle) {
  GoodnessSpec s{Pattern(3, Color::white), {{0, 1, 2}}, {0, 1, 2}};
  EXPECT_THROW(validate(s), InputError);
  s.pattern = Pattern(3);
  s.sigma = {0, 0, 1};
  EXPECT_THROW(validate(s), InputError);
  s.sigma = {2, 1, 0};
  EXPECT_NO_THROW(validate(s));
  s.families = {{}};
  EXPECT_THROW(validate(s), InputError);
}

TEST(GoodnessSpec, IncreasingCycleRespectsSigma) {
  // gray only on the cycle 0-2-1-3-0
  Pattern p(4, Color::white);
  for (auto [u, v] : named::cycle({0, 2, 1, 3}).edges()) p.set(u, v, Color::gray);
  EXPECT_FALSE(increasing_gray_cycle(p, {0, 1, 2, 3}, {0, 1, 2, 3}));
  auto c = increasing_gray_cycle(p, {0, 1, 2, 3}, {0, 2, 1, 3});
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (std::vector<std::size_t>{0, 2, 1, 3}));
}

TEST(Falsifier, FindsMisconfiguredSpec) {
  GoodnessSpec bad{Pattern(3), {{}}, {0, 1, 2}};
  auto c = falsify_goodness(named::D(), bad, 10, 1);
  ASSERT_TRUE(c);
  EXPECT_TRUE(detail::is_induced_copy(named::D(), c->graph, c->copy));
}

TEST(Falsifier, CatalogSurvives) {
  for (const auto& e : four_vertex_catalog()) EXPECT_FALSE(falsify_goodness(e.graph, e.spec, 5000, 3)) << e.label;
  const auto tri = named::complete(3);
  EXPECT_FALSE(falsify_goodness(tri, detail::triangle_spec(tri), 2000, 3));
}

TEST(Falsifier, CatchesWrongFamily) {
  // C4^(3) with only one of its two families is not good
  auto entry = four_vertex_catalog()[2];
  ASSERT_EQ(entry.label, "C4^(3) pattern");
  entry.spec.families = {{0, 1, 3}};
  EXPECT_TRUE(falsify_goodness(entry.graph, entry.spec, 20000, 3));
}

TEST(RSConstruct, TriangleStructure) {
  const auto tri = named::complete(3);
  const auto spec = detail::triangle_spec(tri);
  for (std::uint64_t m : {2, 4, 8}) {
    auto out = rs_construct(tri, spec, Rational(1, 1000), 200, with_m(m));
    EXPECT_TRUE(check_pattern(out.graph, out.pattern, out.parts).ok);
    EXPECT_TRUE(pairwise_share_at_most_one(out.planted_copies));
    EXPECT_EQ(out.planted_copies.size(), out.advertised_copies);
    EXPECT_EQ(out.advertised_copies, m * out.solution_free.size() * out.tuples);
    for (const auto& c : out.planted_copies) EXPECT_TRUE(detail::is_induced_copy(tri, out.graph, c));
    // only the planted triangles survive in H, each blown up r^3 times
    const std::uint64_t r = out.factor;
    ASSERT_TRUE(out.census);
    EXPECT_EQ(*out.census, BigInt(out.base_copies.size() * r * r * r));
    EXPECT_EQ(*out.census, BigInt(oracle::count(tri, out.graph, true)));
    EXPECT_LE(out.graph.size(), 200u);
  }
}

TEST(RSConstruct, CensusFallsWithM) {
  const auto tri = named::complete(3);
  const auto spec = detail::triangle_spec(tri);
  Rational prev = 2;
  for (std::uint64_t m : {2, 3, 4, 5, 6, 8, 10, 16}) {
    auto out = rs_construct(tri, spec, Rational(1, 1000), 200, with_m(m));
    const Rational ratio(*out.census, BigInt(200 * 200 * 200));
    EXPECT_LE(ratio, prev) << m;
    prev = ratio;
  }
}

TEST(RSConstruct, BaseCopiesFromDefinition) {
  // v_i = x + (sigma(i)-1) s inside V_i of size sigma(i) m
  const auto tri = named::complete(3);
  auto out = rs_construct(tri, detail::triangle_spec(tri), Rational(1, 1000), 60, with_m(3, false));
  ASSERT_EQ(out.solution_free, (std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(out.base_size, 18u);
  std::set<std::vector<Vertex>> expected;
  for (std::uint64_t s : {1, 2})
    for (std::uint64_t x = 1; x <= 3; ++x) expected.insert({x - 1, 3 + x + s - 1, 9 + x + 2 * s - 1});
  EXPECT_EQ(std::set<std::vector<Vertex>>(out.base_copies.begin(), out.base_copies.end()), expected);
}

TEST(RSConstruct, Infeasible) {
  const auto tri = named::complete(3);
  const auto spec = detail::triangle_spec(tri);
  try {
    rs_construct(tri, spec, Rational(1, 100), 200);
    FAIL();
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("4k^4"), std::string::npos);
  }
  try {
    rs_construct(tri, spec, Rational(1, 1000), 20, with_m(4));
    FAIL();
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("v(H)"), std::string::npos);
  }
  // formula: 4*81*eps = 1 gives m = 1
  EXPECT_EQ(detail::formula_m(3, Rational(1, 324), 1), 1u);
  EXPECT_GT(detail::formula_m(3, Rational(1, 100000), 1), detail::formula_m(3, Rational(1, 10000), 1));
}

TEST(RSConstruct, SolutionFreeOverride) {
  const auto tri = named::complete(3);
  RSOptions o = with_m(6, false);
  o.solution_free = std::vector<std::uint64_t>{1, 2, 3};
  EXPECT_THROW(rs_construct(tri, detail::triangle_spec(tri), Rational(1, 1000), 200, o), InputError);
  o.solution_free = std::vector<std::uint64_t>{1, 7};
  EXPECT_THROW(rs_construct(tri, detail::triangle_spec(tri), Rational(1, 1000), 200, o), InputError);
  o.solution_free = std::vector<std::uint64_t>{2, 3};
  auto out = rs_construct(tri, detail::triangle_spec(tri), Rational(1, 1000), 200, o);
  EXPECT_EQ(out.solution_free_method, "override");
}

TEST(HardInduced, TriangleCase) {
  auto c = induced_case(named::complete(3));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->label, "triangle");
  EXPECT_EQ(c->spec.families, (std::vector<std::vector<std::size_t>>{{0, 1, 2}}));
  // K4: every triple is a triangle
  auto k4 = induced_case(named::complete(4));
  EXPECT_EQ(k4->spec.families.size(), 4u);
}

TEST(HardInduced, ComplementTrick) {
  auto out = hard_instance_induced(named::c4_2(), Rational(1, 100000), 300, with_m(2));
  EXPECT_EQ(out.case_label, "C4^(2) complement trick (complement)");
  EXPECT_TRUE(out.complemented);
  EXPECT_FALSE(check_rs_output(named::c4_2(), out));
  const auto plain = complement(out.graph);
  EXPECT_TRUE(check_pattern(plain, out.pattern, out.parts).ok);
  for (const auto& c : out.planted_copies) EXPECT_TRUE(detail::is_induced_copy(named::c4_2(), out.graph, c));
}

TEST(HardInduced, NamedCases) {
  EXPECT_EQ(induced_case(named::c4_3())->label, "C4^(3) pattern");
  EXPECT_EQ(induced_case(named::c4_1())->label, "C4^(1) core");
  EXPECT_EQ(induced_case(named::p4_1())->label, "P4^(1) pattern");
  EXPECT_EQ(induced_case(named::empty(3))->label, "independent set of size 3 (complement of triangle case)");
  EXPECT_EQ(induced_case(named::monotone_path(3))->label, "monotone path");
  EXPECT_EQ(induced_case(named::cycle({0, 2, 4, 1, 3}))->label, "5-cycle core");
  auto rev = induced_case(reverse(named::p4_2()));
  ASSERT_TRUE(rev);
  EXPECT_EQ(rev->symmetry, Symmetry::reverse);
}

TEST(HardInduced, RefusesPolynomialFamily) {
  for (auto s : all_symmetries) EXPECT_THROW(hard_instance_induced(apply(s, named::D()), Rational(1, 1000), 100), RefusalError);
  EXPECT_THROW(hard_instance_induced(named::single_edge(), Rational(1, 1000), 100), RefusalError);
}

TEST(HardInduced, EveryGraphUpToFiveVertices) {
  std::size_t built = 0;
  for (std::size_t n = 3; n <= 5; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const auto f = graph_from_mask(n, mask);
      if (in_D_orbit(f)) {
        EXPECT_FALSE(induced_case(f));
        continue;
      }
      auto out = hard_instance_induced(f, Rational(1, 1000000), 15 * n * (n + 1) / 2, with_m(1, false));
      EXPECT_FALSE(check_rs_output(f, out)) << n << " " << mask;
      EXPECT_TRUE(pairwise_share_at_most_one(out.planted_copies));
      ++built;
    }
  }
  EXPECT_EQ(built, 4u + 64u + 1024u);
}

TEST(HardNonInduced, CycleCore) {
  const auto f = named::c4_1();
  auto out = hard_instance_noninduced(f, Rational(1, 1000000), 400, with_m(2, false));
  EXPECT_FALSE(check_certificates(f, out));
  EXPECT_EQ(out.certificates.size(), out.advertised_copies);
  // every copy of the core projects onto a copy planted in H
  std::set<std::vector<Vertex>> planted(out.base_copies.begin(), out.base_copies.end());
  std::uint64_t seen = 0;
  bool all_planted = true;
  for_each_copy(f, out.graph, CopyKind::non_induced, [&](std::span<const Vertex> c) {
    std::vector<Vertex> proj;
    for (auto v : c) proj.push_back(v / out.factor);
    all_planted &= planted.count(proj) > 0;
    ++seen;
    return true;
  });
  EXPECT_TRUE(all_planted);
  const std::uint64_t r = out.factor;
  EXPECT_EQ(seen, planted.size() * r * r * r * r);
}

TEST(HardNonInduced, PendantTriangle) {
  // pendant vertex 0 folds onto vertex 1
  const OrderedGraph f(4, {{0, 2}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(core(f), named::complete(3));
  auto out = hard_instance_noninduced(f, Rational(1, 1000000), 400, with_m(2, false));
  EXPECT_FALSE(check_certificates(f, out));
  EXPECT_GT(out.certificates.size(), 0u);
}

TEST(HardNonInduced, RefusesForestCores) {
  EXPECT_THROW(hard_instance_noninduced(named::monotone_path(3), Rational(1, 1000), 200), RefusalError);
  EXPECT_THROW(hard_instance_noninduced(named::D(), Rational(1, 1000), 200), RefusalError);
}
