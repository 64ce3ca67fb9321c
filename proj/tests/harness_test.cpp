#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "enrich/errors.hpp"
#include "enrich/graphs.hpp"
#include "enrich/harness.hpp"
#include "oracles.hpp"

using namespace enrich;

namespace {

ClassSpec spec_of(ClassId id) {
  ClassConfig c;
  c.id = id;
  return ClassSpec(c);
}

}  // namespace

TEST(ClassIds, ParseRoundTrip) {
  for (ClassId c : all_class_ids()) EXPECT_EQ(parse_class_id(to_string(c)), c);
  EXPECT_EQ(parse_class_id("sp"), ClassId::series_parallel);
  EXPECT_THROW(parse_class_id("planar"), UsageError);
}

TEST(Enumeration, SmallExamples) {
  EXPECT_EQ(enumerate_class(spec_of(ClassId::cactus), 3).objects.size(), 4u);
  EXPECT_EQ(enumerate_class(spec_of(ClassId::dissection), 3).objects.size(), 3u);
  const Oracle o = enumerate_class(spec_of(ClassId::cayley), 3);
  ASSERT_EQ(o.objects.size(), 2u);
  // Poisson(1) weights: (1,1,0) has p1^2 p0, (2,0,0) has p2 p0^2 = half of it.
  EXPECT_EQ(o.objects[0], "1 1 0");
  EXPECT_EQ(o.objects[1], "2 0 0");
  EXPECT_NEAR(o.prob[0], 2.0 / 3, 1e-12);
  EXPECT_NEAR(o.prob[1], 1.0 / 3, 1e-12);
}

TEST(Enumeration, PlaneTreesAreCatalan) {
  const std::size_t want[] = {1, 1, 2, 5, 14, 42, 132};
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto ts = enumerate_plane_trees(n);
    EXPECT_EQ(ts.size(), want[n - 1]);
    for (const auto& t : ts) EXPECT_TRUE(is_valid_plane_tree(t));
  }
  EXPECT_EQ(enumerate_plane_trees(3)[0].outdeg, (std::vector<std::uint32_t>{1, 1, 0}));
}

TEST(Enumeration, SizesMatchExactCounts) {
  const std::pair<ClassId, std::size_t> cases[] = {
      {ClassId::cactus, 5},     {ClassId::outerplanar, 5}, {ClassId::series_parallel, 5},
      {ClassId::dissection, 6}, {ClassId::cograph, 5},     {ClassId::permutation, 6}};
  for (auto [id, top] : cases) {
    const ClassSpec s = spec_of(id);
    for (std::size_t n = (id == ClassId::dissection ? 2 : 1); n <= top; ++n) {
      const Oracle o = enumerate_class(s, n);
      EXPECT_EQ(Integer(o.objects.size()), s.count(n)) << s.name() << " " << n;
      EXPECT_NEAR(std::accumulate(o.prob.begin(), o.prob.end(), 0.0), 1, 1e-12);
      EXPECT_TRUE(std::is_sorted(o.objects.begin(), o.objects.end()));
    }
  }
}

TEST(Enumeration, CapsAreEnforced) {
  EXPECT_THROW(enumerate_class(spec_of(ClassId::cactus), 7), DomainError);
  EXPECT_THROW(enumerate_class(spec_of(ClassId::cograph), 6), DomainError);
  EXPECT_THROW(enumerate_class(spec_of(ClassId::permutation), 7), DomainError);
}

TEST(Counting, TreeLeavesHasNoCount) { EXPECT_THROW(spec_of(ClassId::tree_leaves).count(3), UsageError); }

TEST(Predicates, P4FreeMatchesOracle) {
  for (int n = 1; n <= 5; ++n)
    for (const auto& e : oracle::all_graphs(n)) {
      LabeledGraph g(static_cast<std::size_t>(n));
      for (auto [u, v] : e) g.add_edge(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
      EXPECT_EQ(is_p4_free(g), oracle::p4_free(n, e)) << oracle::edges_text(n, e);
    }
}

TEST(Uniformity, AcceptsTheTrueSampler) {
  const UniformityReport r = uniformity_test(spec_of(ClassId::cactus), 4, 100000, 1);
  EXPECT_EQ(r.support, 31u);
  EXPECT_EQ(r.observed_support, 31u);
  EXPECT_EQ(r.dof, 30u);
  EXPECT_GT(r.p_value, 1e-3);
  EXPECT_EQ(r.samples, 100000u);
}

TEST(Uniformity, DetectsAPerturbedOffspringLaw) {
  // Cactus n = 4 with p_1 raised by 10% and the law renormalized.
  const auto base = graph_class(GraphClass::cactus);
  auto biased = std::make_shared<EnrichedClass<BlockDecoration>>(*base);
  auto src = base->offspring;
  biased->offspring = std::make_shared<OffspringDistribution>(
      [src](std::size_t order) {
        const auto tab = src->table(order);
        std::vector<long double> p(tab->p.begin(), tab->p.begin() + static_cast<long>(order) + 1);
        const long double extra = 0.1L * p[1];
        p[1] += extra;
        for (auto& v : p) v /= 1 + extra;
        return p;
      },
      src->tilt());
  const Oracle o = enumerate_class(spec_of(ClassId::cactus), 4);
  const TextSampler sampler = [biased](std::size_t n, RngStream& rng) {
    return edge_list_text(enriched_to_graph(sample_enriched_tree(*biased, n, rng)));
  };
  const UniformityReport r = chi_square_test("biased cactus", 4, o, sampler, 200000, 2);
  EXPECT_LT(r.p_value, 1e-6);
}

TEST(Uniformity, OutsideObjectIsACorrectnessFailure) {
  const Oracle o = enumerate_class(spec_of(ClassId::cactus), 3);
  const TextSampler bad = [](std::size_t, RngStream&) { return std::string("3 0\n"); };
  EXPECT_THROW(chi_square_test("bad", 3, o, bad, 1000, 3), CorrectnessFailure);
}

TEST(Uniformity, ReportDoesNotDependOnJobs) {
  const ClassSpec s = spec_of(ClassId::dissection);
  const UniformityReport a = uniformity_test(s, 4, 20000, 4, 1);
  const UniformityReport b = uniformity_test(s, 4, 20000, 4, 3);
  EXPECT_EQ(a.chi_square, b.chi_square);
  EXPECT_EQ(report_text(a), report_text(b));
}

TEST(Uniformity, NeedsTwentySamplesPerObject) {
  EXPECT_THROW(uniformity_test(spec_of(ClassId::cactus), 4, 600, 5), DomainError);
}

TEST(Scaling, PreconditionsAndShape) {
  const ClassSpec s = spec_of(ClassId::cayley);
  EXPECT_THROW(runtime_scaling(s, {10, 20, 30, 40}, 3, 1), DomainError);
  EXPECT_THROW(runtime_scaling(s, {10, 20, 20, 40, 50}, 3, 1), DomainError);
  EXPECT_THROW(runtime_scaling(s, {10, 20, 30, 40, 50}, 0, 1), DomainError);
  const ScalingReport r = runtime_scaling(s, {256, 512, 1024, 2048, 4096}, 3, 1);
  EXPECT_EQ(r.median_seconds.size(), 5u);
  EXPECT_EQ(r.normalized.size(), 5u);
  EXPECT_TRUE(std::isfinite(r.slope));
  EXPECT_FALSE(report_text(r).empty());
}

TEST(Scaling, RejectionsPerRootN) {
  const RejectionReport r = rejection_scaling(spec_of(ClassId::cactus), {400, 1600, 6400}, 300, 9);
  ASSERT_EQ(r.scaled.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_NEAR(r.scaled[i], r.mean_rejections[i] / std::sqrt(static_cast<double>(r.sizes[i])), 1e-12);
  const auto [lo, hi] = std::minmax_element(r.scaled.begin(), r.scaled.end());
  EXPECT_LT(*hi / *lo, 2.0);
}

TEST(Sampling, ObjectsHaveTheRightKind) {
  RngStream rng(10);
  EXPECT_EQ(spec_of(ClassId::cactus).sample(5, rng).kind, ObjectKind::graph);
  EXPECT_EQ(spec_of(ClassId::dissection).sample(5, rng).kind, ObjectKind::dissection);
  EXPECT_EQ(spec_of(ClassId::permutation).sample(5, rng).kind, ObjectKind::permutation);
  EXPECT_EQ(spec_of(ClassId::tree_leaves).sample(5, rng).kind, ObjectKind::tree);
  const SampledObject c = spec_of(ClassId::cayley).sample(5, rng);
  EXPECT_EQ(c.tree.size(), 5u);
  EXPECT_EQ(c.graph.edge_count(), 4u);
  EXPECT_THROW(spec_of(ClassId::dissection).sample(1, rng), Infeasible);
  EXPECT_THROW(spec_of(ClassId::cactus).sample(0, rng), DomainError);
}

TEST(Invariants, SuitePasses) {
  const auto checks = run_invariant_suite(11, 30);
  EXPECT_EQ(checks.size(), 8u);
  for (const auto& c : checks) {
    EXPECT_GT(c.checked, 0u) << c.name;
    EXPECT_EQ(c.failed, 0u) << c.name << ": " << c.first_failure;
  }
}
