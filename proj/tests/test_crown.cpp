#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace hsk;
using hsk::fixtures::five_vertex;

namespace {

// v1..v5 -> 0..4
HSCrown five_vertex_crown() { return HSCrown{{3, 4}, {Edge{0, 1}, Edge{1, 2}}, {3, 4}}; }

}  // namespace

TEST(ValidateCrown, FiveVertexIsValidButNotStrict) {
  const CrownVerdict v = validate_hs_crown(five_vertex().graph, five_vertex_crown());
  EXPECT_TRUE(v.valid());
  EXPECT_FALSE(v.strict);
  EXPECT_TRUE(v.failures.empty());
}

TEST(ValidateCrown, DependentIFails) {
  HSCrown c = five_vertex_crown();
  c.independent = {1, 3};
  const CrownVerdict v = validate_hs_crown(five_vertex().graph, c);
  EXPECT_FALSE(v.independent);
  EXPECT_FALSE(v.valid());
}

TEST(ValidateCrown, IncompleteJFails) {
  HSCrown c = five_vertex_crown();
  c.subedges = {Edge{0, 1}};
  c.matched_to = {3};
  const CrownVerdict v = validate_hs_crown(five_vertex().graph, c);
  EXPECT_FALSE(v.subedges_complete);
  EXPECT_FALSE(v.valid());
}

TEST(ValidateCrown, MatchingMustBeInjectiveAndFormEdges) {
  HSCrown c = five_vertex_crown();
  c.matched_to = {3, 3};
  EXPECT_FALSE(validate_hs_crown(five_vertex().graph, c).matching_valid);
  c.matched_to = {3, 0};
  EXPECT_FALSE(validate_hs_crown(five_vertex().graph, c).matching_valid);
}

TEST(ValidateCrown, OutOfRangeIdsFail) {
  HSCrown c = five_vertex_crown();
  c.independent = {3, 9};
  EXPECT_FALSE(validate_hs_crown(five_vertex().graph, c).ids_in_range);
}

TEST(ValidateCrown, UnitEdgeThroughIFails) {
  const Instance inst = fixtures::make(3, {{0}, {0, 1, 2}}, 1);
  const HSCrown c{{0}, {Edge{1, 2}}, {0}};
  EXPECT_FALSE(validate_hs_crown(inst.graph, c).valid());
}

TEST(ApplyCrown, FiveVertex) {
  const Instance f = five_vertex();
  const Instance g = apply_hs_crown(f, five_vertex_crown());
  EXPECT_EQ(g.labels, (std::vector<std::string>{"v1", "v2", "v3"}));
  EXPECT_EQ(g.graph.edges(), (std::vector<Edge>{Edge{0, 1}, Edge{1, 2}}));
  EXPECT_EQ(g.k, f.k);
  EXPECT_TRUE(decide_brute_force(f));
  EXPECT_TRUE(decide_brute_force(g));
}

TEST(ApplyCrown, IsolatedVerticesOnly) {
  const Instance inst = fixtures::make(4, {{0, 1}}, 1);
  const Instance g = apply_hs_crown(inst, HSCrown{{2, 3}, {}, {}});
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.graph.edges(), inst.graph.edges());
}

TEST(ApplyCrown, RejectsInvalidCrown) {
  HSCrown c = five_vertex_crown();
  c.independent = {1, 3};
  EXPECT_THROW(apply_hs_crown(five_vertex(), c), InvalidCrown);
}

TEST(StrictCrown, SharedPair) {
  const Instance inst = fixtures::make(5, {{0, 3, 4}, {1, 3, 4}, {2, 3, 4}}, 1);
  const std::vector<VertexId> i = {0, 1, 2};
  const auto c = find_strict_crown_from_independent_set(inst.graph, i);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->independent, i);
  EXPECT_EQ(c->subedges, (std::vector<Edge>{Edge{3, 4}}));
  EXPECT_EQ(c->matched_to, (std::vector<VertexId>{0}));
  EXPECT_TRUE(c->strict());
}

TEST(StrictCrown, FiveVertexHasNone) {
  const std::vector<VertexId> i = {3, 4};
  EXPECT_FALSE(find_strict_crown_from_independent_set(five_vertex().graph, i).has_value());
}

TEST(StrictCrown, IsolatedVertex) {
  const Instance inst = fixtures::make(3, {{0, 1}}, 1);
  const std::vector<VertexId> i = {2};
  const auto c = find_strict_crown_from_independent_set(inst.graph, i);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->independent, i);
  EXPECT_TRUE(c->subedges.empty());
}

TEST(StrictCrown, Preconditions) {
  const Instance unit = fixtures::make(3, {{0}, {1, 2}}, 1);
  const std::vector<VertexId> one = {1};
  EXPECT_THROW(find_strict_crown_from_independent_set(unit.graph, one), ContractError);
  const std::vector<VertexId> none;
  EXPECT_THROW(find_strict_crown_from_independent_set(five_vertex().graph, none), ContractError);
  const std::vector<VertexId> dependent = {0, 1};
  EXPECT_THROW(find_strict_crown_from_independent_set(five_vertex().graph, dependent), ContractError);
}

TEST(StrictCrown, RandomCrownsAreValidAndPreserveDecision) {
  std::mt19937_64 rng(31);
  std::size_t found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    GenSpec spec;
    spec.seed = rng();
    spec.n = 6 + uniform_below(rng, 10);
    spec.m = 2 + uniform_below(rng, 14);
    spec.d = 3;
    spec.k = 1 + static_cast<std::int64_t>(uniform_below(rng, 3));
    Instance inst = generate(spec);
    // Greedy independent set in a random order.
    std::vector<VertexId> order(inst.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<VertexId> i;
    for (VertexId v : order) {
      i.push_back(v);
      if (!is_independent(inst.graph, i)) i.pop_back();
    }
    std::sort(i.begin(), i.end());
    const auto c = find_strict_crown_from_independent_set(inst.graph, i);
    if (!c) continue;
    ++found;
    const CrownVerdict v = validate_hs_crown(inst.graph, *c);
    EXPECT_TRUE(v.valid()) << "seed " << spec.seed;
    EXPECT_TRUE(v.strict);
    EXPECT_FALSE(c->independent.empty());
    const Instance after = apply_hs_crown(inst, *c);
    EXPECT_EQ(decide_brute_force(inst), decide_brute_force(after)) << "seed " << spec.seed;
  }
  EXPECT_GT(found, 100u);
}

TEST(CrownText, ListsMapping) {
  const std::string text = to_text(five_vertex_crown(), five_vertex().labels);
  EXPECT_NE(text.find("v4"), std::string::npos);
  EXPECT_NE(text.find("v2"), std::string::npos);
}
