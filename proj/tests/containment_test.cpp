#include <gtest/gtest.h>

#include "odd/containment.hpp"
#include "odd/error.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace odd;
using odd::testing::kAzimuth;
using odd::testing::kElevation;
using odd::testing::load_fixture;
using odd::testing::P;

namespace {

const LeafType kReal{LeafKind::real};
const LeafType kInt{LeafKind::integer};
const LeafType kOrdinal{LeafKind::integer, {}, Range{1, 3}, true};
const LeafType kText{LeafKind::text};
const LeafType kSet{LeafKind::text_set};

bool within(const LeafValue& req, const LeafValue& cap, const LeafType& type) {
  return compare_leaf(req, cap, type).pass;
}

std::vector<std::string> failing_paths(const ComparisonVerdict& v) {
  std::vector<std::string> out;
  for (const auto* leaf : v.failures()) out.push_back(leaf->path.str());
  return out;
}

}  // namespace

TEST(CompareLeafTest, ScalarsAndRules) {
  EXPECT_TRUE(within(126.0, 360.0, kReal));
  EXPECT_TRUE(within(360.0, 360.0, kReal));
  EXPECT_FALSE(within(360.5, 360.0, kReal));
  EXPECT_EQ(compare_leaf(126.0, 360.0, kReal).rule, ComparisonRule::numeric_leq);
  EXPECT_EQ(compare_leaf(std::int64_t{2}, std::int64_t{1}, kOrdinal).rule, ComparisonRule::ordinal_leq);
  EXPECT_FALSE(within(std::int64_t{2}, std::int64_t{1}, kOrdinal));
  EXPECT_TRUE(within(std::int64_t{1}, std::int64_t{3}, kOrdinal));
  EXPECT_TRUE(within(std::int64_t{9007199254740993}, std::int64_t{9007199254740993}, kInt));
  EXPECT_FALSE(within(std::int64_t{9007199254740993}, std::int64_t{9007199254740992}, kInt));
}

TEST(CompareLeafTest, Intervals) {
  EXPECT_TRUE(within(6.0, Interval{0.0, 10.0}, kReal));
  EXPECT_TRUE(within(10.0, Interval{0.0, 10.0}, kReal));
  EXPECT_FALSE(within(10.001, Interval{0.0, 10.0}, kReal));
  EXPECT_FALSE(within(-1.0, Interval{0.0, 10.0}, kReal));
  EXPECT_EQ(compare_leaf(6.0, Interval{0.0, 10.0}, kReal).rule, ComparisonRule::interval_containment);
  EXPECT_TRUE(within(Interval{2.0, 5.0}, Interval{0.0, 10.0}, kReal));
  EXPECT_FALSE(within(Interval{2.0, 15.0}, Interval{0.0, 10.0}, kReal));
  EXPECT_TRUE(within(Interval{2.0, 5.0}, 5.0, kReal));
  EXPECT_FALSE(within(Interval{2.0, 5.0}, 4.0, kReal));
  EXPECT_TRUE(within(std::int64_t{3}, Interval{1.0, 3.0}, kInt));
}

TEST(CompareLeafTest, TextAndSets) {
  EXPECT_TRUE(within(std::string("sweden"), std::string("sweden"), kText));
  EXPECT_FALSE(within(std::string("sweden"), std::string("norway"), kText));
  EXPECT_EQ(compare_leaf(std::string("a"), std::string("a"), kText).rule, ComparisonRule::equality);
  EXPECT_TRUE(within(std::string("sweden"), TextSet{{"norway", "sweden"}}, kText));
  EXPECT_FALSE(within(std::string("finland"), TextSet{{"norway", "sweden"}}, kText));
  EXPECT_TRUE(within(TextSet{{"car"}}, TextSet{{"car", "truck"}}, kSet));
  EXPECT_FALSE(within(TextSet{{"car", "bike"}}, TextSet{{"car", "truck"}}, kSet));
  EXPECT_TRUE(within(TextSet{}, TextSet{}, kSet));
  EXPECT_EQ(compare_leaf(TextSet{{"car"}}, TextSet{{"car"}}, kSet).rule, ComparisonRule::set_membership);
}

TEST(CompareLeafTest, BooleansDurationsSizes) {
  const LeafType flag{LeafKind::boolean};
  EXPECT_TRUE(within(true, true, flag));
  EXPECT_FALSE(within(false, true, flag));
  EXPECT_FALSE(within(true, false, flag));
  EXPECT_TRUE(within(Duration{5}, Duration{10}, {LeafKind::duration}));
  EXPECT_FALSE(within(Duration{11}, Duration{10}, {LeafKind::duration}));
  EXPECT_TRUE(within(DataSize{1024}, DataSize{1024}, {LeafKind::data_size}));
  EXPECT_FALSE(within(DataSize{1025}, DataSize{1024}, {LeafKind::data_size}));
}

TEST(CompareLeafTest, TypeErrors) {
  EXPECT_THROW(compare_leaf(std::string("a"), 1.0, kReal), Error);
  EXPECT_THROW(compare_leaf(true, std::int64_t{1}, kInt), Error);
  const auto carla = load_fixture(odd::testing::kCarlaFile);
  EXPECT_THROW(compare_leaf(std::int64_t{1}, carla.assignments.at(P("sut_fidelity")), kOrdinal), Error);
}

TEST(GenericCompareTest, CarlaIsNotWithinForGlare) {
  const auto registry = TaxonomyRegistry::builtin();
  const auto req = load_fixture(odd::testing::kRequirementFile);
  const auto verdict = generic_compare(load_fixture(odd::testing::kCarlaFile), req, registry);
  EXPECT_FALSE(verdict.within);
  ASSERT_EQ(failing_paths(verdict), (std::vector<std::string>{"sut_fidelity"}));
  const auto* failure = verdict.failures()[0];
  EXPECT_EQ(failure->requirement, LeafValue{std::int64_t{2}});
  EXPECT_EQ(failure->capability, LeafValue{std::int64_t{1}});
  EXPECT_EQ(verdict.leaf_verdicts.size(), req.assignments.size());
  EXPECT_EQ(verdict.trace.size(), 1u);
  EXPECT_EQ(verdict.capability_id, "carla");
  EXPECT_EQ(verdict.requirement_id, "reversing_glare");
}

TEST(GenericCompareTest, ScaleTruckIsWithin) {
  const auto registry = TaxonomyRegistry::builtin();
  const auto verdict = generic_compare(load_fixture(odd::testing::kScaleTruckFile),
                                       load_fixture(odd::testing::kRequirementFile), registry);
  EXPECT_TRUE(verdict.within);
  EXPECT_TRUE(verdict.failures().empty());
}

TEST(GenericCompareTest, CarlaOutsideGlareWindowIsWithin) {
  const auto registry = TaxonomyRegistry::builtin();
  auto req = load_fixture(odd::testing::kRequirementFile);
  req.assignments[kAzimuth] = 200.0;
  EXPECT_TRUE(generic_compare(load_fixture(odd::testing::kCarlaFile), req, registry).within);
}

TEST(GenericCompareTest, DepthFirstOrderAndMissingLeaves) {
  const auto registry = TaxonomyRegistry::builtin();
  auto req = load_fixture(odd::testing::kRequirementFile);
  req.assignments[P("dynamic/traffic/agent_density")] = std::int64_t{5};
  auto cap = load_fixture(odd::testing::kScaleTruckFile);
  cap.assignments[P("scenery/drivable_area/number_of_lanes")] = std::int64_t{2};
  const auto verdict = generic_compare(cap, req, registry);
  EXPECT_FALSE(verdict.within);
  ASSERT_EQ(failing_paths(verdict), (std::vector<std::string>{"dynamic/traffic/agent_density"}));
  EXPECT_EQ(verdict.failures()[0]->rule, ComparisonRule::missing_in_capability);
  EXPECT_FALSE(verdict.failures()[0]->capability);

  std::vector<Path> order;
  for (const auto& leaf : verdict.leaf_verdicts) order.push_back(leaf.path);
  std::vector<Path> expected;
  for (const auto& path : registry.at("ext_odd").leaf_paths()) {
    if (req.assignments.contains(path)) expected.push_back(path);
  }
  EXPECT_EQ(order, expected);
}

TEST(GenericCompareTest, MixedTaxonomies) {
  auto registry = TaxonomyRegistry::builtin();
  auto req = load_fixture(odd::testing::kRequirementFile);
  for (auto name : kTestAttributeNames) req.assignments.erase(P(name));
  req.taxonomy_id = "odd";
  const auto verdict = generic_compare(load_fixture(odd::testing::kCarlaFile), req, registry);
  EXPECT_TRUE(verdict.within);

  Taxonomy other;
  other.id = "other";
  other.root = TaxonomyNode::make_branch("", {TaxonomyNode::make_leaf("x", {LeafKind::real})});
  registry.add(other);
  OddDocument cap{"c", {}, Role::capability, "other", {{P("x"), 1.0}}};
  try {
    generic_compare(cap, req, registry);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::incompatible_taxonomies);
  }
}

TEST(GenericCompareTest, DoesNotMutateInputs) {
  const auto registry = TaxonomyRegistry::builtin();
  const auto req = load_fixture(odd::testing::kRequirementFile);
  const auto cap = load_fixture(odd::testing::kCarlaFile);
  const auto req_copy = req;
  const auto cap_copy = cap;
  generic_compare(cap, req, registry);
  EXPECT_EQ(req, req_copy);
  EXPECT_EQ(cap, cap_copy);
}

// Property checks over random taxonomies.

class ContainmentProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ContainmentProperties, AgreesWithOracle) {
  odd::testing::Rng rng(GetParam());
  int positives = 0;
  for (int i = 0; i < 100; ++i) {
    const auto tax = odd::testing::random_taxonomy(rng, "g", {.max_leaves = 30});
    const auto req = odd::testing::random_document(rng, tax, Role::requirement, "r");
    auto cap = odd::testing::widen(rng, req, tax, "c");
    if (i % 2 == 0) cap = odd::testing::perturb(rng, cap, tax);
    ASSERT_TRUE(validate_document(cap, tax).empty());
    const bool expected = odd::testing::oracle_within(cap, req);
    positives += expected;
    EXPECT_EQ(generic_compare(cap, req, tax, tax).within, expected) << "iteration " << i;
  }
  EXPECT_GT(positives, 10);
  EXPECT_LT(positives, 100);
}

TEST_P(ContainmentProperties, Reflexive) {
  odd::testing::Rng rng(GetParam() + 1000);
  for (int i = 0; i < 50; ++i) {
    const auto tax = odd::testing::random_taxonomy(rng, "g", {});
    auto doc = odd::testing::random_document(rng, tax, Role::requirement, "d");
    auto as_cap = doc;
    as_cap.role = Role::capability;
    EXPECT_TRUE(generic_compare(as_cap, doc, tax, tax).within);
  }
}

TEST_P(ContainmentProperties, TransitiveUnderWidening) {
  odd::testing::Rng rng(GetParam() + 2000);
  for (int i = 0; i < 50; ++i) {
    const auto tax = odd::testing::random_taxonomy(rng, "g", {});
    const auto req = odd::testing::random_document(rng, tax, Role::requirement, "r");
    const auto a = odd::testing::widen(rng, req, tax, "a");
    const auto b = odd::testing::widen(rng, a, tax, "b");
    auto a_as_req = a;
    a_as_req.role = Role::requirement;
    ASSERT_TRUE(generic_compare(a, req, tax, tax).within);
    ASSERT_TRUE(generic_compare(b, a_as_req, tax, tax).within);
    EXPECT_TRUE(generic_compare(b, req, tax, tax).within);
  }
}

TEST_P(ContainmentProperties, WideningPreservesWithin) {
  odd::testing::Rng rng(GetParam() + 3000);
  for (int i = 0; i < 50; ++i) {
    const auto tax = odd::testing::random_taxonomy(rng, "g", {.with_attributes = true});
    const auto req = odd::testing::random_document(rng, tax, Role::requirement, "r");
    auto cap = odd::testing::perturb(rng, odd::testing::widen(rng, req, tax, "c"), tax);
    if (!generic_compare(cap, req, tax, tax).within) continue;
    const auto wider = odd::testing::widen(rng, cap, tax, "w");
    EXPECT_TRUE(generic_compare(wider, req, tax, tax).within);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ContainmentProperties, ::testing::Values(1u, 2u, 3u));
