#include <gtest/gtest.h>

#include "odd/error.hpp"
#include "odd/evaluator.hpp"
#include "odd/parser.hpp"
#include "support/fixtures.hpp"

using namespace odd;
using odd::testing::kAzimuth;
using odd::testing::kElevation;
using odd::testing::load_fixture;
using odd::testing::P;

namespace {

class GlareRule : public ::testing::Test {
 protected:
  const TaxonomyRegistry registry = TaxonomyRegistry::builtin();
  const OddDocument requirement = load_fixture(odd::testing::kRequirementFile);
  const OddDocument carla = load_fixture(odd::testing::kCarlaFile);

  OddDocument at(double azimuth, double elevation) const {
    auto req = requirement;
    req.assignments[kAzimuth] = azimuth;
    req.assignments[kElevation] = elevation;
    return req;
  }

  LeafValue glare(double azimuth, double elevation) const {
    const auto req = at(azimuth, elevation);
    EvaluationContext context(req);
    return evaluate_expression(std::get<Expression>(carla.assignments.at(P("sut_fidelity"))), context);
  }
};

LeafValue eval(std::string_view source, const OddDocument& req) {
  auto parsed = parse_expression(source);
  if (!parsed) throw std::runtime_error("bad expression " + std::string(source));
  EvaluationContext context(req);
  return evaluate_expression(*parsed.value, context);
}

ErrorCode eval_error(std::string_view source, const OddDocument& req) {
  try {
    eval(source, req);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << source << " did not throw";
  return ErrorCode::duplicate_id;
}

}  // namespace

TEST_F(GlareRule, InsideWindowGivesLowFidelity) {
  EXPECT_EQ(glare(126.0, 6.0), LeafValue{std::int64_t{1}});
  EXPECT_EQ(glare(116.0, 10.0), LeafValue{std::int64_t{1}});
  EXPECT_EQ(glare(136.0, 10.0), LeafValue{std::int64_t{1}});
  EXPECT_EQ(glare(126.0, -5.0), LeafValue{std::int64_t{1}});
}

TEST_F(GlareRule, OutsideWindowGivesMediumFidelity) {
  EXPECT_EQ(glare(115.999, 6.0), LeafValue{std::int64_t{2}});
  EXPECT_EQ(glare(136.001, 6.0), LeafValue{std::int64_t{2}});
  EXPECT_EQ(glare(126.0, 10.001), LeafValue{std::int64_t{2}});
  EXPECT_EQ(glare(300.0, 45.0), LeafValue{std::int64_t{2}});
}

TEST_F(GlareRule, LiteralAndOperators) {
  EXPECT_EQ(eval("7", requirement), LeafValue{std::int64_t{7}});
  EXPECT_EQ(eval("2.5", requirement), LeafValue{2.5});
  EXPECT_EQ(eval("\"x\"", requirement), LeafValue{std::string("x")});
  EXPECT_EQ(eval("1 < 1.5", requirement), LeafValue{true});
  EXPECT_EQ(eval("2 == 2.0", requirement), LeafValue{true});
  EXPECT_EQ(eval("not (1 >= 2) and (false or true)", requirement), LeafValue{true});
  EXPECT_EQ(eval("req:scenery/zone/region_or_state == \"sweden\"", requirement), LeafValue{true});
  EXPECT_EQ(eval("req:scenery/zone/zone_type/freight_distribution_centre != true", requirement),
            LeafValue{false});
  EXPECT_EQ(eval("req:sut_fidelity", requirement), LeafValue{std::int64_t{2}});
  EXPECT_EQ(eval("if req:test_complexity > 1 then \"a\" else \"b\"", requirement),
            LeafValue{std::string("b")});
}

TEST_F(GlareRule, EvaluationErrors) {
  EXPECT_EQ(eval_error("req:dynamic/traffic/agent_density", requirement), ErrorCode::unbound_reference);
  EXPECT_EQ(eval_error("\"a\" < \"b\"", requirement), ErrorCode::type_error);
  EXPECT_EQ(eval_error("1 and true", requirement), ErrorCode::type_error);
  EXPECT_EQ(eval_error("if 1 then 2 else 3", requirement), ErrorCode::type_error);
  EXPECT_EQ(eval_error("true == 1", requirement), ErrorCode::type_error);
  // Strict: the untaken branch is still evaluated.
  EXPECT_EQ(eval_error("if true then 1 else req:dynamic/traffic/agent_density", requirement),
            ErrorCode::unbound_reference);
  EXPECT_EQ(eval_error("false and req:dynamic/traffic/agent_density > 1", requirement),
            ErrorCode::unbound_reference);
}

TEST_F(GlareRule, ContextRequiresRequirement) {
  try {
    EvaluationContext context(carla);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::role_mismatch);
  }
}

TEST_F(GlareRule, ConcretizeCarla) {
  const auto& ext = registry.at("ext_odd");
  std::vector<TraceEntry> trace;
  const auto glare_case = concretize_capability(carla, requirement, ext, &trace);
  EXPECT_EQ(test_attributes(glare_case)->levels(), (std::array<std::int64_t, 4>{3, 3, 2, 1}));
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_EQ(trace[0].path, P("sut_fidelity"));
  EXPECT_EQ(trace[0].value, LeafValue{std::int64_t{1}});

  const auto clear = concretize_capability(carla, at(200.0, 30.0), ext);
  EXPECT_EQ(test_attributes(clear)->levels(), (std::array<std::int64_t, 4>{3, 3, 2, 2}));
  EXPECT_EQ(glare_case.id, "carla");
  EXPECT_EQ(glare_case.role, Role::capability);
}

TEST_F(GlareRule, ConcretizeIsIdentityWithoutExpressions) {
  const auto truck = load_fixture(odd::testing::kScaleTruckFile);
  EXPECT_EQ(concretize_capability(truck, requirement, registry.at("ext_odd")), truck);
}

TEST_F(GlareRule, ConcretizeIsIdempotent) {
  const auto& ext = registry.at("ext_odd");
  const auto once = concretize_capability(carla, requirement, ext);
  EXPECT_EQ(concretize_capability(once, requirement, ext), once);
}

TEST_F(GlareRule, ConcretizeDoesNotMutateInputs) {
  const auto carla_copy = carla;
  const auto req_copy = requirement;
  concretize_capability(carla, requirement, registry.at("ext_odd"));
  EXPECT_EQ(carla, carla_copy);
  EXPECT_EQ(requirement, req_copy);
}

TEST_F(GlareRule, ConcretizeRejectsOutOfRangeResult) {
  auto bad = carla;
  auto parsed = parse_expression("if true then 4 else 0");
  ASSERT_TRUE(parsed);
  bad.assignments[P("sut_fidelity")] = *parsed.value;
  try {
    concretize_capability(bad, requirement, registry.at("ext_odd"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::constraint_violation);
    EXPECT_NE(std::string(e.what()).find("sut_fidelity"), std::string::npos);
  }
}

TEST_F(GlareRule, ConcretizeCoercesToLeafKind) {
  auto cap = carla;
  cap.assignments[kAzimuth] = *parse_expression("if true then 300 else 10").value;
  cap.assignments[P("test_complexity")] = *parse_expression("2.0").value;
  const auto out = concretize_capability(cap, requirement, registry.at("ext_odd"));
  EXPECT_EQ(out.assignments.at(kAzimuth), LeafValue{300.0});
  EXPECT_EQ(out.assignments.at(P("test_complexity")), LeafValue{std::int64_t{2}});

  cap.assignments[P("test_complexity")] = *parse_expression("2.5").value;
  EXPECT_THROW(concretize_capability(cap, requirement, registry.at("ext_odd")), Error);
  cap.assignments[P("test_complexity")] = *parse_expression("\"high\"").value;
  EXPECT_THROW(concretize_capability(cap, requirement, registry.at("ext_odd")), Error);
}
