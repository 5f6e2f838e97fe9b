#include "odd/containment.hpp"

#include <algorithm>
#include <set>

#include "odd/error.hpp"

namespace odd {

std::string_view to_string(ComparisonRule rule) {
  switch (rule) {
    case ComparisonRule::equality: return "equality";
    case ComparisonRule::numeric_leq: return "numeric-leq";
    case ComparisonRule::interval_containment: return "interval-containment";
    case ComparisonRule::set_membership: return "set-membership";
    case ComparisonRule::ordinal_leq: return "ordinal-leq";
    case ComparisonRule::missing_in_capability: return "missing-in-capability";
  }
  return "equality";
}

std::vector<const LeafVerdict*> ComparisonVerdict::failures() const {
  std::vector<const LeafVerdict*> out;
  for (const auto& verdict : leaf_verdicts) {
    if (!verdict.pass) out.push_back(&verdict);
  }
  return out;
}

namespace {

struct Outcome {
  ComparisonRule rule;
  bool pass;
};

[[noreturn]] void incompatible(const LeafValue& req, const LeafValue& cap, const LeafType& type) {
  throw Error(ErrorCode::type_error, "cannot compare requirement " +
                                         std::string(value_kind_name(req)) + " with capability " +
                                         std::string(value_kind_name(cap)) + " at a " +
                                         std::string(to_string(type.kind)) + " leaf");
}

// Integer and real leaves: scalars or intervals on either side.
Outcome compare_numeric(const LeafValue& req, const LeafValue& cap, const LeafType& type) {
  const auto scalar_rule = type.ordinal ? ComparisonRule::ordinal_leq : ComparisonRule::numeric_leq;
  const auto* req_interval = std::get_if<Interval>(&req);
  const auto* cap_interval = std::get_if<Interval>(&cap);

  const auto* req_int = std::get_if<std::int64_t>(&req);
  const auto* cap_int = std::get_if<std::int64_t>(&cap);
  if (req_int && cap_int) return {scalar_rule, *req_int <= *cap_int};

  auto scalar = [](const LeafValue& v) -> std::optional<double> {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    if (const auto* r = std::get_if<double>(&v)) return *r;
    return std::nullopt;
  };
  const auto req_scalar = scalar(req);
  const auto cap_scalar = scalar(cap);

  if (req_scalar && cap_scalar) return {scalar_rule, *req_scalar <= *cap_scalar};
  if (req_scalar && cap_interval) {
    return {ComparisonRule::interval_containment,
            cap_interval->lower <= *req_scalar && *req_scalar <= cap_interval->upper};
  }
  if (req_interval && cap_interval) {
    return {ComparisonRule::interval_containment,
            cap_interval->lower <= req_interval->lower && req_interval->upper <= cap_interval->upper};
  }
  // A scalar capability bounds from above only, as for scalar requirements.
  if (req_interval && cap_scalar) return {scalar_rule, req_interval->upper <= *cap_scalar};
  incompatible(req, cap, type);
}

std::optional<std::set<std::string>> as_text_set(const LeafValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return std::set<std::string>{*s};
  if (const auto* s = std::get_if<TextSet>(&v)) return s->items;
  return std::nullopt;
}

Outcome compare_text(const LeafValue& req, const LeafValue& cap, const LeafType& type) {
  const auto* req_text = std::get_if<std::string>(&req);
  const auto* cap_text = std::get_if<std::string>(&cap);
  if (req_text && cap_text) return {ComparisonRule::equality, *req_text == *cap_text};
  const auto req_set = as_text_set(req);
  const auto cap_set = as_text_set(cap);
  if (!req_set || !cap_set) incompatible(req, cap, type);
  return {ComparisonRule::set_membership,
          std::includes(cap_set->begin(), cap_set->end(), req_set->begin(), req_set->end())};
}

Outcome compare_values(const LeafValue& req, const LeafValue& cap, const LeafType& type) {
  if (is_expression(req) || is_expression(cap)) {
    throw Error(ErrorCode::type_error, "expressions must be concretized before comparison");
  }
  if (!is_compatible(req, type.kind) || !is_compatible(cap, type.kind)) incompatible(req, cap, type);

  switch (type.kind) {
    case LeafKind::boolean: return {ComparisonRule::equality, std::get<bool>(req) == std::get<bool>(cap)};
    case LeafKind::text:
    case LeafKind::text_set: return compare_text(req, cap, type);
    case LeafKind::integer:
    case LeafKind::real: return compare_numeric(req, cap, type);
    case LeafKind::duration:
      return {ComparisonRule::numeric_leq,
              std::get<Duration>(req).seconds <= std::get<Duration>(cap).seconds};
    case LeafKind::data_size:
      return {ComparisonRule::numeric_leq, std::get<DataSize>(req).bytes <= std::get<DataSize>(cap).bytes};
  }
  incompatible(req, cap, type);
}

std::string describe(const Outcome& outcome, const LeafValue& req, const LeafValue& cap) {
  return "requirement " + render_value(req) + (outcome.pass ? " within " : " not within ") +
         "capability " + render_value(cap) + " (" + std::string(to_string(outcome.rule)) + ")";
}

}  // namespace

LeafVerdict compare_leaf(const LeafValue& requirement, const LeafValue& capability,
                         const LeafType& leaf_type) {
  const auto outcome = compare_values(requirement, capability, leaf_type);
  LeafVerdict verdict;
  verdict.requirement = requirement;
  verdict.capability = capability;
  verdict.rule = outcome.rule;
  verdict.pass = outcome.pass;
  verdict.message = describe(outcome, requirement, capability);
  return verdict;
}

ComparisonVerdict generic_compare(const OddDocument& capability, const OddDocument& requirement,
                                  const Taxonomy& comparison_taxonomy,
                                  const Taxonomy& capability_taxonomy) {
  ComparisonVerdict result;
  result.capability_id = capability.id;
  result.requirement_id = requirement.id;

  const auto concrete =
      concretize_capability(capability, requirement, capability_taxonomy, &result.trace);

  std::size_t visited = 0;
  for (const auto& path : comparison_taxonomy.leaf_paths()) {
    auto req_it = requirement.assignments.find(path);
    if (req_it == requirement.assignments.end()) continue;
    ++visited;
    auto cap_it = concrete.assignments.find(path);
    if (cap_it == concrete.assignments.end()) {
      LeafVerdict verdict;
      verdict.path = path;
      verdict.requirement = req_it->second;
      verdict.rule = ComparisonRule::missing_in_capability;
      verdict.pass = false;
      verdict.message = "capability does not declare this leaf";
      result.leaf_verdicts.push_back(std::move(verdict));
      continue;
    }
    try {
      auto verdict = compare_leaf(req_it->second, cap_it->second,
                                  *comparison_taxonomy.leaf_type(path));
      verdict.path = path;
      result.leaf_verdicts.push_back(std::move(verdict));
    } catch (const Error& e) {
      throw Error(e.code(), "'" + path.str() + "': " + e.what());
    }
  }
  if (visited != requirement.assignments.size()) {
    throw Error(ErrorCode::unknown_path, "requirement '" + requirement.id +
                                             "' assigns leaves outside taxonomy '" +
                                             comparison_taxonomy.id + "'");
  }

  result.within = std::all_of(result.leaf_verdicts.begin(), result.leaf_verdicts.end(),
                              [](const LeafVerdict& v) { return v.pass; });
  return result;
}

ComparisonVerdict generic_compare(const OddDocument& capability, const OddDocument& requirement,
                                  const TaxonomyRegistry& registry) {
  const auto& comparison = registry.common(capability.taxonomy_id, requirement.taxonomy_id);
  return generic_compare(capability, requirement, comparison, registry.at(capability.taxonomy_id));
}

}  // namespace odd
