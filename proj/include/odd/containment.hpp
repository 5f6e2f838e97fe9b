#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odd/evaluator.hpp"
#include "odd/model.hpp"

namespace odd {

enum class ComparisonRule {
  equality,
  numeric_leq,
  interval_containment,
  set_membership,
  ordinal_leq,
  missing_in_capability,
};

std::string_view to_string(ComparisonRule rule);

struct LeafVerdict {
  Path path;
  LeafValue requirement;
  std::optional<LeafValue> capability;  // empty for missing_in_capability
  ComparisonRule rule = ComparisonRule::equality;
  bool pass = false;
  std::string message;
};

struct ComparisonVerdict {
  std::string capability_id;
  std::string requirement_id;
  bool within = false;
  std::vector<LeafVerdict> leaf_verdicts;
  std::vector<TraceEntry> trace;

  std::vector<const LeafVerdict*> failures() const;
};

/// Leaf-wise containment of a requirement value in a capability value.
/// Throws Error{type_error} for expression or mismatched variants.
LeafVerdict compare_leaf(const LeafValue& requirement, const LeafValue& capability,
                         const LeafType& leaf_type);

/// Concretizes `capability` against `requirement`, then compares every leaf
/// assigned in the requirement, depth first in `taxonomy` order. Leaves only
/// the capability assigns are ignored; leaves it lacks fail.
ComparisonVerdict generic_compare(const OddDocument& capability, const OddDocument& requirement,
                                  const TaxonomyRegistry& registry);

/// Same, with the comparison schema and the capability's own schema given.
ComparisonVerdict generic_compare(const OddDocument& capability, const OddDocument& requirement,
                                  const Taxonomy& comparison_taxonomy,
                                  const Taxonomy& capability_taxonomy);

}  // namespace odd
