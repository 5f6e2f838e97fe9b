#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "odd/containment.hpp"
#include "odd/model.hpp"

namespace odd {

struct Environment {
  std::string id;
  std::string display_name;
  OddDocument capability;
};

struct UnallocatedCase {
  std::string test_case_id;
  // Environment id -> failing leaf paths (or the error text for the pair).
  std::map<std::string, std::vector<std::string>> failures;
};

struct AllocationReport {
  std::map<std::pair<std::string, std::string>, ComparisonVerdict> matrix;  // (test case, env)
  std::map<std::string, std::vector<std::string>> feasible;  // ranked env ids, non-empty only
  std::vector<UnallocatedCase> unallocated;                  // sorted by id

  bool all_allocated() const { return unallocated.empty(); }
};

/// Sum over the four attributes of (capability level - requirement level).
/// Attributes absent from a verdict contribute nothing.
std::int64_t attribute_slack(const ComparisonVerdict& verdict);

/// Orders feasible environments least over-qualified first, ties by id.
std::vector<std::string> rank_feasible(
    const std::vector<std::pair<std::string, ComparisonVerdict>>& verdicts);

/// Compares every test case against every environment. Throws
/// Error{duplicate_id}; comparison errors are rethrown with the pair named.
AllocationReport allocate(const std::vector<OddDocument>& test_cases,
                          const std::vector<Environment>& environments,
                          const TaxonomyRegistry& registry);

}  // namespace odd
