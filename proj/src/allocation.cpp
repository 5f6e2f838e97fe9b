#include "odd/allocation.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "odd/error.hpp"

namespace odd {

std::int64_t attribute_slack(const ComparisonVerdict& verdict) {
  std::int64_t slack = 0;
  for (const auto& leaf : verdict.leaf_verdicts) {
    if (leaf.path.size() != 1 || !leaf.capability) continue;
    const bool is_attribute = std::find(kTestAttributeNames.begin(), kTestAttributeNames.end(),
                                        leaf.path.leaf_name()) != kTestAttributeNames.end();
    const auto* req = std::get_if<std::int64_t>(&leaf.requirement);
    const auto* cap = std::get_if<std::int64_t>(&*leaf.capability);
    if (is_attribute && req && cap) slack += *cap - *req;
  }
  return slack;
}

std::vector<std::string> rank_feasible(
    const std::vector<std::pair<std::string, ComparisonVerdict>>& verdicts) {
  std::vector<std::pair<std::int64_t, std::string>> keyed;
  keyed.reserve(verdicts.size());
  for (const auto& [env, verdict] : verdicts) keyed.emplace_back(attribute_slack(verdict), env);
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  out.reserve(keyed.size());
  for (auto& [_, env] : keyed) out.push_back(std::move(env));
  return out;
}

namespace {

template <class T, class IdOf>
std::vector<const T*> sorted_unique(const std::vector<T>& items, IdOf id_of, std::string_view what) {
  std::vector<const T*> out;
  for (const auto& item : items) out.push_back(&item);
  std::sort(out.begin(), out.end(), [&](const T* a, const T* b) { return id_of(*a) < id_of(*b); });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (id_of(*out[i - 1]) == id_of(*out[i])) {
      throw Error(ErrorCode::duplicate_id,
                  "duplicate " + std::string(what) + " id '" + id_of(*out[i]) + "'");
    }
  }
  return out;
}

using Row = std::vector<std::pair<std::string, ComparisonVerdict>>;

Row compare_row(const OddDocument& test_case, const std::vector<const Environment*>& environments,
                const TaxonomyRegistry& registry) {
  Row row;
  for (const auto* env : environments) {
    try {
      row.emplace_back(env->id, generic_compare(env->capability, test_case, registry));
    } catch (const Error& e) {
      throw Error(e.code(), "test case '" + test_case.id + "' vs environment '" + env->id +
                                "': " + e.what());
    }
  }
  return row;
}

}  // namespace

AllocationReport allocate(const std::vector<OddDocument>& test_cases,
                          const std::vector<Environment>& environments,
                          const TaxonomyRegistry& registry) {
  const auto cases =
      sorted_unique(test_cases, [](const OddDocument& d) -> const std::string& { return d.id; },
                    "test case");
  const auto envs =
      sorted_unique(environments, [](const Environment& e) -> const std::string& { return e.id; },
                    "environment");

  // One task per test case; rows are collected in id order.
  std::vector<std::future<Row>> rows;
  rows.reserve(cases.size());
  for (const auto* test_case : cases) {
    rows.push_back(std::async(std::launch::async, compare_row, std::cref(*test_case),
                              std::cref(envs), std::cref(registry)));
  }

  AllocationReport report;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto row = rows[i].get();
    const auto& case_id = cases[i]->id;
    Row feasible;
    UnallocatedCase failure{case_id, {}};
    for (auto& [env_id, verdict] : row) {
      if (verdict.within) {
        feasible.emplace_back(env_id, verdict);
      } else {
        auto& paths = failure.failures[env_id];
        for (const auto* leaf : verdict.failures()) paths.push_back(leaf->path.str());
      }
      report.matrix.emplace(std::pair{case_id, env_id}, std::move(verdict));
    }
    if (feasible.empty()) {
      report.unallocated.push_back(std::move(failure));
    } else {
      report.feasible.emplace(case_id, rank_feasible(feasible));
    }
  }
  return report;
}

}  // namespace odd
