#include <algorithm>
#include <cmath>

#include "odd/expression.hpp"
#include "odd/model.hpp"

namespace odd {

std::string_view to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::taxonomy_mismatch: return "taxonomy-mismatch";
    case ViolationCode::unknown_path: return "unknown-path";
    case ViolationCode::not_a_leaf: return "not-a-leaf";
    case ViolationCode::type_mismatch: return "type-mismatch";
    case ViolationCode::constraint: return "constraint";
    case ViolationCode::invalid_interval: return "invalid-interval";
    case ViolationCode::missing_required: return "missing-required";
    case ViolationCode::expression_in_requirement: return "expression-in-requirement";
  }
  return "violation";
}

namespace {

std::string range_text(const Range& range) {
  return "[" + format_real(range.lower) + ", " + format_real(range.upper) + "]";
}

void check_value(const Path& path, const LeafValue& value, const LeafType& type, Role role,
                 const Taxonomy& taxonomy, std::vector<Violation>& out) {
  auto add = [&](ViolationCode code, std::string message) {
    out.push_back({path, code, std::move(message)});
  };

  if (!is_compatible(value, type.kind)) {
    add(ViolationCode::type_mismatch, std::string(value_kind_name(value)) +
                                          " value at " + std::string(to_string(type.kind)) +
                                          " leaf");
    return;
  }

  if (const auto* expression = std::get_if<Expression>(&value)) {
    if (role == Role::requirement) {
      add(ViolationCode::expression_in_requirement,
          "requirement documents cannot contain expressions");
      return;
    }
    for (const auto& ref : referenced_paths(*expression->root)) {
      if (taxonomy.leaf_type(ref) == nullptr) {
        add(ViolationCode::unknown_path, "expression references unknown leaf '" + ref.str() + "'");
      }
    }
    return;
  }

  auto check_number = [&](double v, std::string_view what) {
    if (!std::isfinite(v)) {
      add(ViolationCode::constraint, std::string(what) + " is not finite");
      return;
    }
    if (type.range && !type.range->contains(v)) {
      add(ViolationCode::constraint,
          std::string(what) + " " + format_real(v) + " outside " + range_text(*type.range));
    }
  };

  if (const auto* v = std::get_if<std::int64_t>(&value)) {
    if (type.range && !type.range->contains(static_cast<double>(*v))) {
      add(ViolationCode::constraint,
          "value " + std::to_string(*v) + " outside " + range_text(*type.range));
    }
  } else if (const auto* v = std::get_if<double>(&value)) {
    check_number(*v, "value");
  } else if (const auto* v = std::get_if<Duration>(&value)) {
    if (v->seconds < 0.0) add(ViolationCode::constraint, "negative duration");
    check_number(v->seconds, "duration");
  } else if (const auto* v = std::get_if<DataSize>(&value)) {
    if (v->bytes < 0) add(ViolationCode::constraint, "negative data size");
    if (type.range && !type.range->contains(static_cast<double>(v->bytes))) {
      add(ViolationCode::constraint,
          "data size " + std::to_string(v->bytes) + " outside " + range_text(*type.range));
    }
  } else if (const auto* v = std::get_if<Interval>(&value)) {
    if (!std::isfinite(v->lower) || !std::isfinite(v->upper) || !(v->lower <= v->upper)) {
      add(ViolationCode::invalid_interval, "interval bounds must satisfy lower <= upper");
      return;
    }
    check_number(v->lower, "interval lower bound");
    check_number(v->upper, "interval upper bound");
  }
}

}  // namespace

std::vector<Violation> validate_document(const OddDocument& doc, const Taxonomy& taxonomy) {
  std::vector<Violation> out;
  if (!taxonomy.descends_from(doc.taxonomy_id)) {
    out.push_back({Path{}, ViolationCode::taxonomy_mismatch,
                   "document uses taxonomy '" + doc.taxonomy_id + "', not compatible with '" +
                       taxonomy.id + "'"});
  }

  for (const auto& [path, value] : doc.assignments) {
    const auto* node = taxonomy.find(path);
    if (node == nullptr || path.empty()) {
      out.push_back({path, ViolationCode::unknown_path, "no such node in '" + taxonomy.id + "'"});
      continue;
    }
    if (!node->is_leaf()) {
      out.push_back({path, ViolationCode::not_a_leaf, "values can only be assigned to leaves"});
      continue;
    }
    check_value(path, value, *node->leaf, doc.role, taxonomy, out);
  }

  for (const auto& path : taxonomy.leaf_paths()) {
    if (taxonomy.find(path)->required && !doc.assignments.contains(path)) {
      out.push_back({path, ViolationCode::missing_required, "required leaf is not assigned"});
    }
  }

  std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    if (a.path != b.path) return a.path < b.path;
    if (a.code != b.code) return a.code < b.code;
    return a.message < b.message;
  });
  return out;
}

}  // namespace odd
