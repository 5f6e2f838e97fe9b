#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "odd/path.hpp"

namespace odd {

// ---------------------------------------------------------------------------
// Schema
// ---------------------------------------------------------------------------

enum class LeafKind { boolean, text, integer, real, duration, data_size, text_set };

std::string_view to_string(LeafKind kind);
std::optional<LeafKind> parse_leaf_kind(std::string_view text);

/// Inclusive numeric bounds.
struct Range {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double v) const { return lower <= v && v <= upper; }
  friend bool operator==(const Range&, const Range&) = default;
};

struct LeafType {
  LeafKind kind = LeafKind::text;
  std::optional<std::string> unit;
  std::optional<Range> range;
  // Integer leaves with level semantics (higher includes lower).
  bool ordinal = false;

  bool is_numeric() const;
  friend bool operator==(const LeafType&, const LeafType&) = default;
};

struct TaxonomyNode {
  std::string name;
  std::vector<TaxonomyNode> children;  // branch only, declaration order
  std::optional<LeafType> leaf;        // leaf only
  bool required = false;

  bool is_leaf() const { return leaf.has_value(); }

  static TaxonomyNode make_branch(std::string name, std::vector<TaxonomyNode> children);
  static TaxonomyNode make_leaf(std::string name, LeafType type, bool required = false);

  const TaxonomyNode* find_child(std::string_view child_name) const;

  friend bool operator==(const TaxonomyNode&, const TaxonomyNode&) = default;
};

/// A typed tree schema. An extending taxonomy stores the merged tree, so it
/// holds every node of its base.
struct Taxonomy {
  std::string id;
  TaxonomyNode root;
  std::optional<std::string> extends;
  // Ancestor ids, nearest first.
  std::vector<std::string> lineage;

  const TaxonomyNode* find(const Path& path) const;
  const LeafType* leaf_type(const Path& path) const;
  /// Leaf paths, depth first in declaration order.
  std::vector<Path> leaf_paths() const;
  /// True when `other_id` names this taxonomy or one of its ancestors.
  bool descends_from(std::string_view other_id) const;

  friend bool operator==(const Taxonomy&, const Taxonomy&) = default;
};

/// Structural problems with a taxonomy (empty branches, bad names, duplicate
/// siblings, reversed ranges). Empty when well formed.
std::vector<std::string> check_taxonomy(const Taxonomy& taxonomy);

struct TaxonomyAddition {
  Path parent;  // empty for root level
  TaxonomyNode node;
};

/// Returns a new taxonomy `id` holding every node of `base` plus `additions`.
/// Throws Error{path_collision} or Error{unknown_parent}.
Taxonomy extend_taxonomy(const Taxonomy& base, const std::vector<TaxonomyAddition>& additions,
                         std::string id);

// ---------------------------------------------------------------------------
// Test-environment attributes
// ---------------------------------------------------------------------------

inline constexpr std::array<std::string_view, 4> kTestAttributeNames = {
    "safety_hazard_mitigation",
    "test_complexity",
    "test_environment_fidelity",
    "sut_fidelity",
};

inline constexpr std::int64_t kLevelLow = 1;
inline constexpr std::int64_t kLevelMedium = 2;
inline constexpr std::int64_t kLevelHigh = 3;

/// The four ordinal attribute leaves, constrained to 1..3 and required.
std::vector<TaxonomyNode> test_attribute_leaves();

/// Root-level extension of `base` with the four attributes.
Taxonomy with_test_attributes(const Taxonomy& base, std::string id);

struct TestAttributes {
  std::int64_t safety_hazard_mitigation = kLevelLow;
  std::int64_t test_complexity = kLevelLow;
  std::int64_t test_environment_fidelity = kLevelLow;
  std::int64_t sut_fidelity = kLevelLow;

  std::array<std::int64_t, 4> levels() const {
    return {safety_hazard_mitigation, test_complexity, test_environment_fidelity, sut_fidelity};
  }
  friend bool operator==(const TestAttributes&, const TestAttributes&) = default;
};

// ---------------------------------------------------------------------------
// Values and documents
// ---------------------------------------------------------------------------

struct Duration {
  double seconds = 0.0;
  friend bool operator==(const Duration&, const Duration&) = default;
};

struct DataSize {
  std::int64_t bytes = 0;
  friend bool operator==(const DataSize&, const DataSize&) = default;
};

struct TextSet {
  std::set<std::string> items;
  friend bool operator==(const TextSet&, const TextSet&) = default;
};

/// Closed interval [lower, upper].
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ExprNode;

/// A capability value that depends on the bound requirement.
struct Expression {
  std::shared_ptr<const ExprNode> root;
};

bool operator==(const Expression& a, const Expression& b);

using LeafValue = std::variant<bool, std::string, std::int64_t, double, Duration, DataSize,
                               TextSet, Interval, Expression>;

bool is_expression(const LeafValue& value);
/// Short human label for the variant ("real", "interval", ...).
std::string_view value_kind_name(const LeafValue& value);
/// Whether a value variant may sit at a leaf of `kind`.
bool is_compatible(const LeafValue& value, LeafKind kind);
/// Inline rendering used in messages and diagrams.
std::string render_value(const LeafValue& value);

enum class Role { requirement, capability };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view text);

struct OddDocument {
  std::string id;
  std::optional<std::string> name;
  Role role = Role::requirement;
  std::string taxonomy_id;
  std::map<Path, LeafValue> assignments;

  friend bool operator==(const OddDocument&, const OddDocument&) = default;
};

/// Throws Error{unknown_path} when `path` is not assigned.
const LeafValue& get_leaf(const OddDocument& doc, const Path& path);

/// The four attribute levels, when all are assigned as integers.
std::optional<TestAttributes> test_attributes(const OddDocument& doc);

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class ViolationCode {
  taxonomy_mismatch,
  unknown_path,
  not_a_leaf,
  type_mismatch,
  constraint,
  invalid_interval,
  missing_required,
  expression_in_requirement,
};

std::string_view to_string(ViolationCode code);

struct Violation {
  Path path;
  ViolationCode code;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Checks `doc` against `taxonomy`. Violations come back sorted by
/// (path, code); an empty list means the document is valid.
std::vector<Violation> validate_document(const OddDocument& doc, const Taxonomy& taxonomy);

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

class TaxonomyRegistry {
 public:
  /// Registry preloaded with the shipped `odd` and `ext_odd` taxonomies.
  static const TaxonomyRegistry& builtin();

  /// Adds a taxonomy. Re-adding an identical taxonomy is a no-op; a
  /// different taxonomy under an existing id throws Error{duplicate_id}.
  void add(Taxonomy taxonomy);

  const Taxonomy* find(std::string_view id) const;
  const Taxonomy& at(std::string_view id) const;
  std::vector<std::string> ids() const;

  /// The more derived of two taxonomies on one lineage. Throws
  /// Error{incompatible_taxonomies} when neither descends from the other.
  const Taxonomy& common(std::string_view a, std::string_view b) const;

 private:
  std::map<std::string, Taxonomy, std::less<>> taxonomies_;
};

}  // namespace odd
