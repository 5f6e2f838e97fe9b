#include "odd/model.hpp"

#include <algorithm>
#include <set>

#include "odd/error.hpp"
#include "odd/expression.hpp"

namespace odd {

std::string_view to_string(LeafKind kind) {
  switch (kind) {
    case LeafKind::boolean: return "boolean";
    case LeafKind::text: return "text";
    case LeafKind::integer: return "integer";
    case LeafKind::real: return "real";
    case LeafKind::duration: return "duration";
    case LeafKind::data_size: return "data-size";
    case LeafKind::text_set: return "text-set";
  }
  return "text";
}

std::optional<LeafKind> parse_leaf_kind(std::string_view text) {
  for (auto kind : {LeafKind::boolean, LeafKind::text, LeafKind::integer, LeafKind::real,
                    LeafKind::duration, LeafKind::data_size, LeafKind::text_set}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

bool LeafType::is_numeric() const {
  return kind == LeafKind::integer || kind == LeafKind::real || kind == LeafKind::duration ||
         kind == LeafKind::data_size;
}

TaxonomyNode TaxonomyNode::make_branch(std::string name, std::vector<TaxonomyNode> children) {
  TaxonomyNode node;
  node.name = std::move(name);
  node.children = std::move(children);
  return node;
}

TaxonomyNode TaxonomyNode::make_leaf(std::string name, LeafType type, bool required) {
  TaxonomyNode node;
  node.name = std::move(name);
  node.leaf = std::move(type);
  node.required = required;
  return node;
}

const TaxonomyNode* TaxonomyNode::find_child(std::string_view child_name) const {
  for (const auto& child : children) {
    if (child.name == child_name) return &child;
  }
  return nullptr;
}

const TaxonomyNode* Taxonomy::find(const Path& path) const {
  const TaxonomyNode* node = &root;
  for (const auto& segment : path.segments()) {
    if (node->is_leaf()) return nullptr;
    node = node->find_child(segment);
    if (node == nullptr) return nullptr;
  }
  return node;
}

const LeafType* Taxonomy::leaf_type(const Path& path) const {
  const auto* node = find(path);
  return node != nullptr && node->leaf ? &*node->leaf : nullptr;
}

namespace {

void collect_leaves(const TaxonomyNode& node, const Path& at, std::vector<Path>& out) {
  for (const auto& child : node.children) {
    auto path = at.child(child.name);
    if (child.is_leaf()) {
      out.push_back(std::move(path));
    } else {
      collect_leaves(child, path, out);
    }
  }
}

void check_node(const TaxonomyNode& node, const Path& at, std::vector<std::string>& problems) {
  const auto where = at.empty() ? std::string("<root>") : at.str();
  if (node.is_leaf()) {
    if (!node.children.empty()) problems.push_back(where + ": leaf has children");
    const auto& type = *node.leaf;
    if (type.range) {
      if (!type.is_numeric()) problems.push_back(where + ": range on non-numeric leaf");
      if (!(type.range->lower <= type.range->upper)) {
        problems.push_back(where + ": range lower bound exceeds upper bound");
      }
    }
    if (type.ordinal && type.kind != LeafKind::integer) {
      problems.push_back(where + ": ordinal leaves must be integer");
    }
    return;
  }
  if (node.children.empty()) problems.push_back(where + ": branch has no children");
  std::set<std::string_view> seen;
  for (const auto& child : node.children) {
    if (!is_valid_name(child.name)) {
      problems.push_back(where + ": invalid node name '" + child.name + "'");
    }
    if (!seen.insert(child.name).second) {
      problems.push_back(where + ": duplicate child '" + child.name + "'");
    }
    check_node(child, at.child(child.name), problems);
  }
}

TaxonomyNode* find_mutable(TaxonomyNode& root, const Path& path) {
  TaxonomyNode* node = &root;
  for (const auto& segment : path.segments()) {
    auto it = std::find_if(node->children.begin(), node->children.end(),
                           [&](const TaxonomyNode& c) { return c.name == segment; });
    if (it == node->children.end()) return nullptr;
    node = &*it;
  }
  return node;
}

}  // namespace

std::vector<Path> Taxonomy::leaf_paths() const {
  std::vector<Path> out;
  collect_leaves(root, Path{}, out);
  return out;
}

bool Taxonomy::descends_from(std::string_view other_id) const {
  return id == other_id || std::find(lineage.begin(), lineage.end(), other_id) != lineage.end();
}

std::vector<std::string> check_taxonomy(const Taxonomy& taxonomy) {
  std::vector<std::string> problems;
  if (taxonomy.root.is_leaf()) {
    problems.emplace_back("<root>: root must be a branch");
    return problems;
  }
  check_node(taxonomy.root, Path{}, problems);
  return problems;
}

Taxonomy extend_taxonomy(const Taxonomy& base, const std::vector<TaxonomyAddition>& additions,
                         std::string id) {
  Taxonomy out;
  out.id = std::move(id);
  out.root = base.root;
  out.extends = base.id;
  out.lineage.push_back(base.id);
  out.lineage.insert(out.lineage.end(), base.lineage.begin(), base.lineage.end());

  for (const auto& addition : additions) {
    auto* parent = find_mutable(out.root, addition.parent);
    if (parent == nullptr || parent->is_leaf()) {
      throw Error(ErrorCode::unknown_parent,
                  "no branch at '" + addition.parent.str() + "' to extend");
    }
    const auto target = addition.parent.child(addition.node.name);
    if (parent->find_child(addition.node.name) != nullptr) {
      throw Error(ErrorCode::path_collision, "'" + target.str() + "' already exists");
    }
    if (!is_valid_name(addition.node.name)) {
      throw Error(ErrorCode::constraint_violation,
                  "invalid node name '" + addition.node.name + "'");
    }
    std::vector<std::string> problems;
    check_node(addition.node, target, problems);
    if (!problems.empty()) throw Error(ErrorCode::constraint_violation, problems.front());
    parent->children.push_back(addition.node);
  }
  return out;
}

std::vector<TaxonomyNode> test_attribute_leaves() {
  std::vector<TaxonomyNode> leaves;
  for (auto name : kTestAttributeNames) {
    LeafType type;
    type.kind = LeafKind::integer;
    type.range = Range{static_cast<double>(kLevelLow), static_cast<double>(kLevelHigh)};
    type.ordinal = true;
    leaves.push_back(TaxonomyNode::make_leaf(std::string(name), type, true));
  }
  return leaves;
}

Taxonomy with_test_attributes(const Taxonomy& base, std::string id) {
  std::vector<TaxonomyAddition> additions;
  for (auto& leaf : test_attribute_leaves()) additions.push_back({Path{}, std::move(leaf)});
  return extend_taxonomy(base, additions, std::move(id));
}

// ---------------------------------------------------------------------------

bool is_expression(const LeafValue& value) {
  return std::holds_alternative<Expression>(value);
}

std::string_view value_kind_name(const LeafValue& value) {
  struct Visitor {
    std::string_view operator()(bool) const { return "boolean"; }
    std::string_view operator()(const std::string&) const { return "text"; }
    std::string_view operator()(std::int64_t) const { return "integer"; }
    std::string_view operator()(double) const { return "real"; }
    std::string_view operator()(const Duration&) const { return "duration"; }
    std::string_view operator()(const DataSize&) const { return "data-size"; }
    std::string_view operator()(const TextSet&) const { return "text-set"; }
    std::string_view operator()(const Interval&) const { return "interval"; }
    std::string_view operator()(const Expression&) const { return "expression"; }
  };
  return std::visit(Visitor{}, value);
}

bool is_compatible(const LeafValue& value, LeafKind kind) {
  if (is_expression(value)) return true;
  switch (kind) {
    case LeafKind::boolean: return std::holds_alternative<bool>(value);
    case LeafKind::text:
      return std::holds_alternative<std::string>(value) || std::holds_alternative<TextSet>(value);
    case LeafKind::integer:
      return std::holds_alternative<std::int64_t>(value) || std::holds_alternative<Interval>(value);
    case LeafKind::real:
      return std::holds_alternative<double>(value) || std::holds_alternative<Interval>(value);
    case LeafKind::duration: return std::holds_alternative<Duration>(value);
    case LeafKind::data_size: return std::holds_alternative<DataSize>(value);
    case LeafKind::text_set: return std::holds_alternative<TextSet>(value);
  }
  return false;
}

std::string render_value(const LeafValue& value) {
  struct Visitor {
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const Duration& v) const { return format_real(v.seconds) + " s"; }
    std::string operator()(const DataSize& v) const { return std::to_string(v.bytes) + " B"; }
    std::string operator()(const TextSet& v) const {
      std::string out = "{";
      for (const auto& item : v.items) {
        if (out.size() > 1) out += ", ";
        out += item;
      }
      return out + "}";
    }
    std::string operator()(const Interval& v) const {
      return "[" + format_real(v.lower) + ", " + format_real(v.upper) + "]";
    }
    std::string operator()(const Expression& v) const { return print(v); }
  };
  return std::visit(Visitor{}, value);
}

std::string_view to_string(Role role) {
  return role == Role::requirement ? "requirement" : "capability";
}

std::optional<Role> parse_role(std::string_view text) {
  if (text == "requirement") return Role::requirement;
  if (text == "capability") return Role::capability;
  return std::nullopt;
}

const LeafValue& get_leaf(const OddDocument& doc, const Path& path) {
  auto it = doc.assignments.find(path);
  if (it == doc.assignments.end()) {
    throw Error(ErrorCode::unknown_path, "'" + path.str() + "' is not assigned in '" + doc.id + "'");
  }
  return it->second;
}

std::optional<TestAttributes> test_attributes(const OddDocument& doc) {
  std::array<std::int64_t, 4> levels{};
  for (std::size_t i = 0; i < kTestAttributeNames.size(); ++i) {
    auto it = doc.assignments.find(Path({std::string(kTestAttributeNames[i])}));
    if (it == doc.assignments.end()) return std::nullopt;
    const auto* level = std::get_if<std::int64_t>(&it->second);
    if (level == nullptr) return std::nullopt;
    levels[i] = *level;
  }
  return TestAttributes{levels[0], levels[1], levels[2], levels[3]};
}

// ---------------------------------------------------------------------------

void TaxonomyRegistry::add(Taxonomy taxonomy) {
  auto it = taxonomies_.find(taxonomy.id);
  if (it != taxonomies_.end()) {
    if (it->second == taxonomy) return;
    throw Error(ErrorCode::duplicate_id,
                "a different taxonomy '" + taxonomy.id + "' is already registered");
  }
  auto id = taxonomy.id;
  taxonomies_.emplace(std::move(id), std::move(taxonomy));
}

const Taxonomy* TaxonomyRegistry::find(std::string_view id) const {
  auto it = taxonomies_.find(id);
  return it == taxonomies_.end() ? nullptr : &it->second;
}

const Taxonomy& TaxonomyRegistry::at(std::string_view id) const {
  if (const auto* taxonomy = find(id)) return *taxonomy;
  throw Error(ErrorCode::unknown_taxonomy, "unknown taxonomy '" + std::string(id) + "'");
}

std::vector<std::string> TaxonomyRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : taxonomies_) out.push_back(id);
  return out;
}

const Taxonomy& TaxonomyRegistry::common(std::string_view a, std::string_view b) const {
  const auto& ta = at(a);
  const auto& tb = at(b);
  if (ta.descends_from(tb.id)) return ta;
  if (tb.descends_from(ta.id)) return tb;
  throw Error(ErrorCode::incompatible_taxonomies,
              "taxonomies '" + ta.id + "' and '" + tb.id + "' do not share a lineage");
}

}  // namespace odd
