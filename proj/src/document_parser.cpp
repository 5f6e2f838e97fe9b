// Taxonomy and document files: a YAML block subset (JSON is accepted as its
// flow form). yaml-cpp supplies the node tree and source marks; typing is
// driven by the taxonomy.

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "odd/error.hpp"
#include "odd/expression.hpp"
#include "odd/parser.hpp"

namespace odd {

std::string format_diagnostic(const ParseDiagnostic& diagnostic) {
  return std::to_string(diagnostic.location.line) + ":" +
         std::to_string(diagnostic.location.column) + ": " +
         (diagnostic.severity == Severity::error ? "error: " : "warning: ") + diagnostic.message;
}

namespace {

SourceLocation location_of(const YAML::Mark& mark) {
  if (mark.line < 0) return {};
  return {mark.line + 1, mark.column + 1};
}

SourceLocation location_of(const YAML::Node& node) { return location_of(node.Mark()); }

bool is_doc_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

template <class Number>
std::optional<Number> parse_number(std::string_view text) {
  if (text.starts_with('+')) text.remove_prefix(1);
  Number value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  if constexpr (std::is_floating_point_v<Number>) {
    if (!std::isfinite(value)) return std::nullopt;
  }
  return value;
}

// Splits "12.5 min" into a finite number and a unit suffix.
std::optional<std::pair<double, std::string_view>> split_quantity(std::string_view text) {
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  std::size_t end = 0;
  while (end < text.size() && (std::isdigit(static_cast<unsigned char>(text[end])) ||
                               text[end] == '.' || text[end] == '-' || text[end] == '+' ||
                               ((text[end] == 'e' || text[end] == 'E') && end > 0 &&
                                end + 1 < text.size() &&
                                (std::isdigit(static_cast<unsigned char>(text[end + 1])) ||
                                 text[end + 1] == '-' || text[end + 1] == '+')))) {
    ++end;
  }
  auto number = parse_number<double>(text.substr(0, end));
  if (!number) return std::nullopt;
  auto unit = text.substr(end);
  while (!unit.empty() && unit.front() == ' ') unit.remove_prefix(1);
  return std::pair{*number, unit};
}

/// Collects diagnostics; parsing continues past recoverable problems.
class Diagnostics {
 public:
  void error(SourceLocation at, std::string message) {
    list_.push_back({Severity::error, at, std::move(message)});
  }
  void warning(SourceLocation at, std::string message) {
    list_.push_back({Severity::warning, at, std::move(message)});
  }
  bool has_errors() const {
    for (const auto& d : list_) {
      if (d.severity == Severity::error) return true;
    }
    return false;
  }
  std::vector<ParseDiagnostic> take() { return std::move(list_); }

 private:
  std::vector<ParseDiagnostic> list_;
};

struct Entry {
  std::string key;
  YAML::Node key_node;
  YAML::Node value;
};

// Mapping entries in source order; duplicate keys and non-scalar keys are
// reported and skipped.
std::vector<Entry> entries_of(const YAML::Node& map, Diagnostics& diags) {
  std::vector<Entry> out;
  std::set<std::string> seen;
  for (auto it = map.begin(); it != map.end(); ++it) {
    if (!it->first.IsScalar()) {
      diags.error(location_of(it->first), "mapping keys must be scalars");
      continue;
    }
    auto key = it->first.Scalar();
    if (!seen.insert(key).second) {
      diags.error(location_of(it->first), "duplicate key '" + key + "'");
      continue;
    }
    out.push_back({std::move(key), it->first, it->second});
  }
  return out;
}

std::optional<YAML::Node> load(std::string_view source, Diagnostics& diags) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(source));
  } catch (const YAML::Exception& e) {
    diags.error(location_of(e.mark), e.msg);
    return std::nullopt;
  }
  if (!root.IsDefined() || root.IsNull()) {
    diags.error({}, "empty input");
    return std::nullopt;
  }
  if (!root.IsMap()) {
    diags.error(location_of(root), "expected a mapping at top level");
    return std::nullopt;
  }
  return root;
}

std::optional<std::string> scalar_field(const Entry& entry, Diagnostics& diags) {
  if (!entry.value.IsScalar()) {
    diags.error(location_of(entry.value), "'" + entry.key + "' must be a scalar");
    return std::nullopt;
  }
  return entry.value.Scalar();
}

std::optional<bool> parse_bool(const YAML::Node& node) {
  if (!node.IsScalar()) return std::nullopt;
  if (node.Scalar() == "true") return true;
  if (node.Scalar() == "false") return false;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Taxonomies
// ---------------------------------------------------------------------------

std::optional<TaxonomyNode> parse_taxonomy_node(const std::string& name, const YAML::Node& value,
                                                Diagnostics& diags);

std::vector<TaxonomyNode> parse_children(const YAML::Node& map, Diagnostics& diags) {
  std::vector<TaxonomyNode> children;
  for (const auto& entry : entries_of(map, diags)) {
    if (!is_valid_name(entry.key)) {
      diags.error(location_of(entry.key_node), "invalid node name '" + entry.key + "'");
      continue;
    }
    if (auto node = parse_taxonomy_node(entry.key, entry.value, diags)) {
      children.push_back(std::move(*node));
    }
  }
  return children;
}

std::optional<TaxonomyNode> parse_leaf(const std::string& name, const YAML::Node& value,
                                       Diagnostics& diags) {
  LeafType type;
  bool required = false;
  for (const auto& entry : entries_of(value, diags)) {
    const auto at = location_of(entry.value);
    if (entry.key == "type") {
      auto kind = entry.value.IsScalar() ? parse_leaf_kind(entry.value.Scalar()) : std::nullopt;
      if (!kind) {
        diags.error(at, "unknown leaf type; expected boolean, text, integer, real, duration, "
                        "data-size or text-set");
        return std::nullopt;
      }
      type.kind = *kind;
    } else if (entry.key == "unit") {
      if (auto unit = scalar_field(entry, diags)) type.unit = *unit;
    } else if (entry.key == "range") {
      if (!entry.value.IsSequence() || entry.value.size() != 2 ||
          !entry.value[0].IsScalar() || !entry.value[1].IsScalar()) {
        diags.error(at, "range must be a two-element sequence [lower, upper]");
        continue;
      }
      auto lower = parse_number<double>(entry.value[0].Scalar());
      auto upper = parse_number<double>(entry.value[1].Scalar());
      if (!lower || !upper) {
        diags.error(at, "range bounds must be finite numbers");
        continue;
      }
      if (*lower > *upper) {
        diags.error(at, "range lower bound exceeds upper bound");
        continue;
      }
      type.range = Range{*lower, *upper};
    } else if (entry.key == "required" || entry.key == "ordinal") {
      auto flag = parse_bool(entry.value);
      if (!flag) {
        diags.error(at, "'" + entry.key + "' must be true or false");
        continue;
      }
      (entry.key == "required" ? required : type.ordinal) = *flag;
    } else {
      diags.error(location_of(entry.key_node), "unknown leaf attribute '" + entry.key + "'");
    }
  }
  if (type.range && !type.is_numeric()) {
    diags.error(location_of(value), "range is only allowed on numeric leaves");
  }
  if (type.ordinal && type.kind != LeafKind::integer) {
    diags.error(location_of(value), "ordinal leaves must be integer");
  }
  return TaxonomyNode::make_leaf(name, std::move(type), required);
}

std::optional<TaxonomyNode> parse_taxonomy_node(const std::string& name, const YAML::Node& value,
                                                Diagnostics& diags) {
  if (!value.IsMap()) {
    diags.error(location_of(value),
                "'" + name + "' must be a mapping (a branch, or a leaf with 'type')");
    return std::nullopt;
  }
  if (value["type"] && value["type"].IsScalar()) return parse_leaf(name, value, diags);
  if (value.size() == 0) {
    diags.error(location_of(value), "branch '" + name + "' has no children");
    return std::nullopt;
  }
  return TaxonomyNode::make_branch(name, parse_children(value, diags));
}

// ---------------------------------------------------------------------------
// Documents
// ---------------------------------------------------------------------------

class DocumentReader {
 public:
  DocumentReader(const Taxonomy& taxonomy, Diagnostics& diags)
      : taxonomy_(taxonomy), diags_(diags) {}

  void read(const YAML::Node& map, const Path& prefix) {
    for (const auto& entry : entries_of(map, diags_)) {
      auto relative = Path::parse(entry.key);
      if (!relative) {
        diags_.error(location_of(entry.key_node), "malformed path '" + entry.key + "'");
        continue;
      }
      Path path = prefix;
      for (const auto& segment : relative->segments()) path = path.child(segment);
      const auto* node = taxonomy_.find(path);
      if (node == nullptr) {
        diags_.error(location_of(entry.key_node),
                     "unknown path '" + path.str() + "' in taxonomy '" + taxonomy_.id + "'");
        continue;
      }
      if (!node->is_leaf()) {
        if (!entry.value.IsMap()) {
          diags_.error(location_of(entry.value), "'" + path.str() + "' is a branch; expected a mapping");
          continue;
        }
        read(entry.value, path);
        continue;
      }
      locations[path] = location_of(entry.key_node);
      if (assignments.contains(path)) {
        diags_.error(location_of(entry.key_node), "'" + path.str() + "' is assigned twice");
        continue;
      }
      if (auto value = read_value(entry.value, *node->leaf, path)) {
        assignments.emplace(path, std::move(*value));
      }
    }
  }

  std::map<Path, LeafValue> assignments;
  std::map<Path, SourceLocation> locations;

 private:
  std::optional<LeafValue> read_value(const YAML::Node& node, const LeafType& type,
                                      const Path& path) {
    const auto at = location_of(node);
    const auto kind = std::string(to_string(type.kind));
    auto mismatch = [&](std::string what) -> std::optional<LeafValue> {
      diags_.error(at, "type mismatch at '" + path.str() + "' (" + kind + " leaf): " + what);
      return std::nullopt;
    };

    if (node.IsMap()) {
      if (node.size() != 1 || !node["expr"] || !node["expr"].IsScalar()) {
        return mismatch("mappings at leaves must be {expr: \"...\"}");
      }
      auto parsed = parse_expression(node["expr"].Scalar());
      if (!parsed) {
        for (const auto& d : parsed.diagnostics) {
          diags_.error(location_of(node["expr"]),
                       "in expression at " + std::to_string(d.location.line) + ":" +
                           std::to_string(d.location.column) + ": " + d.message);
        }
        return std::nullopt;
      }
      return LeafValue{std::move(*parsed.value)};
    }

    if (node.IsSequence()) {
      if (type.kind == LeafKind::integer || type.kind == LeafKind::real) {
        if (node.size() != 2 || !node[0].IsScalar() || !node[1].IsScalar()) {
          return mismatch("intervals are written [lower, upper]");
        }
        auto lower = parse_number<double>(node[0].Scalar());
        auto upper = parse_number<double>(node[1].Scalar());
        if (!lower || !upper) return mismatch("interval bounds must be finite numbers");
        return LeafValue{Interval{*lower, *upper}};
      }
      if (type.kind == LeafKind::text || type.kind == LeafKind::text_set) {
        TextSet set;
        for (const auto& item : node) {
          if (!item.IsScalar()) return mismatch("set members must be scalars");
          if (!set.items.insert(item.Scalar()).second) {
            diags_.warning(location_of(item), "duplicate set member '" + item.Scalar() + "'");
          }
        }
        return LeafValue{std::move(set)};
      }
      return mismatch("sequences are not allowed here");
    }

    if (!node.IsScalar()) return mismatch("missing value");
    const auto& text = node.Scalar();
    switch (type.kind) {
      case LeafKind::boolean:
        if (auto v = parse_bool(node)) return LeafValue{*v};
        return mismatch("expected true or false, got '" + text + "'");
      case LeafKind::text: return LeafValue{text};
      case LeafKind::integer:
        if (auto v = parse_number<std::int64_t>(text)) return LeafValue{*v};
        return mismatch("expected an integer, got '" + text + "'");
      case LeafKind::real:
        if (auto v = parse_number<double>(text)) return LeafValue{*v};
        return mismatch("expected a number, got '" + text + "'");
      case LeafKind::duration:
        if (auto v = parse_duration_text(text)) return LeafValue{Duration{*v}};
        return mismatch("expected a duration such as 30, 30s or 5min, got '" + text + "'");
      case LeafKind::data_size:
        if (auto v = parse_data_size_text(text)) return LeafValue{DataSize{*v}};
        return mismatch("expected a data size such as 1024 or 4KiB, got '" + text + "'");
      case LeafKind::text_set: return mismatch("expected a sequence of texts");
    }
    return std::nullopt;
  }

  const Taxonomy& taxonomy_;
  Diagnostics& diags_;
};

}  // namespace

bool looks_like_taxonomy(std::string_view source) {
  try {
    const auto root = YAML::Load(std::string(source));
    return root.IsMap() && root["nodes"];
  } catch (const YAML::Exception&) {
    return false;
  }
}

std::optional<double> parse_duration_text(std::string_view text) {
  auto quantity = split_quantity(text);
  if (!quantity) return std::nullopt;
  static const std::pair<std::string_view, double> units[] = {
      {"", 1.0}, {"s", 1.0}, {"ms", 1e-3}, {"min", 60.0}, {"h", 3600.0}, {"d", 86400.0},
  };
  for (const auto& [unit, scale] : units) {
    if (quantity->second == unit) return quantity->first * scale;
  }
  return std::nullopt;
}

std::optional<std::int64_t> parse_data_size_text(std::string_view text) {
  if (auto plain = parse_number<std::int64_t>(text)) return plain;
  auto quantity = split_quantity(text);
  if (!quantity) return std::nullopt;
  static const std::pair<std::string_view, double> units[] = {
      {"B", 1.0},       {"kB", 1e3},        {"KB", 1e3},         {"MB", 1e6},
      {"GB", 1e9},      {"TB", 1e12},       {"KiB", 1024.0},     {"MiB", 1048576.0},
      {"GiB", 1073741824.0}, {"TiB", 1099511627776.0},
  };
  for (const auto& [unit, scale] : units) {
    if (quantity->second != unit) continue;
    const double bytes = quantity->first * scale;
    if (bytes != std::floor(bytes) || std::abs(bytes) > 9.0e18) return std::nullopt;
    return static_cast<std::int64_t>(bytes);
  }
  return std::nullopt;
}

ParseResult<Taxonomy> parse_taxonomy(std::string_view source, const TaxonomyRegistry& registry) {
  Diagnostics diags;
  ParseResult<Taxonomy> result;
  auto root = load(source, diags);
  if (!root) {
    result.diagnostics = diags.take();
    return result;
  }

  std::optional<std::string> id;
  std::optional<std::string> extends;
  std::optional<Entry> nodes;
  std::vector<std::string> lineage;
  SourceLocation extends_at;
  SourceLocation lineage_at;
  for (auto& entry : entries_of(*root, diags)) {
    if (entry.key == "taxonomy") {
      id = scalar_field(entry, diags);
      if (id && !is_valid_name(*id)) {
        diags.error(location_of(entry.value), "taxonomy id must match [a-z][a-z0-9_]*");
      }
    } else if (entry.key == "extends") {
      extends = scalar_field(entry, diags);
      extends_at = location_of(entry.value);
    } else if (entry.key == "lineage") {
      // Resolved form: a standalone tree that records its ancestors.
      lineage_at = location_of(entry.value);
      if (!entry.value.IsSequence()) {
        diags.error(lineage_at, "'lineage' must be a sequence of taxonomy ids");
        continue;
      }
      for (const auto& item : entry.value) {
        if (!item.IsScalar() || !is_valid_name(item.Scalar())) {
          diags.error(location_of(item), "invalid taxonomy id in lineage");
          continue;
        }
        lineage.push_back(item.Scalar());
      }
    } else if (entry.key == "nodes") {
      nodes = std::move(entry);
    } else {
      diags.error(location_of(entry.key_node), "unknown field '" + entry.key + "'");
    }
  }
  if (!id) diags.error(location_of(*root), "missing 'taxonomy' id");
  if (!nodes) diags.error(location_of(*root), "missing 'nodes'");
  if (nodes && !nodes->value.IsMap() && !(extends && nodes->value.IsNull())) {
    diags.error(location_of(nodes->value), "'nodes' must be a mapping");
    nodes.reset();
  }

  if (extends && !lineage.empty()) {
    diags.error(lineage_at, "'lineage' and 'extends' are mutually exclusive");
  }
  const Taxonomy* base = nullptr;
  if (extends) {
    base = registry.find(*extends);
    if (base == nullptr) diags.error(extends_at, "unresolved base taxonomy '" + *extends + "'");
  }
  if (diags.has_errors() || !id || !nodes) {
    result.diagnostics = diags.take();
    return result;
  }

  Taxonomy taxonomy;
  if (base != nullptr) {
    std::vector<TaxonomyAddition> additions;
    std::vector<SourceLocation> addition_at;
    if (nodes->value.IsMap()) {
      for (const auto& entry : entries_of(nodes->value, diags)) {
        auto path = Path::parse(entry.key);
        if (!path) {
          diags.error(location_of(entry.key_node), "malformed path '" + entry.key + "'");
          continue;
        }
        if (auto node = parse_taxonomy_node(path->leaf_name(), entry.value, diags)) {
          additions.push_back({path->parent(), std::move(*node)});
          addition_at.push_back(location_of(entry.key_node));
        }
      }
    }
    if (!diags.has_errors()) {
      // Apply one at a time so a failure points at its own entry.
      taxonomy = *base;
      taxonomy.id = *id;
      taxonomy.extends = base->id;
      taxonomy.lineage = {base->id};
      taxonomy.lineage.insert(taxonomy.lineage.end(), base->lineage.begin(), base->lineage.end());
      for (std::size_t i = 0; i < additions.size(); ++i) {
        try {
          auto next = extend_taxonomy(taxonomy, {additions[i]}, *id);
          taxonomy.root = std::move(next.root);
        } catch (const Error& e) {
          diags.error(addition_at[i], e.what());
        }
      }
    }
  } else {
    taxonomy.id = *id;
    taxonomy.root = TaxonomyNode::make_branch("", parse_children(nodes->value, diags));
    if (!lineage.empty()) {
      taxonomy.extends = lineage.front();
      taxonomy.lineage = lineage;
      // Known ancestors must survive unchanged in the resolved tree.
      for (const auto& ancestor_id : lineage) {
        const auto* ancestor = registry.find(ancestor_id);
        if (ancestor == nullptr) continue;
        for (const auto& path : ancestor->leaf_paths()) {
          const auto* type = taxonomy.leaf_type(path);
          if (type == nullptr || !(*type == *ancestor->leaf_type(path))) {
            diags.error(lineage_at, "'" + path.str() + "' of ancestor '" + ancestor_id +
                                        "' is missing or retyped");
          }
        }
      }
    }
  }

  if (!diags.has_errors()) {
    for (const auto& problem : check_taxonomy(taxonomy)) diags.error(location_of(nodes->value), problem);
  }
  if (!diags.has_errors()) result.value = std::move(taxonomy);
  result.diagnostics = diags.take();
  return result;
}

ParseResult<OddDocument> parse_document(std::string_view source, const TaxonomyRegistry& registry,
                                        std::string_view default_id) {
  Diagnostics diags;
  ParseResult<OddDocument> result;
  auto root = load(source, diags);
  if (!root) {
    result.diagnostics = diags.take();
    return result;
  }

  OddDocument doc;
  std::optional<std::string> id;
  std::optional<Role> role;
  std::optional<std::string> taxonomy_id;
  std::optional<Entry> assignments;
  SourceLocation taxonomy_at;
  for (auto& entry : entries_of(*root, diags)) {
    const auto at = location_of(entry.value);
    if (entry.key == "id") {
      id = scalar_field(entry, diags);
      if (id && !is_doc_id(*id)) diags.error(at, "id must match [A-Za-z0-9_.-]+");
    } else if (entry.key == "name") {
      doc.name = scalar_field(entry, diags);
    } else if (entry.key == "role") {
      if (auto text = scalar_field(entry, diags)) {
        role = parse_role(*text);
        if (!role) diags.error(at, "role must be 'requirement' or 'capability'");
      }
    } else if (entry.key == "taxonomy") {
      taxonomy_id = scalar_field(entry, diags);
      taxonomy_at = at;
    } else if (entry.key == "assignments") {
      assignments = std::move(entry);
    } else {
      diags.error(location_of(entry.key_node), "unknown field '" + entry.key + "'");
    }
  }

  if (!id && !default_id.empty()) id = std::string(default_id);
  if (!id) diags.error(location_of(*root), "missing 'id'");
  if (!role && !diags.has_errors()) diags.error(location_of(*root), "missing 'role'");
  if (!taxonomy_id) diags.error(location_of(*root), "missing 'taxonomy'");

  const Taxonomy* taxonomy = nullptr;
  if (taxonomy_id) {
    taxonomy = registry.find(*taxonomy_id);
    if (taxonomy == nullptr) diags.error(taxonomy_at, "unknown taxonomy '" + *taxonomy_id + "'");
  }
  if (assignments && !assignments->value.IsMap() && !assignments->value.IsNull()) {
    diags.error(location_of(assignments->value), "'assignments' must be a mapping");
    assignments.reset();
  }
  if (diags.has_errors() || taxonomy == nullptr || !role || !id) {
    result.diagnostics = diags.take();
    return result;
  }

  doc.id = *id;
  doc.role = *role;
  doc.taxonomy_id = *taxonomy_id;
  DocumentReader reader(*taxonomy, diags);
  if (assignments && assignments->value.IsMap()) reader.read(assignments->value, Path{});
  doc.assignments = std::move(reader.assignments);

  if (!diags.has_errors()) {
    const auto fallback = assignments ? location_of(assignments->key_node) : location_of(*root);
    for (const auto& violation : validate_document(doc, *taxonomy)) {
      auto it = reader.locations.find(violation.path);
      const auto at = it != reader.locations.end() ? it->second : fallback;
      const auto where = violation.path.empty() ? std::string("document") : violation.path.str();
      diags.error(at, where + ": " + std::string(to_string(violation.code)) + ": " +
                          violation.message);
    }
  }
  if (!diags.has_errors()) result.value = std::move(doc);
  result.diagnostics = diags.take();
  return result;
}

}  // namespace odd
