#include "odd/exporters.hpp"

#include <cstdio>
#include <map>

#include "json.hpp"
#include "odd/expression.hpp"

namespace odd {

using Tree = nlohmann::ordered_json;

std::optional<TextFormat> parse_text_format(std::string_view text) {
  if (text == "yaml" || text == "yml") return TextFormat::yaml;
  if (text == "json") return TextFormat::json;
  return std::nullopt;
}

namespace {

// ---------------------------------------------------------------------------
// YAML emission over the shared tree
// ---------------------------------------------------------------------------

bool is_plain_safe(const std::string& text) {
  if (text.empty()) return false;
  const char first = text.front();
  if (!((first >= 'a' && first <= 'z') || (first >= 'A' && first <= 'Z') || first == '_')) {
    return false;
  }
  if (text.back() == ' ') return false;
  for (char c : text) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '.' || c == '/' || c == '-' || c == ' ';
    if (!ok) return false;
  }
  std::string lower;
  for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  static const char* reserved[] = {"true", "false", "null", "yes", "no", "on", "off", "y", "n"};
  for (const char* word : reserved) {
    if (lower == word) return false;
  }
  return true;
}

std::string double_quoted(const std::string& text) {
  std::string out = "\"";
  for (unsigned char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20) {
          char buffer[8];
          std::snprintf(buffer, sizeof(buffer), "\\u%04x", c);
          out += buffer;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

std::string yaml_text(const std::string& text) {
  return is_plain_safe(text) ? text : double_quoted(text);
}

bool is_inline(const Tree& node) {
  if (node.is_object()) return node.empty();
  if (node.is_array()) {
    return std::all_of(node.begin(), node.end(), [](const Tree& item) { return item.is_primitive(); });
  }
  return true;
}

std::string yaml_inline(const Tree& node) {
  switch (node.type()) {
    case Tree::value_t::null: return "null";
    case Tree::value_t::boolean: return node.get<bool>() ? "true" : "false";
    case Tree::value_t::number_integer: return std::to_string(node.get<std::int64_t>());
    case Tree::value_t::number_unsigned: return std::to_string(node.get<std::uint64_t>());
    case Tree::value_t::number_float: return format_real(node.get<double>());
    case Tree::value_t::string: return yaml_text(node.get<std::string>());
    case Tree::value_t::object: return "{}";
    case Tree::value_t::array: {
      std::string out = "[";
      for (std::size_t i = 0; i < node.size(); ++i) {
        if (i > 0) out += ", ";
        out += yaml_inline(node[i]);
      }
      return out + "]";
    }
    default: return "null";
  }
}

void emit_yaml(const Tree& node, int indent, std::string& out);

void emit_entry(const std::string& key, const Tree& value, int indent, std::string& out,
                bool first_in_item = false) {
  if (!first_in_item) out.append(static_cast<std::size_t>(indent), ' ');
  out += yaml_text(key);
  out += ':';
  if (is_inline(value)) {
    out += ' ';
    out += yaml_inline(value);
    out += '\n';
  } else {
    out += '\n';
    emit_yaml(value, indent + 2, out);
  }
}

void emit_yaml(const Tree& node, int indent, std::string& out) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) emit_entry(it.key(), it.value(), indent, out);
    return;
  }
  // Block sequence of non-scalar items.
  for (const auto& item : node) {
    out.append(static_cast<std::size_t>(indent), ' ');
    out += "- ";
    if (item.is_object() && !item.empty()) {
      bool first = true;
      for (auto it = item.begin(); it != item.end(); ++it) {
        emit_entry(it.key(), it.value(), indent + 2, out, first);
        first = false;
      }
    } else if (is_inline(item)) {
      out += yaml_inline(item);
      out += '\n';
    } else {
      out += '\n';
      emit_yaml(item, indent + 2, out);
    }
  }
}

std::string render(const Tree& tree, TextFormat format) {
  if (format == TextFormat::json) return tree.dump(2) + "\n";
  std::string out;
  emit_yaml(tree, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Data layout
// ---------------------------------------------------------------------------

Tree value_tree(const LeafValue& value) {
  struct Visitor {
    Tree operator()(bool v) const { return v; }
    Tree operator()(const std::string& v) const { return v; }
    Tree operator()(std::int64_t v) const { return v; }
    Tree operator()(double v) const { return v; }
    Tree operator()(const Duration& v) const { return v.seconds; }
    Tree operator()(const DataSize& v) const { return v.bytes; }
    Tree operator()(const TextSet& v) const {
      Tree out = Tree::array();
      for (const auto& item : v.items) out.push_back(item);
      return out;
    }
    Tree operator()(const Interval& v) const { return Tree::array({v.lower, v.upper}); }
    Tree operator()(const Expression& v) const {
      Tree out = Tree::object();
      out["expr"] = print(v);
      return out;
    }
  };
  return std::visit(Visitor{}, value);
}

Tree assignments_tree(const std::map<Path, LeafValue>& assignments) {
  Tree root = Tree::object();
  // Sorted paths give sorted keys at every nesting level.
  for (const auto& [path, value] : assignments) {
    Tree* node = &root;
    const auto segments = path.segments();
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
      if (!node->contains(segments[i])) (*node)[segments[i]] = Tree::object();
      node = &(*node)[segments[i]];
    }
    (*node)[segments.back()] = value_tree(value);
  }
  return root;
}

Tree leaf_type_tree(const TaxonomyNode& node) {
  const auto& type = *node.leaf;
  Tree out = Tree::object();
  if (type.ordinal) out["ordinal"] = true;
  if (type.range) out["range"] = Tree::array({type.range->lower, type.range->upper});
  if (node.required) out["required"] = true;
  out["type"] = std::string(to_string(type.kind));
  if (type.unit) out["unit"] = *type.unit;
  return out;
}

Tree children_tree(const TaxonomyNode& branch) {
  Tree out = Tree::object();
  for (const auto& child : branch.children) {
    out[child.name] = child.is_leaf() ? leaf_type_tree(child) : children_tree(child);
  }
  return out;
}

Tree verdict_tree(const ComparisonVerdict& verdict, bool with_ids) {
  Tree out = Tree::object();
  if (with_ids) out["capability"] = verdict.capability_id;
  Tree leaves = Tree::array();
  for (const auto& leaf : verdict.leaf_verdicts) {
    Tree item = Tree::object();
    item["capability"] = leaf.capability ? value_tree(*leaf.capability) : Tree();
    item["message"] = leaf.message;
    item["pass"] = leaf.pass;
    item["path"] = leaf.path.str();
    item["requirement"] = value_tree(leaf.requirement);
    item["rule"] = std::string(to_string(leaf.rule));
    leaves.push_back(std::move(item));
  }
  out["leaves"] = std::move(leaves);
  if (with_ids) out["requirement"] = verdict.requirement_id;
  Tree trace = Tree::array();
  for (const auto& entry : verdict.trace) {
    Tree item = Tree::object();
    item["expression"] = entry.expression;
    item["path"] = entry.path.str();
    item["value"] = value_tree(entry.value);
    trace.push_back(std::move(item));
  }
  out["trace"] = std::move(trace);
  out["within"] = verdict.within;
  return out;
}

}  // namespace

std::string to_canonical_text(const Taxonomy& taxonomy, TextFormat format) {
  Tree out = Tree::object();
  if (!taxonomy.lineage.empty()) {
    Tree lineage = Tree::array();
    for (const auto& id : taxonomy.lineage) lineage.push_back(id);
    out["lineage"] = std::move(lineage);
  }
  // Node order is declaration order: it fixes traversal order.
  out["nodes"] = children_tree(taxonomy.root);
  out["taxonomy"] = taxonomy.id;
  return render(out, format);
}

std::string to_canonical_text(const OddDocument& document, TextFormat format) {
  Tree out = Tree::object();
  out["assignments"] = assignments_tree(document.assignments);
  out["id"] = document.id;
  if (document.name) out["name"] = *document.name;
  out["role"] = std::string(to_string(document.role));
  out["taxonomy"] = document.taxonomy_id;
  return render(out, format);
}

std::string to_canonical_text(const ComparisonVerdict& verdict, TextFormat format) {
  return render(verdict_tree(verdict, true), format);
}

std::string to_canonical_text(const AllocationReport& report, TextFormat format) {
  Tree out = Tree::object();
  Tree feasible = Tree::object();
  for (const auto& [test_case, envs] : report.feasible) {
    Tree list = Tree::array();
    for (const auto& env : envs) list.push_back(env);
    feasible[test_case] = std::move(list);
  }
  out["feasible"] = std::move(feasible);

  Tree matrix = Tree::object();
  for (const auto& [key, verdict] : report.matrix) {
    const auto& [test_case, env] = key;
    if (!matrix.contains(test_case)) matrix[test_case] = Tree::object();
    matrix[test_case][env] = verdict_tree(verdict, false);
  }
  out["matrix"] = std::move(matrix);

  Tree unallocated = Tree::array();
  for (const auto& item : report.unallocated) {
    Tree entry = Tree::object();
    Tree failures = Tree::object();
    for (const auto& [env, paths] : item.failures) {
      Tree list = Tree::array();
      for (const auto& path : paths) list.push_back(path);
      failures[env] = std::move(list);
    }
    entry["failures"] = std::move(failures);
    entry["test_case"] = item.test_case_id;
    unallocated.push_back(std::move(entry));
  }
  out["unallocated"] = std::move(unallocated);
  return render(out, format);
}

// ---------------------------------------------------------------------------
// PlantUML
// ---------------------------------------------------------------------------

namespace {

std::string plantuml_label(std::string text) {
  std::string out;
  for (char c : text) {
    if (c == '"') {
      out += "''";
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_plantuml(const OddDocument& document) {
  std::string out = "@startuml\n";
  out += "top to bottom direction\n";
  out += "skinparam rectangle {\n  RoundCorner 8\n}\n";

  std::map<Path, std::string> aliases;
  int next = 0;
  auto declare = [&](const Path& path, const std::string& label) {
    auto alias = "n" + std::to_string(next++);
    out += "rectangle \"" + plantuml_label(label) + "\" as " + alias + "\n";
    aliases[path] = alias;
    return alias;
  };

  declare(Path{}, document.id + " (" + std::string(to_string(document.role)) + ", " +
                      document.taxonomy_id + ")");
  for (const auto& [path, value] : document.assignments) {
    Path at;
    const auto segments = path.segments();
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const auto parent = at;
      at = at.child(segments[i]);
      if (aliases.contains(at)) continue;
      const bool leaf = i + 1 == segments.size();
      const auto label = leaf ? segments[i] + " = " + render_value(value) : segments[i];
      const auto alias = declare(at, label);
      out += aliases[parent] + " -- " + alias + "\n";
    }
  }
  out += "@enduml\n";
  return out;
}

}  // namespace odd
