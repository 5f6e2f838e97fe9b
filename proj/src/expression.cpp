#include "odd/expression.hpp"

#include <algorithm>
#include <charconv>

namespace odd {

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
    case CompareOp::eq: return "==";
    case CompareOp::ne: return "!=";
  }
  return "==";
}

std::string format_real(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  std::string out(buffer, end);
  if (out.find_first_of(".eni") == std::string::npos) out += ".0";
  return out;
}

namespace expr {

ExprPtr literal(Literal value) { return std::make_shared<const ExprNode>(ExprNode{std::move(value)}); }

ExprPtr req(Path path) {
  return std::make_shared<const ExprNode>(ExprNode{RequirementRef{std::move(path)}});
}

ExprPtr compare(CompareOp op, ExprPtr left, ExprPtr right) {
  return std::make_shared<const ExprNode>(ExprNode{Compare{op, std::move(left), std::move(right)}});
}

ExprPtr all_of(std::vector<ExprPtr> operands) {
  return std::make_shared<const ExprNode>(ExprNode{AllOf{std::move(operands)}});
}

ExprPtr any_of(std::vector<ExprPtr> operands) {
  return std::make_shared<const ExprNode>(ExprNode{AnyOf{std::move(operands)}});
}

ExprPtr negate(ExprPtr operand) {
  return std::make_shared<const ExprNode>(ExprNode{Negate{std::move(operand)}});
}

ExprPtr if_then_else(ExprPtr condition, ExprPtr then_branch, ExprPtr else_branch) {
  return std::make_shared<const ExprNode>(
      ExprNode{Conditional{std::move(condition), std::move(then_branch), std::move(else_branch)}});
}

}  // namespace expr

namespace {

bool equal_lists(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const ExprPtr& x, const ExprPtr& y) { return structurally_equal(*x, *y); });
}

}  // namespace

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Literal>) {
          return lhs == rhs;
        } else if constexpr (std::is_same_v<T, RequirementRef>) {
          return lhs.path == rhs.path;
        } else if constexpr (std::is_same_v<T, Compare>) {
          return lhs.op == rhs.op && structurally_equal(*lhs.left, *rhs.left) &&
                 structurally_equal(*lhs.right, *rhs.right);
        } else if constexpr (std::is_same_v<T, AllOf> || std::is_same_v<T, AnyOf>) {
          return equal_lists(lhs.operands, rhs.operands);
        } else if constexpr (std::is_same_v<T, Negate>) {
          return structurally_equal(*lhs.operand, *rhs.operand);
        } else {
          return structurally_equal(*lhs.condition, *rhs.condition) &&
                 structurally_equal(*lhs.then_branch, *rhs.then_branch) &&
                 structurally_equal(*lhs.else_branch, *rhs.else_branch);
        }
      },
      a.node);
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.root == b.root) return true;
  if (!a.root || !b.root) return false;
  return structurally_equal(*a.root, *b.root);
}

namespace {

// Binding strength, loosest first.
enum Level { kConditional = 0, kOr, kAnd, kCompare, kUnary, kPrimary };

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

Level level_of(const ExprNode& node) {
  return std::visit(
      [](const auto& n) -> Level {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Conditional>) return kConditional;
        if constexpr (std::is_same_v<T, AnyOf>) return kOr;
        if constexpr (std::is_same_v<T, AllOf>) return kAnd;
        if constexpr (std::is_same_v<T, Compare>) return kCompare;
        if constexpr (std::is_same_v<T, Negate>) return kUnary;
        return kPrimary;
      },
      node.node);
}

void print_to(const ExprNode& node, Level context, std::string& out);

void print_joined(const std::vector<ExprPtr>& operands, std::string_view keyword, Level operand_level,
                  std::string& out) {
  for (std::size_t i = 0; i < operands.size(); ++i) {
    if (i > 0) {
      out += ' ';
      out += keyword;
      out += ' ';
    }
    print_to(*operands[i], operand_level, out);
  }
}

void print_to(const ExprNode& node, Level context, std::string& out) {
  const bool parens = level_of(node) < context;
  if (parens) out += '(';
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Literal>) {
          std::visit(
              [&](const auto& v) {
                using V = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<V, bool>) {
                  out += v ? "true" : "false";
                } else if constexpr (std::is_same_v<V, std::int64_t>) {
                  out += std::to_string(v);
                } else if constexpr (std::is_same_v<V, double>) {
                  out += format_real(v);
                } else {
                  out += quote(v);
                }
              },
              n);
        } else if constexpr (std::is_same_v<T, RequirementRef>) {
          out += "req:" + n.path.str();
        } else if constexpr (std::is_same_v<T, Compare>) {
          print_to(*n.left, kUnary, out);
          out += ' ';
          out += to_string(n.op);
          out += ' ';
          print_to(*n.right, kUnary, out);
        } else if constexpr (std::is_same_v<T, AllOf>) {
          print_joined(n.operands, "and", kCompare, out);
        } else if constexpr (std::is_same_v<T, AnyOf>) {
          print_joined(n.operands, "or", kAnd, out);
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += "not ";
          print_to(*n.operand, kUnary, out);
        } else {
          out += "if ";
          print_to(*n.condition, kOr, out);
          out += " then ";
          print_to(*n.then_branch, kConditional, out);
          out += " else ";
          print_to(*n.else_branch, kConditional, out);
        }
      },
      node.node);
  if (parens) out += ')';
}

void collect_refs(const ExprNode& node, std::vector<Path>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, RequirementRef>) {
          out.push_back(n.path);
        } else if constexpr (std::is_same_v<T, Compare>) {
          collect_refs(*n.left, out);
          collect_refs(*n.right, out);
        } else if constexpr (std::is_same_v<T, AllOf> || std::is_same_v<T, AnyOf>) {
          for (const auto& operand : n.operands) collect_refs(*operand, out);
        } else if constexpr (std::is_same_v<T, Negate>) {
          collect_refs(*n.operand, out);
        } else if constexpr (std::is_same_v<T, Conditional>) {
          collect_refs(*n.condition, out);
          collect_refs(*n.then_branch, out);
          collect_refs(*n.else_branch, out);
        }
      },
      node.node);
}

}  // namespace

std::string print(const ExprNode& node) {
  std::string out;
  print_to(node, kConditional, out);
  return out;
}

std::string print(const Expression& expression) {
  return expression.root ? print(*expression.root) : std::string{};
}

std::vector<Path> referenced_paths(const ExprNode& node) {
  std::vector<Path> out;
  collect_refs(node, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace odd
