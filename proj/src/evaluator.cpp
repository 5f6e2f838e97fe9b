#include "odd/evaluator.hpp"

#include <cmath>

#include "odd/error.hpp"

namespace odd {

EvaluationContext::EvaluationContext(const OddDocument& requirement) : requirement_(&requirement) {
  if (requirement.role != Role::requirement) {
    throw Error(ErrorCode::role_mismatch, "'" + requirement.id + "' is not a requirement document");
  }
}

namespace {

[[noreturn]] void type_error(const std::string& message) {
  throw Error(ErrorCode::type_error, message);
}

// Numeric view of a value; nullopt for non-numeric variants.
struct Number {
  bool is_integer = false;
  std::int64_t integer = 0;
  double real = 0.0;
};

std::optional<Number> as_number(const LeafValue& value) {
  if (const auto* v = std::get_if<std::int64_t>(&value)) return Number{true, *v, 0.0};
  if (const auto* v = std::get_if<double>(&value)) return Number{false, 0, *v};
  if (const auto* v = std::get_if<Duration>(&value)) return Number{false, 0, v->seconds};
  if (const auto* v = std::get_if<DataSize>(&value)) return Number{true, v->bytes, 0.0};
  return std::nullopt;
}

template <class T>
bool apply(CompareOp op, const T& a, const T& b) {
  switch (op) {
    case CompareOp::lt: return a < b;
    case CompareOp::le: return a <= b;
    case CompareOp::gt: return a > b;
    case CompareOp::ge: return a >= b;
    case CompareOp::eq: return a == b;
    case CompareOp::ne: return a != b;
  }
  return false;
}

bool compare_values(CompareOp op, const LeafValue& left, const LeafValue& right) {
  const auto ln = as_number(left);
  const auto rn = as_number(right);
  if (ln && rn) {
    if (ln->is_integer && rn->is_integer) return apply(op, ln->integer, rn->integer);
    const double a = ln->is_integer ? static_cast<double>(ln->integer) : ln->real;
    const double b = rn->is_integer ? static_cast<double>(rn->integer) : rn->real;
    return apply(op, a, b);
  }
  const bool equality = op == CompareOp::eq || op == CompareOp::ne;
  if (const auto* a = std::get_if<std::string>(&left)) {
    if (const auto* b = std::get_if<std::string>(&right); b != nullptr && equality) {
      return apply(op, *a, *b);
    }
  }
  if (const auto* a = std::get_if<bool>(&left)) {
    if (const auto* b = std::get_if<bool>(&right); b != nullptr && equality) {
      return apply(op, *a, *b);
    }
  }
  type_error("cannot compare " + std::string(value_kind_name(left)) + " " +
             std::string(to_string(op)) + " " + std::string(value_kind_name(right)));
}

bool as_bool(const LeafValue& value, std::string_view where) {
  if (const auto* b = std::get_if<bool>(&value)) return *b;
  type_error(std::string(where) + " needs a boolean, got " + std::string(value_kind_name(value)));
}

LeafValue from_literal(const Literal& literal) {
  return std::visit([](const auto& v) -> LeafValue { return v; }, literal);
}

LeafValue eval(const ExprNode& node, const OddDocument& requirement) {
  return std::visit(
      [&](const auto& n) -> LeafValue {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return from_literal(n);
        } else if constexpr (std::is_same_v<T, RequirementRef>) {
          auto it = requirement.assignments.find(n.path);
          if (it == requirement.assignments.end()) {
            throw Error(ErrorCode::unbound_reference,
                        "req:" + n.path.str() + " is not assigned in '" + requirement.id + "'");
          }
          return it->second;
        } else if constexpr (std::is_same_v<T, Compare>) {
          const auto left = eval(*n.left, requirement);
          const auto right = eval(*n.right, requirement);
          return compare_values(n.op, left, right);
        } else if constexpr (std::is_same_v<T, AllOf>) {
          bool result = true;
          for (const auto& operand : n.operands) {
            result = as_bool(eval(*operand, requirement), "'and'") && result;
          }
          return result;
        } else if constexpr (std::is_same_v<T, AnyOf>) {
          bool result = false;
          for (const auto& operand : n.operands) {
            result = as_bool(eval(*operand, requirement), "'or'") || result;
          }
          return result;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return !as_bool(eval(*n.operand, requirement), "'not'");
        } else {
          const bool condition = as_bool(eval(*n.condition, requirement), "'if'");
          auto then_value = eval(*n.then_branch, requirement);
          auto else_value = eval(*n.else_branch, requirement);
          return condition ? std::move(then_value) : std::move(else_value);
        }
      },
      node.node);
}

std::optional<std::int64_t> exact_integer(double v) {
  if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 9.0e18) return std::nullopt;
  return static_cast<std::int64_t>(v);
}

// Fits an evaluated value to the declared leaf kind.
LeafValue coerce(LeafValue value, LeafKind kind) {
  auto fail = [&]() -> LeafValue {
    type_error(std::string(value_kind_name(value)) + " result does not fit a " +
               std::string(to_string(kind)) + " leaf");
  };
  const auto* i = std::get_if<std::int64_t>(&value);
  const auto* r = std::get_if<double>(&value);
  switch (kind) {
    case LeafKind::integer:
      if (r) {
        if (auto exact = exact_integer(*r)) return *exact;
        return fail();
      }
      return i || std::holds_alternative<Interval>(value) ? value : fail();
    case LeafKind::real:
      if (i) return static_cast<double>(*i);
      return r || std::holds_alternative<Interval>(value) ? value : fail();
    case LeafKind::duration:
      if (i) return Duration{static_cast<double>(*i)};
      if (r) return Duration{*r};
      return std::holds_alternative<Duration>(value) ? value : fail();
    case LeafKind::data_size:
      if (i) return DataSize{*i};
      if (r) {
        if (auto exact = exact_integer(*r)) return DataSize{*exact};
        return fail();
      }
      return std::holds_alternative<DataSize>(value) ? value : fail();
    case LeafKind::boolean: return std::holds_alternative<bool>(value) ? value : fail();
    case LeafKind::text:
      return std::holds_alternative<std::string>(value) || std::holds_alternative<TextSet>(value)
                 ? value
                 : fail();
    case LeafKind::text_set:
      if (const auto* s = std::get_if<std::string>(&value)) return TextSet{{*s}};
      return std::holds_alternative<TextSet>(value) ? value : fail();
  }
  return fail();
}

}  // namespace

LeafValue evaluate_expression(const ExprNode& expression, const EvaluationContext& context) {
  return eval(expression, context.requirement());
}

LeafValue evaluate_expression(const Expression& expression, const EvaluationContext& context) {
  if (!expression.root) type_error("empty expression");
  return evaluate_expression(*expression.root, context);
}

OddDocument concretize_capability(const OddDocument& capability, const OddDocument& requirement,
                                  const Taxonomy& taxonomy, std::vector<TraceEntry>* trace) {
  if (capability.role != Role::capability) {
    throw Error(ErrorCode::role_mismatch, "'" + capability.id + "' is not a capability document");
  }
  EvaluationContext context(requirement);

  OddDocument out = capability;
  for (auto& [path, value] : out.assignments) {
    const auto* expression = std::get_if<Expression>(&value);
    if (expression == nullptr) continue;
    const auto* type = taxonomy.leaf_type(path);
    if (type == nullptr) {
      throw Error(ErrorCode::unknown_path, "'" + path.str() + "' is not a leaf of '" + taxonomy.id + "'");
    }
    try {
      auto resolved = coerce(evaluate_expression(*expression, context), type->kind);
      context.record({path, print(*expression), resolved});
      value = std::move(resolved);
    } catch (const Error& e) {
      throw Error(e.code(), "'" + path.str() + "': " + e.what());
    }
  }

  const auto violations = validate_document(out, taxonomy);
  if (!violations.empty()) {
    std::string message = "concretized capability '" + capability.id + "' is invalid:";
    for (const auto& v : violations) message += " '" + v.path.str() + "': " + v.message + ";";
    message.pop_back();
    throw Error(ErrorCode::constraint_violation, message);
  }
  if (trace != nullptr) *trace = context.trace();
  return out;
}

}  // namespace odd
