#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "odd/model.hpp"

namespace odd {

using ExprPtr = std::shared_ptr<const ExprNode>;

/// Scalar literal inside an expression.
using Literal = std::variant<bool, std::int64_t, double, std::string>;

enum class CompareOp { lt, le, gt, ge, eq, ne };

std::string_view to_string(CompareOp op);

struct RequirementRef {
  Path path;
};

struct Compare {
  CompareOp op;
  ExprPtr left;
  ExprPtr right;
};

struct AllOf {
  std::vector<ExprPtr> operands;
};

struct AnyOf {
  std::vector<ExprPtr> operands;
};

struct Negate {
  ExprPtr operand;
};

struct Conditional {
  ExprPtr condition;
  ExprPtr then_branch;
  ExprPtr else_branch;
};

/// Immutable expression tree node. Children are shared, never mutated.
struct ExprNode {
  std::variant<Literal, RequirementRef, Compare, AllOf, AnyOf, Negate, Conditional> node;
};

bool structurally_equal(const ExprNode& a, const ExprNode& b);

namespace expr {

ExprPtr literal(Literal value);
ExprPtr req(Path path);
ExprPtr compare(CompareOp op, ExprPtr left, ExprPtr right);
ExprPtr all_of(std::vector<ExprPtr> operands);
ExprPtr any_of(std::vector<ExprPtr> operands);
ExprPtr negate(ExprPtr operand);
ExprPtr if_then_else(ExprPtr condition, ExprPtr then_branch, ExprPtr else_branch);

}  // namespace expr

/// Canonical source text. Parsing it yields a structurally equal tree.
std::string print(const ExprNode& node);
std::string print(const Expression& expression);

/// Every requirement path referenced by the tree, sorted and unique.
std::vector<Path> referenced_paths(const ExprNode& node);

/// Shortest round-trip rendering of a real, always with a '.' or exponent.
std::string format_real(double value);

}  // namespace odd
