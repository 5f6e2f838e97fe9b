#pragma once

#include <string>
#include <vector>

#include "odd/expression.hpp"
#include "odd/model.hpp"

namespace odd {

/// One resolved expression leaf, kept for the report.
struct TraceEntry {
  Path path;
  std::string expression;  // canonical source text
  LeafValue value;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// Binds a requirement for evaluation. The requirement is only read.
class EvaluationContext {
 public:
  explicit EvaluationContext(const OddDocument& requirement);

  const OddDocument& requirement() const { return *requirement_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }
  void record(TraceEntry entry) { trace_.push_back(std::move(entry)); }

 private:
  const OddDocument* requirement_;
  std::vector<TraceEntry> trace_;
};

/// Reduces `expression` to a concrete value. Every subexpression is evaluated,
/// so the outcome (value or error) does not depend on evaluation shortcuts.
/// Throws Error{unbound_reference} or Error{type_error}.
LeafValue evaluate_expression(const ExprNode& expression, const EvaluationContext& context);
LeafValue evaluate_expression(const Expression& expression, const EvaluationContext& context);

/// Replaces each expression leaf of `capability` by its value under
/// `requirement`, coerced to the leaf type, then validates the result against
/// `taxonomy` (the capability's own taxonomy). Errors carry the leaf path.
OddDocument concretize_capability(const OddDocument& capability, const OddDocument& requirement,
                                  const Taxonomy& taxonomy,
                                  std::vector<TraceEntry>* trace = nullptr);

}  // namespace odd
