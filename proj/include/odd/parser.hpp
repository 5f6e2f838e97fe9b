#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odd/model.hpp"

namespace odd {

struct SourceLocation {
  int line = 1;
  int column = 1;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

enum class Severity { error, warning };

struct ParseDiagnostic {
  Severity severity = Severity::error;
  SourceLocation location;
  std::string message;
};

/// "line:col: error: message"
std::string format_diagnostic(const ParseDiagnostic& diagnostic);

/// Either a value, or diagnostics with at least one error. Warnings may
/// accompany a value.
template <class T>
struct ParseResult {
  std::optional<T> value;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
  explicit operator bool() const { return ok(); }
};

/// Parses the conditional mini-language:
///
///   expr    := "if" expr "then" expr "else" expr | or
///   or      := and ("or" and)*
///   and     := cmp ("and" cmp)*
///   cmp     := unary (("<" | "<=" | ">" | ">=" | "==" | "!=") unary)?
///   unary   := "not" unary | primary
///   primary := number | string | "true" | "false" | "req:" path | "(" expr ")"
///
/// `&&`, `||` and `!` are accepted as spellings of and/or/not.
ParseResult<Expression> parse_expression(std::string_view source);

/// Parses a taxonomy file. `extends` is resolved against `registry`.
ParseResult<Taxonomy> parse_taxonomy(std::string_view source, const TaxonomyRegistry& registry);

/// Parses a requirement or capability document and validates it against its
/// taxonomy. `default_id` is used when the file carries no `id` field.
ParseResult<OddDocument> parse_document(std::string_view source, const TaxonomyRegistry& registry,
                                        std::string_view default_id = {});

/// True when `source` is a mapping with a `nodes` field, i.e. a taxonomy file.
bool looks_like_taxonomy(std::string_view source);

/// Parses a scalar duration: plain seconds or a number with a unit suffix
/// (ms, s, min, h, d).
std::optional<double> parse_duration_text(std::string_view text);

/// Parses a scalar data size: plain bytes or a number with a unit suffix
/// (B, kB, MB, GB, TB, KiB, MiB, GiB, TiB).
std::optional<std::int64_t> parse_data_size_text(std::string_view text);

}  // namespace odd
