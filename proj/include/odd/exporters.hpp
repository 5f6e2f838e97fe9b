#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "odd/allocation.hpp"
#include "odd/containment.hpp"
#include "odd/model.hpp"

namespace odd {

enum class TextFormat { yaml, json };

std::optional<TextFormat> parse_text_format(std::string_view text);

// Canonical serialization: mapping keys sorted, reals in shortest round-trip
// form, no run-dependent content. Documents re-parse to an equal document.
std::string to_canonical_text(const Taxonomy& taxonomy, TextFormat format);
std::string to_canonical_text(const OddDocument& document, TextFormat format);
std::string to_canonical_text(const ComparisonVerdict& verdict, TextFormat format);
std::string to_canonical_text(const AllocationReport& report, TextFormat format);

/// Tree diagram of the assigned leaves for review, one node per assigned
/// path. Expressions are shown as their canonical source.
std::string to_plantuml(const OddDocument& document);

}  // namespace odd
