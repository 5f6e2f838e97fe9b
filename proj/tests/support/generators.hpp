#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "odd/model.hpp"

namespace odd::testing {

using Rng = std::mt19937_64;

struct TaxonomyShape {
  int max_leaves = 30;
  int max_depth = 4;
  bool with_attributes = false;  // append the four ordinal attributes
};

/// Random well-formed taxonomy with at most `shape.max_leaves` leaves.
Taxonomy random_taxonomy(Rng& rng, const std::string& id, const TaxonomyShape& shape = {});

/// Random valid, expression-free document. Required leaves are always
/// assigned; other leaves with probability `density`.
OddDocument random_document(Rng& rng, const Taxonomy& taxonomy, Role role, const std::string& id,
                            double density = 0.6);

/// A document every requirement within `doc` is also within: larger scalars,
/// wider intervals, supersets, and possibly extra leaves. Stays valid.
OddDocument widen(Rng& rng, const OddDocument& doc, const Taxonomy& taxonomy,
                  const std::string& id);

/// Changes one assigned leaf at random (or drops it). The result is still
/// valid but may or may not contain the original.
OddDocument perturb(Rng& rng, const OddDocument& doc, const Taxonomy& taxonomy);

/// Random expression over requirement leaves of `taxonomy` producing values
/// for a leaf of `target`.
Expression random_expression(Rng& rng, const Taxonomy& taxonomy, const LeafType& target);

/// Random capability that may carry expressions (for round trips).
OddDocument random_capability_with_expressions(Rng& rng, const Taxonomy& taxonomy,
                                               const std::string& id);

/// File name and source text.
using SourceFile = std::pair<std::string, std::string>;

struct SyntheticSuite {
  std::vector<SourceFile> requirements;
  std::vector<SourceFile> capabilities;
};

/// Case-study style suite on the builtin extended taxonomy: `cases`
/// requirements and `environments` capabilities, one with the glare rule.
SyntheticSuite synthetic_suite(std::uint64_t seed, int cases, int environments);

}  // namespace odd::testing
