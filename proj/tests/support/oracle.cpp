#include "oracle.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace odd::testing {

namespace {

struct Region {
  enum Kind { number, texts, flag } kind = number;
  long double lo = 0;
  long double hi = 0;
  std::set<std::string> members;
  bool value = false;
};

constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();

// A requirement occupies a point or an interval.
Region requirement_region(const LeafValue& v) {
  Region r;
  if (auto* b = std::get_if<bool>(&v)) {
    r.kind = Region::flag;
    r.value = *b;
  } else if (auto* s = std::get_if<std::string>(&v)) {
    r.kind = Region::texts;
    r.members = {*s};
  } else if (auto* set = std::get_if<TextSet>(&v)) {
    r.kind = Region::texts;
    r.members = set->items;
  } else if (auto* i = std::get_if<std::int64_t>(&v)) {
    r.lo = r.hi = static_cast<long double>(*i);
  } else if (auto* d = std::get_if<double>(&v)) {
    r.lo = r.hi = *d;
  } else if (auto* iv = std::get_if<Interval>(&v)) {
    r.lo = iv->lower;
    r.hi = iv->upper;
  } else if (auto* t = std::get_if<Duration>(&v)) {
    r.lo = r.hi = t->seconds;
  } else if (auto* z = std::get_if<DataSize>(&v)) {
    r.lo = r.hi = static_cast<long double>(z->bytes);
  } else {
    throw std::logic_error("oracle: expression value");
  }
  return r;
}

// A scalar capability is an upper bound; an interval is both bounds.
Region capability_region(const LeafValue& v) {
  Region r = requirement_region(v);
  if (r.kind == Region::number && !std::holds_alternative<Interval>(v)) r.lo = kNegInf;
  return r;
}

using Flat = std::vector<std::pair<std::string, LeafValue>>;

Flat flatten(const OddDocument& doc) {
  Flat out;
  for (const auto& [path, value] : doc.assignments) out.emplace_back(path.str(), value);
  return out;
}

}  // namespace

bool oracle_leaf_within(const LeafValue& requirement, const LeafValue& capability) {
  const auto req = requirement_region(requirement);
  const auto cap = capability_region(capability);
  if (req.kind != cap.kind) throw std::logic_error("oracle: kind mismatch");
  switch (req.kind) {
    case Region::flag: return req.value == cap.value;
    case Region::texts:
      for (const auto& m : req.members) {
        if (cap.members.count(m) == 0) return false;
      }
      return true;
    case Region::number: return cap.lo <= req.lo && req.hi <= cap.hi;
  }
  return false;
}

bool oracle_within(const OddDocument& capability, const OddDocument& requirement) {
  const Flat caps = flatten(capability);
  for (const auto& [path, value] : flatten(requirement)) {
    auto it = std::find_if(caps.begin(), caps.end(), [&](const auto& e) { return e.first == path; });
    if (it == caps.end()) return false;
    if (!oracle_leaf_within(value, it->second)) return false;
  }
  return true;
}

}  // namespace odd::testing
