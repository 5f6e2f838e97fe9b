#include "odd/path.hpp"

#include <algorithm>

#include "odd/error.hpp"

namespace odd {

bool is_valid_name(std::string_view name) {
  if (name.empty() || name.front() < 'a' || name.front() > 'z') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Path::Path(std::vector<std::string> segments) : segments_(std::move(segments)) {}

std::optional<Path> Path::parse(std::string_view text) {
  std::vector<std::string> segments;
  while (true) {
    const auto slash = text.find('/');
    const auto segment = text.substr(0, slash);
    if (!is_valid_name(segment)) return std::nullopt;
    segments.emplace_back(segment);
    if (slash == std::string_view::npos) break;
    text.remove_prefix(slash + 1);
  }
  return Path(std::move(segments));
}

Path Path::child(std::string name) const {
  auto segments = segments_;
  segments.push_back(std::move(name));
  return Path(std::move(segments));
}

Path Path::parent() const {
  if (segments_.empty()) return {};
  return Path(std::vector<std::string>(segments_.begin(), segments_.end() - 1));
}

bool Path::starts_with(const Path& prefix) const {
  return prefix.size() <= size() &&
         std::equal(prefix.segments_.begin(), prefix.segments_.end(), segments_.begin());
}

std::string Path::str() const {
  std::string out;
  for (const auto& segment : segments_) {
    if (!out.empty()) out += '/';
    out += segment;
  }
  return out;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::path_collision: return "path collision";
    case ErrorCode::unknown_parent: return "unknown parent";
    case ErrorCode::unknown_path: return "unknown path";
    case ErrorCode::unknown_taxonomy: return "unknown taxonomy";
    case ErrorCode::incompatible_taxonomies: return "incompatible taxonomies";
    case ErrorCode::unbound_reference: return "unbound reference";
    case ErrorCode::type_error: return "type error";
    case ErrorCode::constraint_violation: return "constraint violation";
    case ErrorCode::role_mismatch: return "role mismatch";
    case ErrorCode::duplicate_id: return "duplicate id";
  }
  return "error";
}

}  // namespace odd
