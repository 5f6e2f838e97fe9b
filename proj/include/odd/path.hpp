#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace odd {

/// True for node names of the form [a-z][a-z0-9_]*.
bool is_valid_name(std::string_view name);

/// A "/"-separated address of a taxonomy node, relative to the root.
class Path {
 public:
  Path() = default;
  explicit Path(std::vector<std::string> segments);

  /// Parses "a/b/c". Returns nullopt on empty segments or invalid names.
  static std::optional<Path> parse(std::string_view text);

  std::span<const std::string> segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  std::size_t size() const { return segments_.size(); }
  const std::string& leaf_name() const { return segments_.back(); }

  Path child(std::string name) const;
  Path parent() const;
  bool starts_with(const Path& prefix) const;

  std::string str() const;

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;

 private:
  std::vector<std::string> segments_;
};

}  // namespace odd
