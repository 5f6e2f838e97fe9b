#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <unistd.h>

#include "odd/model.hpp"
#include "odd/parser.hpp"

#ifndef ODD_DATA_DIR
#error "ODD_DATA_DIR must point at the data directory"
#endif

namespace odd::testing {

inline std::filesystem::path data_path(const std::string& relative) {
  return std::filesystem::path(ODD_DATA_DIR) / relative;
}

inline std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline const std::string kRequirementFile = "case_study/requirements/reversing_glare.yaml";
inline const std::string kCarlaFile = "case_study/capabilities/carla.yaml";
inline const std::string kScaleTruckFile = "case_study/capabilities/scale_truck.yaml";

inline OddDocument load_fixture(const std::string& relative,
                                const TaxonomyRegistry& registry = TaxonomyRegistry::builtin()) {
  auto parsed = parse_document(read_text(data_path(relative)), registry);
  if (!parsed) {
    std::string message = relative + ":";
    for (const auto& d : parsed.diagnostics) message += " " + format_diagnostic(d);
    throw std::runtime_error(message);
  }
  return std::move(*parsed.value);
}

inline Path P(std::string_view text) {
  auto path = Path::parse(text);
  if (!path) throw std::invalid_argument("bad path " + std::string(text));
  return *path;
}

inline const Path kAzimuth = P("environment/illumination/natural_illumination/sun_azimuth_angle");
inline const Path kElevation = P("environment/illumination/natural_illumination/sun_elevation_angle");

/// Scoped temporary directory.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("odd_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& text) const {
    auto file = path_ / name;
    std::filesystem::create_directories(file.parent_path());
    std::ofstream(file, std::ios::binary) << text;
    return file;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace odd::testing
