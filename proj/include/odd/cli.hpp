#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "odd/allocation.hpp"
#include "odd/model.hpp"

namespace odd::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // invalid document, not within, unallocatable
inline constexpr int kExitError = 2;     // usage, IO or parse error

/// Operational failure; the message is printed to standard error.
class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the tool with `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Builtin taxonomies plus the given taxonomy files, loaded in order.
TaxonomyRegistry load_registry(const std::vector<std::filesystem::path>& taxonomy_files);

/// Loads a document; the id defaults to the file stem.
OddDocument load_document(const std::filesystem::path& file, const TaxonomyRegistry& registry);

/// *.yaml, *.yml and *.json files directly inside `dir`, sorted by name.
std::vector<std::filesystem::path> document_files(const std::filesystem::path& dir);

/// Loads the files and allocates. Files may be given in any order.
AllocationReport allocate_files(const std::vector<std::filesystem::path>& requirement_files,
                                const std::vector<std::filesystem::path>& capability_files,
                                const TaxonomyRegistry& registry);

}  // namespace odd::cli
