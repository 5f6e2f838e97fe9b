#include "odd/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "odd/error.hpp"
#include "odd/exporters.hpp"
#include "odd/parser.hpp"

namespace odd::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CliError(file.string() + ": cannot read file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& target, const std::string& text, std::ostream& out) {
  if (target.empty() || target == "-") {
    out << text;
    return;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw CliError(target + ": cannot write file");
  file << text;
  if (!file) throw CliError(target + ": write failed");
}

std::string diagnostics_text(const fs::path& file, const std::vector<ParseDiagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) out += file.string() + ":" + format_diagnostic(d) + "\n";
  return out;
}

// Expression-free documents may be used in either role.
OddDocument as_role(OddDocument doc, Role role, const fs::path& file) {
  if (doc.role == role) return doc;
  const bool has_expressions =
      std::any_of(doc.assignments.begin(), doc.assignments.end(),
                  [](const auto& entry) { return is_expression(entry.second); });
  if (has_expressions) {
    throw CliError(file.string() + ": capability with expressions cannot be used as a " +
                   std::string(to_string(role)));
  }
  doc.role = role;
  return doc;
}

struct Options {
  std::vector<std::string> taxonomy_files;
  std::string format = "yaml";
};

TextFormat format_of(const Options& options) {
  auto format = parse_text_format(options.format);
  if (!format) throw CliError("unknown format '" + options.format + "'; use yaml or json");
  return *format;
}

std::vector<fs::path> to_paths(const std::vector<std::string>& names) {
  return {names.begin(), names.end()};
}

int cmd_validate(const Options& options, const std::vector<std::string>& files, std::ostream& err) {
  std::vector<fs::path> taxonomy_files = to_paths(options.taxonomy_files);
  std::vector<std::pair<fs::path, std::string>> documents;
  for (const auto& name : files) {
    auto text = read_file(name);
    if (looks_like_taxonomy(text)) {
      taxonomy_files.emplace_back(name);
    } else {
      documents.emplace_back(name, std::move(text));
    }
  }
  const auto registry = load_registry(taxonomy_files);

  int status = kExitOk;
  for (const auto& [file, text] : documents) {
    auto parsed = parse_document(text, registry, file.stem().string());
    err << diagnostics_text(file, parsed.diagnostics);
    if (!parsed) {
      status = kExitNegative;
    } else {
      err << file.string() << ": valid " << to_string(parsed.value->role) << " '"
          << parsed.value->id << "'\n";
    }
  }
  return status;
}

int cmd_compare(const Options& options, const std::string& cap_file, const std::string& req_file,
                const std::string& report, std::ostream& out, std::ostream& err) {
  const auto format = format_of(options);
  const auto registry = load_registry(to_paths(options.taxonomy_files));
  const auto capability = as_role(load_document(cap_file, registry), Role::capability, cap_file);
  const auto requirement = as_role(load_document(req_file, registry), Role::requirement, req_file);

  ComparisonVerdict verdict;
  try {
    verdict = generic_compare(capability, requirement, registry);
  } catch (const Error& e) {
    throw CliError(std::string(to_string(e.code())) + ": " + e.what());
  }
  write_output(report, to_canonical_text(verdict, format), out);

  err << "within: " << (verdict.within ? "true" : "false");
  const auto failures = verdict.failures();
  if (!failures.empty()) {
    err << " (failing:";
    for (const auto* leaf : failures) err << ' ' << leaf->path.str();
    err << ')';
  }
  err << '\n';
  return verdict.within ? kExitOk : kExitNegative;
}

int cmd_allocate(const Options& options, const std::string& req_dir, const std::string& cap_dir,
                 const std::string& report_file, std::ostream& out, std::ostream& err) {
  const auto format = format_of(options);
  const auto registry = load_registry(to_paths(options.taxonomy_files));
  const auto report = allocate_files(document_files(req_dir), document_files(cap_dir), registry);
  write_output(report_file, to_canonical_text(report, format), out);

  for (const auto& [test_case, envs] : report.feasible) {
    err << test_case << ": " << envs.front();
    for (std::size_t i = 1; i < envs.size(); ++i) err << ", " << envs[i];
    err << '\n';
  }
  for (const auto& item : report.unallocated) err << item.test_case_id << ": unallocated\n";
  return report.all_allocated() ? kExitOk : kExitNegative;
}

int cmd_viz(const Options& options, const std::string& doc_file, const std::string& out_file,
            std::ostream& out) {
  const auto registry = load_registry(to_paths(options.taxonomy_files));
  write_output(out_file, to_plantuml(load_document(doc_file, registry)), out);
  return kExitOk;
}

int cmd_export(const Options& options, const std::string& doc_file, std::ostream& out) {
  const auto format = format_of(options);
  const auto registry = load_registry(to_paths(options.taxonomy_files));
  if (looks_like_taxonomy(read_file(doc_file))) {
    auto parsed = parse_taxonomy(read_file(doc_file), registry);
    if (!parsed) throw CliError(diagnostics_text(doc_file, parsed.diagnostics));
    out << to_canonical_text(*parsed.value, format);
  } else {
    out << to_canonical_text(load_document(doc_file, registry), format);
  }
  return kExitOk;
}

}  // namespace

TaxonomyRegistry load_registry(const std::vector<fs::path>& taxonomy_files) {
  auto registry = TaxonomyRegistry::builtin();
  for (const auto& file : taxonomy_files) {
    auto parsed = parse_taxonomy(read_file(file), registry);
    if (!parsed) throw CliError(diagnostics_text(file, parsed.diagnostics));
    try {
      registry.add(std::move(*parsed.value));
    } catch (const Error& e) {
      throw CliError(file.string() + ": " + e.what());
    }
  }
  return registry;
}

OddDocument load_document(const fs::path& file, const TaxonomyRegistry& registry) {
  auto parsed = parse_document(read_file(file), registry, file.stem().string());
  if (!parsed) {
    auto text = diagnostics_text(file, parsed.diagnostics);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    throw CliError(text);
  }
  return std::move(*parsed.value);
}

std::vector<fs::path> document_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw CliError(dir.string() + ": not a directory");
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".yaml" || ext == ".yml" || ext == ".json")) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

AllocationReport allocate_files(const std::vector<fs::path>& requirement_files,
                                const std::vector<fs::path>& capability_files,
                                const TaxonomyRegistry& registry) {
  std::vector<OddDocument> test_cases;
  for (const auto& file : requirement_files) {
    test_cases.push_back(as_role(load_document(file, registry), Role::requirement, file));
  }
  std::vector<Environment> environments;
  for (const auto& file : capability_files) {
    auto doc = as_role(load_document(file, registry), Role::capability, file);
    Environment env;
    env.id = doc.id;
    env.display_name = doc.name.value_or(doc.id);
    env.capability = std::move(doc);
    environments.push_back(std::move(env));
  }
  try {
    return allocate(test_cases, environments, registry);
  } catch (const Error& e) {
    throw CliError(std::string(to_string(e.code())) + ": " + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Allocate test cases to test environments by ODD capability containment",
               "oddalloc"};
  app.require_subcommand(1);
  Options options;
  app.add_option("--taxonomy", options.taxonomy_files, "Additional taxonomy file (repeatable)")
      ->check(CLI::ExistingFile);

  std::vector<std::string> validate_files;
  auto* validate = app.add_subcommand("validate", "Validate taxonomy and document files");
  validate->add_option("files", validate_files, "Taxonomy and document files")->required();

  std::string cap_file, req_file, report_file;
  auto* compare = app.add_subcommand("compare", "Check whether a requirement is within a capability");
  compare->add_option("--cap", cap_file, "Capability document")->required();
  compare->add_option("--req", req_file, "Requirement document")->required();
  compare->add_option("--report", report_file, "Report file (default: standard output)");
  compare->add_option("--format", options.format, "yaml or json");

  std::string req_dir, cap_dir;
  auto* allocate_cmd = app.add_subcommand("allocate", "Allocate a suite of test cases to environments");
  allocate_cmd->add_option("--req-dir", req_dir, "Directory of requirement documents")->required();
  allocate_cmd->add_option("--cap-dir", cap_dir, "Directory of capability documents")->required();
  allocate_cmd->add_option("--report", report_file, "Report file ('-' for standard output)")
      ->required();
  allocate_cmd->add_option("--format", options.format, "yaml or json");

  std::string doc_file, out_file;
  auto* viz = app.add_subcommand("viz", "Write a PlantUML diagram of a document");
  viz->add_option("--doc", doc_file, "Document")->required();
  viz->add_option("--out", out_file, "Output .puml file")->required();

  auto* export_cmd = app.add_subcommand("export", "Print the canonical form of a document or taxonomy");
  export_cmd->add_option("file", doc_file, "Document or taxonomy")->required();
  export_cmd->add_option("--format", options.format, "yaml or json");

  for (auto* sub : {validate, compare, allocate_cmd, viz, export_cmd}) {
    sub->add_option("--taxonomy", options.taxonomy_files, "Additional taxonomy file (repeatable)")
        ->check(CLI::ExistingFile);
  }

  std::vector<std::string> argv_storage{"oddalloc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& arg : argv_storage) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "oddalloc: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (*validate) return cmd_validate(options, validate_files, err);
    if (*compare) return cmd_compare(options, cap_file, req_file, report_file, out, err);
    if (*allocate_cmd) return cmd_allocate(options, req_dir, cap_dir, report_file, out, err);
    if (*viz) return cmd_viz(options, doc_file, out_file, out);
    if (*export_cmd) return cmd_export(options, doc_file, out);
  } catch (const CliError& e) {
    err << e.what() << "\n";
    return kExitError;
  } catch (const Error& e) {
    err << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace odd::cli
