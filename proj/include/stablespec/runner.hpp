#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stablespec/io.hpp"
#include "stablespec/report.hpp"

namespace stablespec {

enum class OutputFormat { kCsv, kJson };

/// One experiment file. `raw` is the parsed JSON; relative paths inside it
/// (catalog) resolve against `base_dir`.
struct ExperimentConfig {
  std::string kind;
  Json raw;
  std::filesystem::path base_dir;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> output_dir;
};

// Throws ConfigError on malformed JSON or a missing/unknown "experiment".
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

void apply_seed_override(ExperimentConfig& config, std::uint64_t seed);

/// Full precondition sweep without simulation: resolves references, checks
/// domains and reports coefficient, filter and class diagnostics.
Json validate_config(const ExperimentConfig& config);

/// Runs the experiment and returns every artifact in memory, manifest.json
/// last. Identical configs give byte-identical artifacts.
std::vector<io::Artifact> run_config(const ExperimentConfig& config, OutputFormat format);

// Exit status for an exception: 2 config, 3 precondition, 4 numerical, 1 otherwise.
int exit_code_for(const std::exception& e);
Json error_record(const std::exception& e);

}  // namespace stablespec
