// stablespec: batch runner for the stable-periodogram experiments.
//
//   stablespec run      --config exp.json [--out-dir DIR] [--seed-override S] [--threads T] [--format csv|json]
//   stablespec validate --config exp.json
//   stablespec coeffs   --config coeffs.json [--out-dir DIR] [--format csv|json]
//   stablespec simulate --config sim.json [--out-dir DIR] [--seed-override S] [--format csv|json]

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "stablespec/error.hpp"
#include "stablespec/io.hpp"
#include "stablespec/kernels.hpp"
#include "stablespec/runner.hpp"

namespace fs = std::filesystem;
using namespace stablespec;

namespace {

struct Options {
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
  int threads = 0;
  std::string format = "csv";
};

int report_error(const std::exception& e, const std::optional<fs::path>& out_dir) {
  const Json record = error_record(e);
  std::cerr << record.dump() << "\n";
  if (out_dir) {
    try {
      io::write_file(*out_dir / "error.json", io::dump(record));
    } catch (const std::exception&) {
      // stderr already carries the record
    }
  }
  return exit_code_for(e);
}

int execute(const std::string& command, const Options& opt) {
  std::optional<fs::path> out_dir;
  if (!opt.out_dir.empty()) out_dir = fs::path(opt.out_dir);
  try {
    if (opt.threads > 0) kernels::set_thread_count(opt.threads);
    auto config = load_config(opt.config);
    if (!out_dir && config.output_dir) out_dir = config.output_dir;
    if (opt.seed_override) apply_seed_override(config, *opt.seed_override);

    if (command == "validate") {
      std::cout << io::dump(validate_config(config));
      return 0;
    }
    if (command == "coeffs" && config.kind != "coeffs") {
      throw ConfigError("experiment", "the coeffs command needs an experiment of kind \"coeffs\"");
    }
    if (command == "simulate" && config.kind != "simulate") {
      throw ConfigError("experiment", "the simulate command needs an experiment of kind \"simulate\"");
    }
    const auto format = opt.format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
    const auto artifacts = run_config(config, format);
    const fs::path dir = out_dir.value_or(fs::path("."));
    for (const auto& a : artifacts) io::write_file(dir / a.name, a.content);
    for (const auto& a : artifacts) std::cout << (dir / a.name).string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    return report_error(e, out_dir);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo experiments for integrated periodograms of stable processes"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;

  std::map<std::string, CLI::App*> subs;
  for (const char* name : {"run", "validate", "coeffs", "simulate"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config, "experiment config (JSON)")->required();
    if (std::string(name) != "validate") {
      sub->add_option("--out-dir", opt.out_dir, "output directory (default: config output_dir or .)");
      sub->add_option("--format", opt.format, "tabular output format")->check(CLI::IsMember({"csv", "json"}));
    }
    sub->add_option("--seed-override", seed, "replace the config seed");
    sub->add_option("--threads", opt.threads, "advisory OpenMP thread count")->check(CLI::NonNegativeNumber);
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    if (sub->count("--seed-override") > 0) opt.seed_override = seed;
    return execute(name, opt);
  }
  return 2;
}
