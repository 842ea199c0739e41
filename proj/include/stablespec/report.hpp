#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace stablespec {

using Json = nlohmann::ordered_json;

struct ReportRow {
  std::size_t n = 0;
  std::string statistic;
  double value = 0.0;
  std::optional<double> se;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

struct ReportVerdict {
  std::string name;
  bool pass = false;
  std::string rule;
  double tolerance = 0.0;
  double observed = 0.0;
};

struct ExperimentReport {
  std::string kind;
  Json config = Json::object();
  std::vector<ReportRow> rows;
  std::vector<ReportVerdict> verdicts;
  std::vector<std::string> warnings;
  // Raw replicate samples, kept only on request and never part of the JSON report.
  std::vector<std::pair<std::string, std::vector<double>>> samples;

  void add(std::size_t n, std::string statistic, double value, std::optional<double> se, std::size_t replicates,
           std::uint64_t seed);
  // Throws std::out_of_range when no row matches.
  const ReportRow& row(const std::string& statistic, std::size_t n) const;
  std::vector<double> series(const std::string& statistic) const;
  std::vector<double> se_series(const std::string& statistic) const;
  const ReportVerdict* verdict(const std::string& name) const;
};

// Shortest round-trip decimal form; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double v);

Json to_json(const ExperimentReport& report);
// Long format: kind,n,statistic,value,se,replicates,seed
std::string to_csv(const ExperimentReport& report);

}  // namespace stablespec
