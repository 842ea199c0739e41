#include "stablespec/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stablespec {

void ExperimentReport::add(std::size_t n, std::string statistic, double value, std::optional<double> se,
                           std::size_t replicates, std::uint64_t seed) {
  rows.push_back({n, std::move(statistic), value, se, replicates, seed});
}

const ReportRow& ExperimentReport::row(const std::string& statistic, std::size_t n) const {
  for (const auto& r : rows) {
    if (r.statistic == statistic && r.n == n) return r;
  }
  throw std::out_of_range("no report row " + statistic + " at n=" + std::to_string(n));
}

std::vector<double> ExperimentReport::series(const std::string& statistic) const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.statistic == statistic) out.push_back(r.value);
  }
  return out;
}

std::vector<double> ExperimentReport::se_series(const std::string& statistic) const {
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.statistic == statistic) out.push_back(r.se.value_or(0.0));
  }
  return out;
}

const ReportVerdict* ExperimentReport::verdict(const std::string& name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return {buf, end};
}

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

Json to_json(const ExperimentReport& report) {
  Json j;
  j["kind"] = report.kind;
  j["config"] = report.config;
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json row;
    row["n"] = r.n;
    row["statistic"] = r.statistic;
    row["value"] = number(r.value);
    row["se"] = r.se ? number(*r.se) : Json(nullptr);
    row["replicates"] = r.replicates;
    row["seed"] = r.seed;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    Json row;
    row["name"] = v.name;
    row["pass"] = v.pass;
    row["rule"] = v.rule;
    row["tolerance"] = number(v.tolerance);
    row["observed"] = number(v.observed);
    verdicts.push_back(std::move(row));
  }
  j["verdicts"] = std::move(verdicts);
  j["warnings"] = report.warnings;
  return j;
}

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "kind,n,statistic,value,se,replicates,seed\r\n";
  for (const auto& r : report.rows) {
    out << report.kind << ',' << r.n << ',' << r.statistic << ',' << format_double(r.value) << ','
        << (r.se ? format_double(*r.se) : std::string{}) << ',' << r.replicates << ',' << r.seed << "\r\n";
  }
  return out.str();
}

}  // namespace stablespec
