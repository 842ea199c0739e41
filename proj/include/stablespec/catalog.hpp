#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "stablespec/fourier.hpp"
#include "stablespec/report.hpp"

namespace stablespec {

/// Named functions loaded from a text catalog, one entry per line:
///
///   # name   family     parameters
///   ind1     indicator  x=1
///   arma     arma       filter=ma1:0.5 scale=1
///   tab      tabulated  grid=0,1,3.14159 values=1,0.5,0
///
/// Families: constant(c), indicator(x), cosine(k), arma(filter, scale),
/// ramp(width, theta), tabulated(grid, values).
class Catalog {
 public:
  static Catalog parse(const std::string& text, const std::string& source = "catalog");
  static Catalog load(const std::filesystem::path& path);

  // Throws UnresolvedReferenceError naming `field` when absent.
  const FunctionSpec& at(const std::string& name, const std::string& field = "function") const;
  bool contains(const std::string& name) const { return entries_.count(name) > 0; }
  std::vector<std::string> names() const;
  void add(const std::string& name, FunctionSpec f);

 private:
  std::map<std::string, FunctionSpec> entries_;
};

/// Builds a function from family name and key=value parameters.
FunctionSpec make_function(const std::string& family, const std::map<std::string, std::string>& params,
                           const std::string& field);

/// A function given inline as {"family": ..., params...} or by catalog name.
FunctionSpec function_from_json(const Json& j, const Catalog* catalog, const std::string& field);

}  // namespace stablespec
