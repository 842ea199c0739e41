#include "stablespec/catalog.hpp"

#include <charconv>
#include <sstream>

#include "stablespec/error.hpp"
#include "stablespec/io.hpp"

namespace stablespec {

namespace {

double to_number(const std::string& s, const std::string& field) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError(field, "not a number: '" + s + "'");
  return v;
}

std::vector<double> to_list(const std::string& s, const std::string& field) {
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_number(item, field));
  return out;
}

const std::string& require(const std::map<std::string, std::string>& p, const std::string& key,
                           const std::string& field) {
  auto it = p.find(key);
  if (it == p.end()) throw ConfigError(field, "missing parameter '" + key + "'");
  return it->second;
}

std::string json_scalar(const Json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(field, "list entries must be numbers");
      if (!out.empty()) out += ',';
      out += format_double(e.get<double>());
    }
    return out;
  }
  throw ConfigError(field, "unsupported parameter type");
}

}  // namespace

FunctionSpec make_function(const std::string& family, const std::map<std::string, std::string>& params,
                           const std::string& field) {
  if (family == "constant") return FunctionSpec(ConstantFn{to_number(require(params, "c", field), field)});
  if (family == "indicator") return FunctionSpec(IndicatorFn{to_number(require(params, "x", field), field)});
  if (family == "cosine") {
    const double k = to_number(require(params, "k", field), field);
    if (k != static_cast<int>(k)) throw ParameterDomainError(field, "cosine frequency must be an integer");
    return FunctionSpec(CosineFn{static_cast<int>(k)});
  }
  if (family == "arma") {
    ArmaDensityFn f;
    f.filter = LinearFilter::parse(require(params, "filter", field));
    if (auto it = params.find("scale"); it != params.end()) f.innovation_scale = to_number(it->second, field);
    return FunctionSpec(f);
  }
  if (family == "ramp") {
    return FunctionSpec(HolderMemberFn{"ramp", to_number(require(params, "width", field), field),
                                       to_number(require(params, "theta", field), field)});
  }
  if (family == "tabulated") {
    return FunctionSpec(
        TabulatedFn{to_list(require(params, "grid", field), field), to_list(require(params, "values", field), field)});
  }
  throw UnresolvedReferenceError(field, "unknown function family '" + family + "'");
}

Catalog Catalog::parse(const std::string& text, const std::string& source) {
  Catalog cat;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string name;
    std::string family;
    if (!(words >> name)) continue;
    const std::string field = source + ":" + std::to_string(line_no);
    if (!(words >> family)) throw ConfigError(field, "entry '" + name + "' has no family");
    std::map<std::string, std::string> params;
    std::string kv;
    while (words >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError(field, "expected key=value, got '" + kv + "'");
      params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (cat.contains(name)) throw ConfigError(field, "duplicate entry '" + name + "'");
    cat.add(name, make_function(family, params, field));
  }
  return cat;
}

Catalog Catalog::load(const std::filesystem::path& path) { return parse(io::read_file(path), path.filename().string()); }

const FunctionSpec& Catalog::at(const std::string& name, const std::string& field) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw UnresolvedReferenceError(field, "catalog has no entry '" + name + "'");
  return it->second;
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

void Catalog::add(const std::string& name, FunctionSpec f) { entries_.insert_or_assign(name, std::move(f)); }

FunctionSpec function_from_json(const Json& j, const Catalog* catalog, const std::string& field) {
  if (j.is_string()) {
    if (!catalog) throw UnresolvedReferenceError(field, "no catalog given for reference '" + j.get<std::string>() + "'");
    return catalog->at(j.get<std::string>(), field);
  }
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
    throw ConfigError(field, "expected a catalog name or an object with a \"family\" key");
  }
  std::map<std::string, std::string> params;
  for (const auto& [key, value] : j.items()) {
    if (key == "family") continue;
    params[key] = json_scalar(value, field + "." + key);
  }
  return make_function(j.at("family").get<std::string>(), params, field);
}

}  // namespace stablespec
