#include "stablespec/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "stablespec/error.hpp"

namespace stablespec::io {

namespace {

std::string origin_name(PathOrigin o) {
  switch (o) {
    case PathOrigin::kIid:
      return "iid";
    case PathOrigin::kLinear:
      return "linear";
    case PathOrigin::kExternal:
      return "external";
  }
  return "external";
}

PathOrigin parse_origin(const std::string& s) {
  if (s == "iid") return PathOrigin::kIid;
  if (s == "linear") return PathOrigin::kLinear;
  if (s == "external") return PathOrigin::kExternal;
  throw ConfigError("origin", "unknown path origin '" + s + "'");
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string path_csv(const SamplePath& path) {
  std::string out = "value\r\n";
  for (double v : path.values) {
    out += format_double(v);
    out += "\r\n";
  }
  return out;
}

Json path_sidecar(const SamplePath& path) {
  Json j;
  j["alpha"] = path.alpha;
  j["origin"] = origin_name(path.provenance.origin);
  j["seed"] = path.provenance.stream.master_seed;
  j["stream"] = path.provenance.stream.stream_id;
  if (path.provenance.filter) j["filter"] = path.provenance.filter->describe();
  j["n"] = path.size();
  return j;
}

SamplePath read_path(const std::string& csv, const Json* sidecar) {
  SamplePath path;
  std::istringstream in(csv);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line == "value") continue;
    }
    double v = 0.0;
    const auto* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(line.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
      throw ConfigError("csv:line " + std::to_string(line_no), "not a number: '" + line + "'");
    }
    path.values.push_back(v);
  }
  if (sidecar) {
    try {
      path.alpha = sidecar->at("alpha").get<double>();
      path.provenance.origin = parse_origin(sidecar->value("origin", "external"));
      path.provenance.stream.master_seed = sidecar->value("seed", std::uint64_t{0});
      path.provenance.stream.stream_id = sidecar->value("stream", std::uint64_t{0});
      if (sidecar->contains("filter")) path.provenance.filter = LinearFilter::parse(sidecar->at("filter").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("sidecar", e.what());
    }
  }
  path.validate();
  return path;
}

std::string spectral_csv(std::span<const SpectralEvaluation> evals) {
  std::string out = "lambda,value\r\n";
  for (const auto& e : evals) out += format_double(e.lambda) + "," + format_double(e.value) + "\r\n";
  return out;
}

std::string coeffs_csv(const FourierCoeffs& a) {
  std::string out = "h,a_h\r\n";
  for (std::size_t h = 0; h < a.a.size(); ++h) out += std::to_string(h) + "," + format_double(a.a[h]) + "\r\n";
  return out;
}

std::string limit_sample_csv(const LimitSample& sample) {
  std::string out = "value\r\n";
  for (double v : sample.values) out += format_double(v) + "\r\n";
  return out;
}

Json limit_sample_sidecar(const LimitSample& sample, double alpha, const LimitScales& scales, std::uint64_t seed) {
  Json j;
  j["alpha"] = alpha;
  j["scales"] = Json{{"mode", to_string(scales.provenance)}, {"sigma1", scales.sigma1}, {"sigma2", scales.sigma2}};
  j["K"] = sample.truncation;
  j["seed"] = seed;
  j["count"] = sample.values.size();
  return j;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

Json manifest(const Json& config, const Json& seeds, std::span<const Artifact> artifacts) {
  std::vector<const Artifact*> sorted;
  for (const auto& a : artifacts) sorted.push_back(&a);
  std::sort(sorted.begin(), sorted.end(), [](const Artifact* x, const Artifact* y) { return x->name < y->name; });
  Json list = Json::array();
  for (const auto* a : sorted) {
    list.push_back(Json{{"file", a->name}, {"sha256", sha256_hex(a->content)}, {"bytes", a->content.size()}});
  }
  Json j;
  j["config"] = config;
  j["seeds"] = seeds;
  j["artifacts"] = std::move(list);
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("path", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace stablespec::io
