#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "stablespec/fourier.hpp"
#include "stablespec/limit_process.hpp"
#include "stablespec/report.hpp"
#include "stablespec/spectral.hpp"
#include "stablespec/timeseries.hpp"

namespace stablespec::io {

// Single-column CSV with header "value".
std::string path_csv(const SamplePath& path);
// alpha, origin, seed, stream and (for linear paths) the filter.
Json path_sidecar(const SamplePath& path);
// Values from a single-column CSV; metadata from the sidecar when given.
SamplePath read_path(const std::string& csv, const Json* sidecar = nullptr);

// "lambda,value" rows.
std::string spectral_csv(std::span<const SpectralEvaluation> evals);
// "h,a_h" rows for h = 0..K.
std::string coeffs_csv(const FourierCoeffs& a);

std::string limit_sample_csv(const LimitSample& sample);
Json limit_sample_sidecar(const LimitSample& sample, double alpha, const LimitScales& scales, std::uint64_t seed);

std::string sha256_hex(const std::string& bytes);

struct Artifact {
  std::string name;  // relative file name
  std::string content;
};

/// Manifest listing every artifact with its SHA-256 and size, sorted by name.
Json manifest(const Json& config, const Json& seeds, std::span<const Artifact> artifacts);

// Writes the bytes verbatim; creates parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Stable pretty form used for every JSON artifact.
std::string dump(const Json& j);

}  // namespace stablespec::io
