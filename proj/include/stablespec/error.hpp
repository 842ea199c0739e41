#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace stablespec {

// Error categories map one-to-one onto the CLI exit codes.
enum class ErrorKind {
  kConfig,          // malformed input files (exit 2)
  kPrecondition,    // parameter outside its domain, unresolved reference (exit 3)
  kNumerical,       // degenerate data, quadrature failure (exit 4)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, std::string field, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)), field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Short machine-readable tag, e.g. "parameter_domain".
  const std::string& code() const noexcept { return code_; }
  // Name of the offending parameter or config field; may be empty.
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string code_;
  std::string field_;
};

class ParameterDomainError : public Error {
 public:
  ParameterDomainError(std::string field, const std::string& message)
      : Error(ErrorKind::kPrecondition, "parameter_domain", std::move(field), message) {}
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(ErrorKind::kConfig, "config_parse", std::move(field), message) {}
};

class UnresolvedReferenceError : public Error {
 public:
  UnresolvedReferenceError(std::string field, const std::string& message)
      : Error(ErrorKind::kPrecondition, "unresolved_reference", std::move(field), message) {}
};

class DegenerateError : public Error {
 public:
  DegenerateError(std::string field, const std::string& message)
      : Error(ErrorKind::kNumerical, "degenerate", std::move(field), message) {}
};

class AlignmentError : public Error {
 public:
  explicit AlignmentError(const std::string& message)
      : Error(ErrorKind::kPrecondition, "alignment", "path", message) {}
};

class TruncationError : public Error {
 public:
  TruncationError(std::string field, const std::string& message)
      : Error(ErrorKind::kPrecondition, "truncation", std::move(field), message) {}
};

class ToleranceError : public Error {
 public:
  ToleranceError(std::string field, const std::string& message)
      : Error(ErrorKind::kNumerical, "tolerance", std::move(field), message) {}
};

}  // namespace stablespec
