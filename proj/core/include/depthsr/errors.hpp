#pragma once

#include <stdexcept>
#include <string>

namespace depthsr {

enum class ParseErrorKind {
  MalformedHeader,
  TruncatedPayload,
  UnsupportedFormat,
};

const char* to_string(ParseErrorKind kind);

/// Raised when an image file cannot be decoded.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ParseErrorKind kind() const noexcept { return kind_; }

 private:
  ParseErrorKind kind_;
};

/// Filesystem failures (missing file, unwritable path).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two images that must agree in size do not.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A NaN/Inf surfaced somewhere it must not. `stage()` names where.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string stage, const std::string& detail)
      : std::runtime_error("non-finite value after " + stage + ": " + detail),
        stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace depthsr
