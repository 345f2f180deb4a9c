#pragma once

#include <stdexcept>
#include <string>

namespace orclsim {

/// Invalid configuration: unknown stream names, malformed config files, bad networks.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed arguments outside an operation's domain.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A file is structurally unusable (missing or unrecognized header).
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input parsed, but too many rows were rejected to trust the analysis.
class DataQualityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orclsim
