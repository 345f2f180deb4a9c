#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orclsim {

/// Plain-text `key = value` configuration. Blank lines and lines starting with
/// '#' are ignored; keys may repeat (get_all returns them in file order).
class KeyValueFile {
 public:
  struct Entry {
    std::string key;
    std::string value;
    std::size_t line = 0;
  };

  /// Throws ConfigError on lines without '=' or with an empty key.
  static KeyValueFile parse(std::string_view text, std::string source = "<config>");
  static KeyValueFile load(const std::string& path);

  const std::string& source() const { return source_; }
  const std::vector<Entry>& entries() const { return entries_; }

  bool contains(std::string_view key) const;
  /// Last value for `key`.
  std::optional<std::string> get(std::string_view key) const;
  std::vector<std::string> get_all(std::string_view key) const;

  std::string get_or(std::string_view key, std::string fallback) const;
  double get_double(std::string_view key, double fallback) const;
  std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
  std::uint64_t get_uint(std::string_view key, std::uint64_t fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;

  void set(std::string key, std::string value);

 private:
  const Entry* last(std::string_view key) const;

  std::string source_;
  std::vector<Entry> entries_;
};

/// Parses a full-string double; std::nullopt on trailing garbage or empty input.
std::optional<double> parse_double(std::string_view text);
std::optional<std::int64_t> parse_int(std::string_view text);
std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char delimiter);
std::vector<std::string_view> split_whitespace(std::string_view text);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace orclsim
