#include "orclsim/keyvalue.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "orclsim/errors.hpp"

namespace orclsim {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char delimiter) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(delimiter, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r') ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  // U+2212 MINUS SIGN shows up in hand-edited logs.
  std::string normalized;
  if (text.starts_with("\xE2\x88\x92")) {
    normalized = "-" + std::string(text.substr(3));
    text = normalized;
  }
  // from_chars does not accept "nan"/"inf" spellings consistently; handle them here.
  if (text == "NaN" || text == "nan" || text == "NAN") return std::nan("");
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "NaN";
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

KeyValueFile KeyValueFile::parse(std::string_view text, std::string source) {
  KeyValueFile file;
  file.source_ = std::move(source);
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(file.source_ + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw ConfigError(file.source_ + ":" + std::to_string(line_no) + ": empty key");
    }
    file.entries_.push_back({std::string(key), std::string(trim(line.substr(eq + 1))), line_no});
  }
  return file;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

const KeyValueFile::Entry* KeyValueFile::last(std::string_view key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->key == key) return &*it;
  }
  return nullptr;
}

bool KeyValueFile::contains(std::string_view key) const { return last(key) != nullptr; }

std::optional<std::string> KeyValueFile::get(std::string_view key) const {
  if (const auto* e = last(key)) return e->value;
  return std::nullopt;
}

std::vector<std::string> KeyValueFile::get_all(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    if (e.key == key) out.push_back(e.value);
  }
  return out;
}

std::string KeyValueFile::get_or(std::string_view key, std::string fallback) const {
  if (const auto* e = last(key)) return e->value;
  return fallback;
}

namespace {
[[noreturn]] void bad_value(const std::string& source, const KeyValueFile::Entry& e,
                            const char* expected) {
  throw ConfigError(source + ":" + std::to_string(e.line) + ": '" + e.key + "' expects " +
                    expected + ", got '" + e.value + "'");
}
}  // namespace

double KeyValueFile::get_double(std::string_view key, double fallback) const {
  const auto* e = last(key);
  if (!e) return fallback;
  const auto v = parse_double(e->value);
  if (!v || !std::isfinite(*v)) bad_value(source_, *e, "a finite number");
  return *v;
}

std::int64_t KeyValueFile::get_int(std::string_view key, std::int64_t fallback) const {
  const auto* e = last(key);
  if (!e) return fallback;
  const auto v = parse_int(e->value);
  if (!v) bad_value(source_, *e, "an integer");
  return *v;
}

std::uint64_t KeyValueFile::get_uint(std::string_view key, std::uint64_t fallback) const {
  const auto* e = last(key);
  if (!e) return fallback;
  const auto text = trim(e->value);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    bad_value(source_, *e, "a non-negative integer");
  }
  return value;
}

bool KeyValueFile::get_bool(std::string_view key, bool fallback) const {
  const auto* e = last(key);
  if (!e) return fallback;
  if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
  if (e->value == "false" || e->value == "0" || e->value == "no") return false;
  bad_value(source_, *e, "a boolean");
}

void KeyValueFile::set(std::string key, std::string value) {
  entries_.push_back({std::move(key), std::move(value), 0});
}

}  // namespace orclsim
