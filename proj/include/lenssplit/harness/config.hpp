#pragma once

// Flat sectioned key = value configuration:
//
//   # comment
//   [equation]
//   kind = log
//   lambda = -3
//
// Keys are unique per section. Typed getters report the offending line.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lenssplit::harness {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// File system failure while reading configs or writing results.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigValue {
  std::string text;
  std::size_t line = 0;  ///< 0 for values set programmatically
};

class Config {
 public:
  using Section = std::map<std::string, ConfigValue>;

  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& section, const std::string& key) const;
  const ConfigValue* find(const std::string& section, const std::string& key) const;
  /// Overrides or adds a value.
  void set(const std::string& section, const std::string& key, std::string value);

  std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
  double number(const std::string& section, const std::string& key, double fallback) const;
  std::optional<double> number(const std::string& section, const std::string& key) const;
  std::size_t count(const std::string& section, const std::string& key, std::size_t fallback) const;
  bool flag(const std::string& section, const std::string& key, bool fallback) const;
  /// Comma separated list; empty when the key is absent.
  std::vector<std::string> list(const std::string& section, const std::string& key) const;
  std::vector<double> numbers(const std::string& section, const std::string& key) const;
  std::vector<std::size_t> counts(const std::string& section, const std::string& key) const;

  const std::map<std::string, Section>& sections() const noexcept { return sections_; }
  /// Normalised text (sorted sections and keys) that parses back to an equal config.
  std::string canonical() const;

 private:
  std::map<std::string, Section> sections_;
};

/// Parses a floating-point literal (whole string). Throws ConfigError.
double parse_number(std::string_view text, std::size_t line = 0);

}  // namespace lenssplit::harness
