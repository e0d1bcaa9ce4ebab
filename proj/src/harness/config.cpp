#include "lenssplit/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lenssplit::harness {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

double parse_number(std::string_view text, std::size_t line) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("expected a number, got '" + std::string(text) + "'", line);
  if (!std::isfinite(value)) throw ConfigError("number must be finite", line);
  return value;
}

Config Config::parse(std::string_view text) {
  Config cfg;
  std::string current;
  bool in_section = false;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    // Comments run from '#' or ';' to end of line.
    if (auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", lineno);
      auto name = trim(line.substr(1, line.size() - 2));
      if (!valid_name(name)) throw ConfigError("bad section name '" + std::string(name) + "'", lineno);
      current = lower(name);
      in_section = true;
      cfg.sections_[current];
    } else {
      auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", lineno);
      if (!in_section) throw ConfigError("key outside of any [section]", lineno);
      auto key = trim(line.substr(0, eq));
      auto value = trim(line.substr(eq + 1));
      if (!valid_name(key)) throw ConfigError("bad key '" + std::string(key) + "'", lineno);
      auto& sec = cfg.sections_[current];
      auto [it, inserted] = sec.emplace(lower(key), ConfigValue{std::string(value), lineno});
      if (!inserted)
        throw ConfigError("duplicate key '" + std::string(key) + "' (first set on line " +
                              std::to_string(it->second.line) + ")",
                          lineno);
    }
    if (end == text.size()) break;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file " + path.string());
  return parse(buf.str());
}

bool Config::has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

const ConfigValue* Config::find(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

void Config::set(const std::string& section, const std::string& key, std::string value) {
  sections_[lower(section)][lower(key)] = ConfigValue{std::move(value), 0};
}

std::string Config::text(const std::string& section, const std::string& key, const std::string& fallback) const {
  const auto* v = find(section, key);
  return v ? v->text : fallback;
}

std::optional<double> Config::number(const std::string& section, const std::string& key) const {
  const auto* v = find(section, key);
  if (!v) return std::nullopt;
  return parse_number(v->text, v->line);
}

double Config::number(const std::string& section, const std::string& key, double fallback) const {
  return number(section, key).value_or(fallback);
}

std::size_t Config::count(const std::string& section, const std::string& key, std::size_t fallback) const {
  const auto* v = find(section, key);
  if (!v) return fallback;
  const double d = parse_number(v->text, v->line);
  if (d < 0.0 || d != std::floor(d) || d > 1e15)
    throw ConfigError(section + "." + key + " must be a non-negative integer", v->line);
  return static_cast<std::size_t>(d);
}

bool Config::flag(const std::string& section, const std::string& key, bool fallback) const {
  const auto* v = find(section, key);
  if (!v) return fallback;
  const std::string t = lower(v->text);
  if (t == "on" || t == "true" || t == "yes" || t == "1") return true;
  if (t == "off" || t == "false" || t == "no" || t == "0") return false;
  throw ConfigError(section + "." + key + " must be on/off", v->line);
}

std::vector<std::string> Config::list(const std::string& section, const std::string& key) const {
  std::vector<std::string> out;
  const auto* v = find(section, key);
  if (!v) return out;
  std::string_view rest = v->text;
  while (true) {
    auto comma = rest.find(',');
    auto item = trim(rest.substr(0, comma));
    if (item.empty()) throw ConfigError(section + "." + key + ": empty list item", v->line);
    out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<double> Config::numbers(const std::string& section, const std::string& key) const {
  std::vector<double> out;
  const auto* v = find(section, key);
  for (const auto& item : list(section, key)) out.push_back(parse_number(item, v->line));
  return out;
}

std::vector<std::size_t> Config::counts(const std::string& section, const std::string& key) const {
  std::vector<std::size_t> out;
  const auto* v = find(section, key);
  for (double d : numbers(section, key)) {
    if (d < 0.0 || d != std::floor(d) || d > 1e15)
      throw ConfigError(section + "." + key + " must list non-negative integers", v->line);
    out.push_back(static_cast<std::size_t>(d));
  }
  return out;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [name, sec] : sections_) {
    if (!out.empty()) out += '\n';
    out += "[" + name + "]\n";
    for (const auto& [key, value] : sec) out += key + " = " + value.text + "\n";
  }
  return out;
}

}  // namespace lenssplit::harness
