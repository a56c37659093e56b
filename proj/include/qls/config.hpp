#pragma once

#include <json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qls {

// Read-tracking view over one JSON object of the shared configuration file.
// Every key must be consumed before finish(); leftovers are reported as
// ConfigError so that a misspelt key never silently falls back to a default.
class ConfigSection {
public:
  ConfigSection(const nlohmann::json& node, std::string path);

  static ConfigSection empty(std::string path);

  bool has(const std::string& key) const;

  double number(const std::string& key, double fallback);
  double number(const std::string& key);
  long long integer(const std::string& key, long long fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback);

  // Nested object; missing keys produce an empty section.
  ConfigSection section(const std::string& key);
  // Array of objects, in file order; missing key gives an empty list.
  std::vector<ConfigSection> sections(const std::string& key);
  // Keys of a nested object whose names are data (e.g. species labels).
  std::vector<std::string> keys() const;

  void finish() const;

  const std::string& path() const { return path_; }

private:
  const nlohmann::json* lookup(const std::string& key);

  nlohmann::json node_;
  std::string path_;
  std::set<std::string> seen_;
};

// Parses the whole file; section() of the result hands out per-module views.
nlohmann::json load_config_file(const std::string& path);

// Stable 64-bit FNV-1a digest of the canonical dump of a JSON document.
std::string config_digest(const nlohmann::json& doc);

} // namespace qls
