#include "qls/config.hpp"

#include "qls/errors.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

namespace qls {

ConfigSection::ConfigSection(const nlohmann::json& node, std::string path)
    : node_(node), path_(std::move(path)) {
  if (!node_.is_null() && !node_.is_object())
    throw ConfigError(path_ + ": expected an object");
}

ConfigSection ConfigSection::empty(std::string path) {
  return ConfigSection(nlohmann::json::object(), std::move(path));
}

bool ConfigSection::has(const std::string& key) const {
  return node_.is_object() && node_.contains(key);
}

const nlohmann::json* ConfigSection::lookup(const std::string& key) {
  seen_.insert(key);
  if (!has(key)) return nullptr;
  return &node_.at(key);
}

double ConfigSection::number(const std::string& key, double fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError(path_ + "." + key + ": expected a number");
  return v->get<double>();
}

double ConfigSection::number(const std::string& key) {
  if (!has(key)) throw ConfigError(path_ + "." + key + ": required key missing");
  return number(key, 0.0);
}

long long ConfigSection::integer(const std::string& key, long long fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw ConfigError(path_ + "." + key + ": expected an integer");
  return v->get<long long>();
}

bool ConfigSection::boolean(const std::string& key, bool fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ConfigError(path_ + "." + key + ": expected true/false");
  return v->get<bool>();
}

std::string ConfigSection::text(const std::string& key, const std::string& fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError(path_ + "." + key + ": expected a string");
  return v->get<std::string>();
}

std::vector<double> ConfigSection::numbers(const std::string& key, std::vector<double> fallback) {
  const auto* v = lookup(key);
  if (!v) return fallback;
  if (!v->is_array()) throw ConfigError(path_ + "." + key + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : *v) {
    if (!x.is_number()) throw ConfigError(path_ + "." + key + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

ConfigSection ConfigSection::section(const std::string& key) {
  const auto* v = lookup(key);
  if (!v) return empty(path_ + "." + key);
  return ConfigSection(*v, path_ + "." + key);
}

std::vector<ConfigSection> ConfigSection::sections(const std::string& key) {
  const auto* v = lookup(key);
  std::vector<ConfigSection> out;
  if (!v) return out;
  if (!v->is_array()) throw ConfigError(path_ + "." + key + ": expected an array of objects");
  for (std::size_t i = 0; i < v->size(); ++i)
    out.emplace_back((*v)[i], path_ + "." + key + "[" + std::to_string(i) + "]");
  return out;
}

std::vector<std::string> ConfigSection::keys() const {
  std::vector<std::string> out;
  if (node_.is_object())
    for (const auto& item : node_.items()) out.push_back(item.key());
  return out;
}

void ConfigSection::finish() const {
  if (!node_.is_object()) return;
  for (const auto& item : node_.items())
    if (!seen_.count(item.key()))
      throw ConfigError(path_ + "." + item.key() + ": unknown key");
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

std::string config_digest(const nlohmann::json& doc) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : doc.dump()) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

} // namespace qls
