#pragma once

#include "qls/config.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qlsim {

// Everything a subcommand needs from the command line.
struct Scenario {
  std::string name;
  std::string config_path; // empty: built-in defaults
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  bool emit_plots = false;
  std::optional<std::size_t> shots;
  std::string format = "csv";
};

class Context {
public:
  explicit Context(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  std::uint64_t seed() const { return scenario_.seed; }
  std::size_t shots_or(std::size_t fallback) const { return scenario_.shots.value_or(fallback); }

  // View of a top-level config section; missing sections are empty.
  qls::ConfigSection section(const std::string& name) const;
  const std::string& config_digest() const { return digest_; }

  // Writes `content` to output_dir/name through a temporary file and rename.
  void write_file(const std::string& name, const std::string& content);
  // MANIFEST listing subcommand, config digest, seed, version and the files written.
  void write_manifest();

private:
  Scenario scenario_;
  nlohmann::json root_;
  std::string digest_;
  std::vector<std::string> written_;
};

// Top-level config sections; anything else in a config file is an error.
const std::vector<std::string>& known_sections();

std::string json_text(const nlohmann::json& doc);

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// Minimal static line/marker plot as SVG text.
std::string svg_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series, bool markers = false);

} // namespace qlsim
