#include "context.hpp"

#include "qls/errors.hpp"
#include "qls/util/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef QLS_VERSION
#define QLS_VERSION "unknown"
#endif

namespace qlsim {

namespace fs = std::filesystem;

const std::vector<std::string>& known_sections() {
  static const std::vector<std::string> names{
      "species", "trap",  "protocol", "modes",  "spectrum", "rabi",   "ramsey",    "pump",
      "qls_batch", "clock_scan", "fit", "test_ramsey_dependence", "budget", "compare", "chain", "anchors"};
  return names;
}

Context::Context(Scenario scenario) : scenario_(std::move(scenario)), root_(nlohmann::json::object()) {
  if (!scenario_.config_path.empty()) {
    root_ = qls::load_config_file(scenario_.config_path);
    if (!root_.is_object()) throw qls::ConfigError("config root must be an object");
    for (const auto& [key, value] : root_.items()) {
      const auto& names = known_sections();
      if (std::find(names.begin(), names.end(), key) == names.end())
        throw qls::ConfigError("unknown config section '" + key + "'");
    }
    digest_ = qls::config_digest(root_);
  } else {
    digest_ = "defaults";
  }
}

qls::ConfigSection Context::section(const std::string& name) const {
  if (root_.contains(name)) return qls::ConfigSection(root_.at(name), name);
  return qls::ConfigSection::empty(name);
}

void Context::write_file(const std::string& name, const std::string& content) {
  const fs::path dir(scenario_.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw qls::ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const fs::path target = dir / name;
  const fs::path tmp = dir / ("." + name + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw qls::ConfigError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw qls::ConfigError("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target, ec);
  if (ec) throw qls::ConfigError("cannot move output into place: " + ec.message());
  if (std::find(written_.begin(), written_.end(), name) == written_.end()) written_.push_back(name);
}

void Context::write_manifest() {
  std::ostringstream m;
  m << "subcommand: " << scenario_.name << "\n";
  m << "config: " << (scenario_.config_path.empty() ? "(defaults)" : scenario_.config_path) << "\n";
  m << "config_hash: " << digest_ << "\n";
  m << "seed: " << scenario_.seed << "\n";
  m << "version: " << QLS_VERSION << "\n";
  for (const auto& f : written_) m << "file: " << f << "\n";
  write_file("MANIFEST", m.str());
}

std::string json_text(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

std::string svg_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series, bool markers) {
  constexpr double width = 640, height = 400, left = 70, right = 20, top = 40, bottom = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  if (!(x1 > x0)) x0 -= 0.5, x1 += 0.5;
  if (!(y1 > y0)) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad, y1 += pad;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
  auto py = [&](double y) { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); };
  auto num = [](double v) { return qls::csv::format(v, 6); };
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right << "\" height=\""
    << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
    o << "<text x=\"" << px(xv) << "\" y=\"" << height - bottom + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
      << num(xv) << "</text>\n";
    o << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << num(yv)
      << "</text>\n";
  }
  o << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
    << x_label << "</text>\n";
  o << "<text x=\"16\" y=\"" << height / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
    << height / 2 << ")\">" << y_label << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* c = colours[i % 5];
    if (markers) {
      for (const auto& [x, y] : series[i].points)
        o << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
    } else {
      o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : series[i].points) o << num(px(x)) << "," << num(py(y)) << " ";
      o << "\"/>\n";
    }
    o << "<text x=\"" << width - right - 6 << "\" y=\"" << top + 16 + 14 * i << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
      << c << "\">" << series[i].label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

} // namespace qlsim
