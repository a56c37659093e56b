#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qls::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // Text of '#' lines with the marker stripped, in file order.
  std::vector<std::string> comments;

  // Index of a header column; throws ConfigError when absent.
  std::size_t column(const std::string& name) const;
  bool has_column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  const std::string& text(std::size_t row, const std::string& name) const;
};

// Comma-separated, first line is the header, '#' starts a comment line.
// Quoting is not supported; fields must not contain commas.
Table read(std::istream& in);
Table read_file(const std::string& path);

// Fixed formatting used for every numeric CSV cell the tools emit, so that
// identical inputs give byte-identical files.
std::string format(double value, int precision = 12);

class Writer {
public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& cells);

private:
  std::ostream& out_;
};

} // namespace qls::csv
