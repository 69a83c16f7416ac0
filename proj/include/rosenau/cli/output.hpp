#pragma once

// CSV and SVG artifacts written by the experiment runners.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace rosenau::cli {

/// Failure to create or write an output file.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// printf("%.17g"): 17 significant digits, round-trips every double.
std::string format_number(double x);

/// Rows of fields written with a header line, numbers via format_number.
class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& values);
  /// Row with free-form text fields (footers, empty cells).
  void add_text_row(const std::vector<std::string>& fields);

  std::string str() const;
  void write(const std::filesystem::path& path) const;

private:
  std::vector<std::string> header_;
  std::vector<std::string> lines_;
};

void write_text(const std::filesystem::path& path, const std::string& contents);

/// Creates dir (and parents). Throws IoError.
void ensure_directory(const std::filesystem::path& dir);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 720;
  int height = 440;
};

/// Self-contained SVG line plot: axes, ticks, one polyline per series, legend.
std::string line_plot(const std::vector<Series>& series, const PlotOptions& opts);

/// A fixed palette for n curves.
std::string palette(std::size_t i);

} // namespace rosenau::cli
