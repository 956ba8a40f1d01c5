#pragma once

#include <string>
#include <vector>

namespace taubnut {

inline constexpr const char* kVersion = "1.0.0";

/// Write `content` atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// CSV with a header row and a leading provenance comment
/// "# provenance: params=a,b,c,d seed=S version=V".
/// Numbers are printed with 15 significant digits.
struct CsvWriter {
  explicit CsvWriter(std::vector<std::string> columns);
  void provenance(const std::string& params, long seed);
  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& values);
  std::string str() const;
  void save(const std::string& path) const;

 private:
  std::string head_, body_;
  std::size_t ncols_;
};

std::string format_g15(double v);

/// Deterministic SVG line plot: fixed 800x500 canvas, fixed precision.
struct SvgPlot {
  std::string title, xlabel, ylabel;
  bool log_y = false;  // plot log10 of the values
  struct Series {
    std::string label;
    std::vector<double> x, y;
  };
  std::vector<Series> series;
  std::string render() const;
  void save(const std::string& path) const;
};

/// Parse "lo:hi:count" sweep syntax into a linearly spaced vector.
std::vector<double> parse_sweep(const std::string& spec);

}  // namespace taubnut
