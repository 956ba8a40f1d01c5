#include "taubnut/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace taubnut {

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string format_g15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : ncols_(columns.size()) {
  std::ostringstream h;
  for (std::size_t i = 0; i < columns.size(); ++i)
    h << (i ? "," : "") << columns[i];
  h << '\n';
  head_ = h.str();
}

void CsvWriter::provenance(const std::string& params, long seed) {
  head_ = "# provenance: params=" + params + " seed=" + std::to_string(seed) +
          " version=" + kVersion + "\n" + head_;
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != ncols_)
    throw std::invalid_argument("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i)
    body_ += (i ? "," : "") + format_g15(values[i]);
  body_ += '\n';
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
  if (values.size() != ncols_)
    throw std::invalid_argument("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i)
    body_ += (i ? "," : "") + values[i];
  body_ += '\n';
}

std::string CsvWriter::str() const { return head_ + body_; }

void CsvWriter::save(const std::string& path) const {
  write_file_atomic(path, str());
}

namespace {

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

constexpr double kW = 800, kH = 500;
constexpr double kL = 70, kR = 20, kT = 40, kB = 50;  // margins

}  // namespace

std::string SvgPlot::render() const {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double yv = log_y ? std::log10(std::max(s.y[i], 1e-300)) : s.y[i];
      if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) continue;
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = yv;
        first = false;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, yv);
        ymax = std::max(ymax, yv);
      }
    }
  if (xmax - xmin < 1e-30) xmax = xmin + 1;
  if (ymax - ymin < 1e-30) ymax = ymin + 1;

  auto px = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * (kW - kL - kR); };
  auto py = [&](double y) { return kH - kB - (y - ymin) / (ymax - ymin) * (kH - kT - kB); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                 "#9467bd", "#8c564b"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n"
      << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n"
      << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
      << "</text>\n"
      << "<text x=\"400\" y=\"490\" text-anchor=\"middle\" font-size=\"13\">" << xlabel
      << "</text>\n"
      << "<text x=\"16\" y=\"250\" text-anchor=\"middle\" font-size=\"13\" "
         "transform=\"rotate(-90 16 250)\">"
      << (log_y ? "log10 " : "") << ylabel << "</text>\n"
      << "<rect x=\"" << fmt3(kL) << "\" y=\"" << fmt3(kT) << "\" width=\""
      << fmt3(kW - kL - kR) << "\" height=\"" << fmt3(kH - kT - kB)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    double xv = xmin + t * (xmax - xmin) / 4;
    double yv = ymin + t * (ymax - ymin) / 4;
    svg << "<text x=\"" << fmt3(px(xv)) << "\" y=\"" << fmt3(kH - kB + 16)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << format_g15(std::round(xv * 1e6) / 1e6)
        << "</text>\n"
        << "<text x=\"" << fmt3(kL - 6) << "\" y=\"" << fmt3(py(yv) + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_g15(std::round(yv * 1e6) / 1e6)
        << "</text>\n";
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    svg << "<polyline fill=\"none\" stroke=\"" << colors[k % 6]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double yv = log_y ? std::log10(std::max(s.y[i], 1e-300)) : s.y[i];
      if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) continue;
      svg << fmt3(px(s.x[i])) << ',' << fmt3(py(yv)) << ' ';
    }
    svg << "\"/>\n";
    if (!s.label.empty())
      svg << "<text x=\"" << fmt3(kW - kR - 8) << "\" y=\"" << fmt3(kT + 18 + 16.0 * k)
          << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << colors[k % 6] << "\">"
          << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void SvgPlot::save(const std::string& path) const {
  write_file_atomic(path, render());
}

std::vector<double> parse_sweep(const std::string& spec) {
  double lo, hi;
  int count;
  char c1, c2;
  std::istringstream in(spec);
  if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1)
    throw std::invalid_argument("expected lo:hi:count, got '" + spec + "'");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return out;
}

}  // namespace taubnut
