#include "stovex_cli/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stovex/errors.hpp"

namespace stovex::cli {

namespace {

constexpr double kWidth = 640.0, kHeight = 420.0;
constexpr double kLeft = 60.0, kRight = 20.0, kTop = 36.0, kBottom = 48.0;
const std::array<const char*, 4> kColors{"#1f4e9c", "#c0392b", "#2e7d32", "#6a1b9a"};

std::string num(double v) {
  std::array<char, 32> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
  return std::string(buf.data(), r.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

void header(std::ostringstream& os, const PlotLabels& labels) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
     << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(labels.title) << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f, const PlotLabels& labels) {
  os << "<g stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kHeight - kBottom) << "\" x2=\""
     << num(kWidth - kRight) << "\" y2=\"" << num(kHeight - kBottom) << "\"/>\n";
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
     << "\" y2=\"" << num(kHeight - kBottom) << "\"/>\n";
  os << "</g>\n<g font-size=\"11\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = f.x0 + (f.x1 - f.x0) * k / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * k / 4.0;
    os << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << num(kHeight - kBottom + 16)
       << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(f.py(yv) + 4)
       << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  os << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 10)
     << "\" text-anchor=\"middle\">" << escape(labels.x_axis) << "</text>\n";
  os << "<text x=\"16\" y=\"" << num((kTop + kHeight - kBottom) / 2)
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << num((kTop + kHeight - kBottom) / 2)
     << ")\">" << escape(labels.y_axis) << "</text>\n</g>\n";
}

void save(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot open " + path);
  out << text;
  out.flush();
  if (!out) fail(Errc::IoError, "write failed for " + path);
}

}  // namespace

std::string series_svg(const std::vector<Series>& series, const PlotLabels& labels) {
  bool any = false;
  Frame f{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const Series& s : series) {
    if (s.x.size() != s.y.size()) fail(Errc::IoError, "series '" + s.label + "' is ragged");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      any = true;
      f.x0 = std::min(f.x0, s.x[i]);
      f.x1 = std::max(f.x1, s.x[i]);
      f.y0 = std::min(f.y0, s.y[i]);
      f.y1 = std::max(f.y1, s.y[i]);
    }
  }
  if (!any) fail(Errc::IoError, "refusing to plot an empty series");
  if (f.x1 == f.x0) f.x1 = f.x0 + 1.0;
  if (f.y1 == f.y0) f.y1 = f.y0 + 1.0;

  std::ostringstream os;
  header(os, labels);
  axes(os, f, labels);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = kColors[k % kColors.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.step && i > 0) os << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i - 1])) << ' ';
      os << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i])) << ' ';
    }
    os << "\"/>\n";
    const double ly = kTop + 8 + 16.0 * static_cast<double>(k);
    os << "<line x1=\"" << num(kLeft + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(kLeft + 36)
       << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(kLeft + 42) << "\" y=\"" << num(ly + 4) << "\" font-size=\"12\">"
       << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_series_svg(const std::vector<Series>& series, const PlotLabels& labels,
                      const std::string& path) {
  save(series_svg(series, labels), path);
}

std::string heatmap_svg(const std::vector<std::vector<double>>& values, const PlotLabels& labels) {
  if (values.empty() || values.front().empty()) fail(Errc::IoError, "refusing to plot an empty grid");
  const std::size_t rows = values.size(), cols = values.front().size();
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& r : values) {
    if (r.size() != cols) fail(Errc::IoError, "heatmap rows differ in length");
    for (double v : r) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double span = hi > lo ? hi - lo : 1.0;
  Frame f{0.0, static_cast<double>(cols), 0.0, static_cast<double>(rows)};
  const double cw = (kWidth - kLeft - kRight) / static_cast<double>(cols);
  const double ch = (kHeight - kTop - kBottom) / static_cast<double>(rows);

  std::ostringstream os;
  header(os, labels);
  os << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const int g = static_cast<int>(std::lround(255.0 * (1.0 - (values[r][c] - lo) / span)));
      os << "<rect x=\"" << num(f.px(static_cast<double>(c))) << "\" y=\""
         << num(f.py(static_cast<double>(r + 1))) << "\" width=\"" << num(cw) << "\" height=\""
         << num(ch) << "\" fill=\"rgb(" << g << ',' << g << ',' << g << ")\"/>\n";
    }
  }
  os << "</g>\n";
  axes(os, f, labels);
  os << "</svg>\n";
  return os.str();
}

void write_heatmap_svg(const std::vector<std::vector<double>>& values, const PlotLabels& labels,
                       const std::string& path) {
  save(heatmap_svg(values, labels), path);
}

}  // namespace stovex::cli
