#pragma once

#include <string>
#include <vector>

namespace stovex::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool step = false;  // right-continuous step plot instead of a polyline
};

struct PlotLabels {
  std::string title;
  std::string x_axis;
  std::string y_axis;
};

// Line or step plot with axes and a legend. Throws IoError on empty input
// or when the file cannot be written.
void write_series_svg(const std::vector<Series>& series, const PlotLabels& labels,
                      const std::string& path);
std::string series_svg(const std::vector<Series>& series, const PlotLabels& labels);

// Grayscale heatmap of values[row][col]; row 0 is drawn at the bottom.
void write_heatmap_svg(const std::vector<std::vector<double>>& values, const PlotLabels& labels,
                       const std::string& path);
std::string heatmap_svg(const std::vector<std::vector<double>>& values, const PlotLabels& labels);

}  // namespace stovex::cli
