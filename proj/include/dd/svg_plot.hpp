#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dd {

struct SvgCurve {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#000000";
  std::string label;
  bool dashed = false;
};

struct SvgPlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<SvgCurve> curves;
  std::vector<double> x_markers;  // vertical reference lines (e.g. t_H)
  int width = 720;
  int height = 480;
};

// Self-contained SVG line plot; nonpositive values are dropped on log axes.
void write_svg_plot(const SvgPlotSpec& spec, std::ostream& out);

struct SvgGridSpec {
  std::string title;
  std::string x_label;  // spacing d
  std::string y_label;  // disorder w
  std::vector<double> x_values;
  std::vector<double> y_values;
  // row-major cell values, rows indexed by y, columns by x; NaN = no data
  std::vector<double> values;
  double v_min = 0;
  double v_max = 1;
  int cell_px = 72;
};

// Intensity plot: blue (low) to red (high) with per-cell value labels.
void write_svg_grid(const SvgGridSpec& spec, std::ostream& out);

}  // namespace dd
