#include "dd/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace dd {

namespace {

constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 55;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;
  double px0 = 0, px1 = 1;

  double to_px(double v) const {
    double t = log ? (std::log10(v) - std::log10(lo)) /
                         (std::log10(hi) - std::log10(lo))
                   : (v - lo) / (hi - lo);
    return px0 + t * (px1 - px0);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const int e0 = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
      const int e1 = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
      for (int e = e0; e <= e1; ++e) out.push_back(std::pow(10.0, e));
    } else {
      const double span = hi - lo;
      const double step = std::pow(10.0, std::floor(std::log10(span / 4)));
      const double mult = span / step > 8 ? 2.0 : 1.0;
      for (double v = std::ceil(lo / (step * mult)) * step * mult; v <= hi;
           v += step * mult)
        out.push_back(v);
    }
    return out;
  }
};

void svg_header(std::ostream& out, int w, int h) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
      << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

void write_svg_plot(const SvgPlotSpec& spec, std::ostream& out) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& c : spec.curves) {
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      if (spec.log_x && c.x[i] <= 0) continue;
      if (spec.log_y && c.y[i] <= 0) continue;
      x_lo = std::min(x_lo, c.x[i]);
      x_hi = std::max(x_hi, c.x[i]);
      y_lo = std::min(y_lo, c.y[i]);
      y_hi = std::max(y_hi, c.y[i]);
    }
  }
  if (!(x_lo < x_hi)) { x_lo = spec.log_x ? 0.1 : 0; x_hi = 1; }
  if (!(y_lo < y_hi)) {
    y_lo = spec.log_y ? std::max(y_lo * 0.5, 1e-300) : y_lo - 0.5;
    y_hi = y_lo * (spec.log_y ? 4 : 1) + (spec.log_y ? 0 : 1);
  }

  Axis ax{x_lo, x_hi, spec.log_x, static_cast<double>(kMarginLeft),
          static_cast<double>(spec.width - kMarginRight)};
  Axis ay{y_lo, y_hi, spec.log_y,
          static_cast<double>(spec.height - kMarginBottom),
          static_cast<double>(kMarginTop)};

  svg_header(out, spec.width, spec.height);
  out << "<text x=\"" << spec.width / 2 << "\" y=\"20\" text-anchor=\"middle\""
      << " font-family=\"sans-serif\" font-size=\"15\">" << spec.title
      << "</text>\n";

  // frame and ticks
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop
      << "\" width=\"" << spec.width - kMarginLeft - kMarginRight
      << "\" height=\"" << spec.height - kMarginTop - kMarginBottom
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double v : ax.ticks()) {
    const double px = ax.to_px(v);
    out << "<line x1=\"" << px << "\" y1=\"" << spec.height - kMarginBottom
        << "\" x2=\"" << px << "\" y2=\"" << spec.height - kMarginBottom + 5
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << px << "\" y=\"" << spec.height - kMarginBottom + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"11\">" << fmt(v) << "</text>\n";
  }
  for (double v : ay.ticks()) {
    const double py = ay.to_px(v);
    out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << py << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\""
        << " font-size=\"11\">" << fmt(v) << "</text>\n";
  }
  out << "<text x=\"" << (kMarginLeft + spec.width - kMarginRight) / 2
      << "\" y=\"" << spec.height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"13\">" << spec.x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << spec.height / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"13\" transform=\"rotate(-90 18 " << spec.height / 2
      << ")\">" << spec.y_label << "</text>\n";

  for (double xm : spec.x_markers) {
    if (xm < x_lo || xm > x_hi) continue;
    const double px = ax.to_px(xm);
    out << "<line x1=\"" << px << "\" y1=\"" << kMarginTop << "\" x2=\"" << px
        << "\" y2=\"" << spec.height - kMarginBottom
        << "\" stroke=\"gray\" stroke-dasharray=\"5,4\"/>\n";
  }

  int legend_y = kMarginTop + 15;
  for (const auto& c : spec.curves) {
    out << "<polyline fill=\"none\" stroke=\"" << c.color
        << "\" stroke-width=\"1.3\"";
    if (c.dashed) out << " stroke-dasharray=\"6,4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      if (spec.log_x && c.x[i] <= 0) continue;
      if (spec.log_y && c.y[i] <= 0) continue;
      out << fmt(ax.to_px(c.x[i])) << ',' << fmt(ay.to_px(c.y[i])) << ' ';
    }
    out << "\"/>\n";
    if (!c.label.empty()) {
      out << "<line x1=\"" << spec.width - 190 << "\" y1=\"" << legend_y
          << "\" x2=\"" << spec.width - 160 << "\" y2=\"" << legend_y
          << "\" stroke=\"" << c.color << "\""
          << (c.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n"
          << "<text x=\"" << spec.width - 154 << "\" y=\"" << legend_y + 4
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << c.label
          << "</text>\n";
      legend_y += 16;
    }
  }
  out << "</svg>\n";
}

void write_svg_grid(const SvgGridSpec& spec, std::ostream& out) {
  const int nx = static_cast<int>(spec.x_values.size());
  const int ny = static_cast<int>(spec.y_values.size());
  const int w = kMarginLeft + nx * spec.cell_px + kMarginRight;
  const int h = kMarginTop + ny * spec.cell_px + kMarginBottom;
  svg_header(out, w, h);
  out << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\""
      << " font-family=\"sans-serif\" font-size=\"15\">" << spec.title
      << "</text>\n";

  auto color = [&](double v) -> std::string {
    if (std::isnan(v)) return "#cccccc";
    double t = (v - spec.v_min) / (spec.v_max - spec.v_min);
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(40 + 215 * t);
    const int g = static_cast<int>(60 + 40 * (1 - std::abs(2 * t - 1)));
    const int b = static_cast<int>(40 + 215 * (1 - t));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
  };

  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const double v = spec.values[iy * nx + ix];
      const int x = kMarginLeft + ix * spec.cell_px;
      const int y = kMarginTop + (ny - 1 - iy) * spec.cell_px;
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\""
          << spec.cell_px << "\" height=\"" << spec.cell_px << "\" fill=\""
          << color(v) << "\" stroke=\"white\"/>\n";
      if (!std::isnan(v))
        out << "<text x=\"" << x + spec.cell_px / 2 << "\" y=\""
            << y + spec.cell_px / 2 + 4
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
            << " font-size=\"11\" fill=\"white\">" << fmt(v) << "</text>\n";
    }
  }
  for (int ix = 0; ix < nx; ++ix)
    out << "<text x=\"" << kMarginLeft + ix * spec.cell_px + spec.cell_px / 2
        << "\" y=\"" << kMarginTop + ny * spec.cell_px + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"12\">" << fmt(spec.x_values[ix]) << "</text>\n";
  for (int iy = 0; iy < ny; ++iy)
    out << "<text x=\"" << kMarginLeft - 8 << "\" y=\""
        << kMarginTop + (ny - 1 - iy) * spec.cell_px + spec.cell_px / 2 + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\""
        << " font-size=\"12\">" << fmt(spec.y_values[iy]) << "</text>\n";
  out << "<text x=\"" << kMarginLeft + nx * spec.cell_px / 2 << "\" y=\""
      << h - 12 << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"13\">" << spec.x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << kMarginTop + ny * spec.cell_px / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"13\" transform=\"rotate(-90 16 "
      << kMarginTop + ny * spec.cell_px / 2 << ")\">" << spec.y_label
      << "</text>\n";
  out << "</svg>\n";
}

}  // namespace dd
