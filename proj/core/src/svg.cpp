#include "adisk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace adisk {

SvgPlot::SvgPlot(double width, double height) : width_(width), height_(height) {}

void SvgPlot::add_scatter(const std::vector<std::pair<double, double>>& xy,
                          const std::string& color, double radius) {
  series_.push_back({false, xy, color, radius});
}

void SvgPlot::add_polyline(const std::vector<std::pair<double, double>>& xy,
                           const std::string& color, double stroke) {
  series_.push_back({true, xy, color, stroke});
}

std::string SvgPlot::render() const {
  double lo_x = 0.0, hi_x = 1.0, lo_y = 0.0, hi_y = 1.0;
  bool first = true;
  for (const Series& s : series_)
    for (auto [x, y] : s.xy) {
      if (first) {
        lo_x = hi_x = x;
        lo_y = hi_y = y;
        first = false;
      }
      lo_x = std::min(lo_x, x);
      hi_x = std::max(hi_x, x);
      lo_y = std::min(lo_y, y);
      hi_y = std::max(hi_y, y);
    }
  const double pad_x = 0.05 * (hi_x - lo_x) + 1e-9;
  const double pad_y = 0.05 * (hi_y - lo_y) + 1e-9;
  lo_x -= pad_x;
  hi_x += pad_x;
  lo_y -= pad_y;
  hi_y += pad_y;

  auto sx = [&](double x) { return (x - lo_x) / (hi_x - lo_x) * width_; };
  auto sy = [&](double y) { return height_ - (y - lo_y) / (hi_y - lo_y) * height_; };

  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                width_, height_, width_, height_);
  out << buf;
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Series& s : series_) {
    if (s.line) {
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"";
      std::snprintf(buf, sizeof buf, "%.2f\" points=\"", s.size);
      out << buf;
      for (auto [x, y] : s.xy) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(x), sy(y));
        out << buf;
      }
      out << "\"/>\n";
    } else {
      for (auto [x, y] : s.xy) {
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\"/>\n", sx(x),
                      sy(y), s.size, s.color.c_str());
        out << buf;
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace adisk
