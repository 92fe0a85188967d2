#ifndef ADISK_SVG_HPP
#define ADISK_SVG_HPP

#include <string>
#include <vector>

namespace adisk {

/// Minimal deterministic SVG emitter for scatter and line plots.
class SvgPlot {
 public:
  SvgPlot(double width = 640.0, double height = 640.0);

  void add_scatter(const std::vector<std::pair<double, double>>& xy,
                   const std::string& color, double radius = 1.5);
  void add_polyline(const std::vector<std::pair<double, double>>& xy,
                    const std::string& color, double stroke = 1.5);

  /// Renders with axes fitted to the data plus a margin.
  std::string render() const;

 private:
  struct Series {
    bool line;
    std::vector<std::pair<double, double>> xy;
    std::string color;
    double size;
  };
  double width_, height_;
  std::vector<Series> series_;
};

}  // namespace adisk

#endif  // ADISK_SVG_HPP
