#ifndef ADISK_MEASURE_HPP
#define ADISK_MEASURE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "adisk/analytic_map.hpp"
#include "adisk/types.hpp"

namespace adisk {

/// Weighted point cloud in C^n of total mass 1. Represents a holomorphic or
/// Jensen measure by boundary samples.
class EmpiricalMeasure {
 public:
  EmpiricalMeasure(std::vector<Point> points, std::vector<double> weights);

  static EmpiricalMeasure atom(Point c);

  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  int dim() const { return points_.empty() ? 0 : static_cast<int>(points_[0].size()); }
  std::size_t size() const { return points_.size(); }
  /// Radius of the recorded ball containing every point.
  double ambient_radius() const { return ambient_radius_; }

  void to_csv(std::ostream& out) const;

 private:
  std::vector<Point> points_;
  std::vector<double> weights_;
  double ambient_radius_ = 0.0;
};

/// Boundary push-forward of normalized arc length: equal weights at
/// f(e^{i theta_k}) over the uniform grid.
EmpiricalMeasure pushforward(const AnalyticMap& f, const BoundaryGrid& grid);

/// Barycenter of the measure. For a push-forward of a polynomial disk this
/// equals f(0) exactly once the grid exceeds the degree (trapezoid rule is
/// exact on trigonometric polynomials).
Point center(const EmpiricalMeasure& mu);

/// Mixed moments int z^alpha conj(z)^beta d(mu) for |alpha|+|beta| <= dmax.
class MomentVector {
 public:
  struct Entry {
    std::vector<int> alpha, beta;
    Cx value;
  };

  MomentVector(int dim, int dmax, std::vector<Entry> entries);

  int dim() const { return dim_; }
  int dmax() const { return dmax_; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// Lookup by multi-index pair; throws if outside the computed range.
  Cx at(const std::vector<int>& alpha, const std::vector<int>& beta) const;

  /// Key format "a1.a2|b1.b2".
  static std::string key(const std::vector<int>& alpha, const std::vector<int>& beta);
  std::string to_json_string(int indent = -1) const;

 private:
  int dim_, dmax_;
  std::vector<Entry> entries_;
};

MomentVector moments(const EmpiricalMeasure& mu, int dmax);

/// Max absolute moment difference over |alpha|+|beta| <= dmax: a pseudometric
/// standing in for weak convergence on compacts.
double weak_distance(const EmpiricalMeasure& mu1, const EmpiricalMeasure& mu2,
                     int dmax);

/// All multi-index pairs (alpha, beta) in N^n x N^n with |alpha|+|beta| <= dmax,
/// in a fixed deterministic order.
std::vector<std::pair<std::vector<int>, std::vector<int>>> moment_index_set(
    int dim, int dmax);

}  // namespace adisk

#endif  // ADISK_MEASURE_HPP
