#ifndef ADISK_TYPES_HPP
#define ADISK_TYPES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace adisk {

using Cx = std::complex<double>;

/// A point of C^n, n >= 1. Coordinates are dimensionless.
using Point = std::vector<Cx>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

inline double norm2(const Point& z) {
  double s = 0.0;
  for (const Cx& c : z) s += std::norm(c);
  return s;
}

inline double norm(const Point& z) { return std::sqrt(norm2(z)); }

inline double dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::norm(a[k] - b[k]);
  return std::sqrt(s);
}

inline Point operator+(Point a, const Point& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

inline Point operator-(Point a, const Point& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}

inline Point operator*(double s, Point a) {
  for (Cx& c : a) c *= s;
  return a;
}

/// Uniform boundary grid theta_k = 2 pi k / N, k = 0..N-1. Equal weights 1/N
/// represent the normalized arc length m = d(theta)/2pi.
struct BoundaryGrid {
  int n = 4096;

  explicit BoundaryGrid(int count = 4096) : n(count) {}

  double angle(int k) const { return kTwoPi * static_cast<double>(k) / n; }
  Cx point(int k) const { return std::polar(1.0, angle(k)); }
  double weight() const { return 1.0 / static_cast<double>(n); }
};

}  // namespace adisk

#endif  // ADISK_TYPES_HPP
