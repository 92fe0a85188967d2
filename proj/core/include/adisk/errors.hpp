#ifndef ADISK_ERRORS_HPP
#define ADISK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adisk {

/// Inputs outside the geometric regime a formula is valid in
/// (e.g. the quantitative-estimate constants when s leaves (0,1)).
class DegenerateGeometryError : public std::domain_error {
 public:
  explicit DegenerateGeometryError(const std::string& what)
      : std::domain_error(what) {}
};

/// A constructed disk's image escaped the configured ambient ball.
class ContainmentError : public std::runtime_error {
 public:
  ContainmentError(const std::string& what, double offending_radius)
      : std::runtime_error(what), radius(offending_radius) {}
  double radius;
};

/// Recentering found no preimages near the requested point.
class EmptyLeafError : public std::runtime_error {
 public:
  explicit EmptyLeafError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace adisk

#endif  // ADISK_ERRORS_HPP
