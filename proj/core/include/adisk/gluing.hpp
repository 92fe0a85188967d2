#ifndef ADISK_GLUING_HPP
#define ADISK_GLUING_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "adisk/analytic_map.hpp"
#include "adisk/measure.hpp"

namespace adisk {

/// Parameters of the disk-to-ring map e: the image ring is {r <= |w| <= 1},
/// the origin goes to the point r^{1-alpha} and zeta = 1 to w = 1. The arc
/// {e^{it}: |t| < pi*alpha} lands on the outer circle, its complement on the
/// inner one, so the boundary splits its mass alpha / (1 - alpha).
struct StripMapSpec {
  double r;
  double alpha;
};

/// The map e as an analytic disk in C^1.
AnalyticMap strip_exp_map(const StripMapSpec& spec);

struct GlueConfig {
  double alpha = 0.5;           // mixture weight of the first disk
  double r = 1e-3;              // inner ring radius; smaller = closer mixture
  BoundaryGrid grid{4096};      // boundary grid for norms and containment
  double ambient_radius = 0.0;  // 0 = derive from the proof's bound
};

/// Glues two disks with a common center into a single disk p whose
/// push-forward measure approximates alpha*mu(f) + (1-alpha)*mu(g) as r -> 0:
/// p = (w -> f(w) + g(r/w) - center) composed with the strip-exp map.
/// Centers must agree within 1e-9. Throws ContainmentError when the glued
/// image escapes the configured ambient ball.
AnalyticMap glue(const AnalyticMap& f, const AnalyticMap& g, const GlueConfig& cfg);

/// The convex combination alpha*mu1 + (1-alpha)*mu2 as one weighted cloud.
EmpiricalMeasure mix(double alpha, const EmpiricalMeasure& mu1,
                     const EmpiricalMeasure& mu2);

struct ConvergenceRow {
  double r;
  double distance;
  int grid_n;
  std::uint64_t seed;
};

/// weak_distance between the glued push-forward and the target mixture for
/// each r in the schedule (strictly decreasing values in (0,1)).
std::vector<ConvergenceRow> convergence_profile(const AnalyticMap& f,
                                                const AnalyticMap& g,
                                                double alpha,
                                                const std::vector<double>& r_list,
                                                const BoundaryGrid& grid,
                                                int dmax = 4,
                                                std::uint64_t seed = 0);

void profile_to_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out);

}  // namespace adisk

#endif  // ADISK_GLUING_HPP
