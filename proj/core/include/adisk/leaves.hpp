#ifndef ADISK_LEAVES_HPP
#define ADISK_LEAVES_HPP

#include <optional>
#include <string>
#include <vector>

#include "adisk/analytic_map.hpp"
#include "adisk/measure.hpp"
#include "adisk/multipoly.hpp"
#include "adisk/potential.hpp"

namespace adisk {

/// Finite indexed family {f_j} standing in for a leaf, with a common ambient
/// radius and (optionally) the stabilized limit moments.
struct FiniteLeaf {
  std::vector<AnalyticMap> members;
  double ambient_radius = 0.0;
  std::optional<MomentVector> limit_moments;

  /// Center of the last member, the finite surrogate of z_L.
  Point tail_center() const;
};

/// Cluster surrogate: lattice samples of every member with provenance.
struct ClusterSample {
  struct Provenance {
    int member;
    Cx zeta;
  };
  std::vector<Point> points;
  std::vector<Provenance> provenance;
};

/// Deterministic (rho, theta) lattice samples, about per_member points per
/// member over the given interior radii.
ClusterSample cluster_sample(const FiniteLeaf& leaf, int per_member,
                             const std::vector<double>& interior_radii);

/// Classification thresholds recorded in every essentiality report.
inline constexpr double kNonessentialThreshold = 0.01;
inline constexpr double kEssentialThreshold = 0.05;

struct EssentialityReport {
  enum class Class { nonessential, essential, totally_essential_candidate, inconclusive };
  Point z;
  double r = 0.0;
  std::vector<EstimatorReport> per_member;
  Class classification = Class::inconclusive;
  bool is_essential = false;  // essential or totally-essential-candidate
  double threshold_low = kNonessentialThreshold;
  double threshold_high = kEssentialThreshold;
  std::vector<std::string> warnings;
  std::string to_json_string(int indent = -1) const;
};

/// Per-member Monte-Carlo estimates of omega(0, f_j^{-1}(B(z, r)), U) with a
/// preimage-lattice hit predicate; tail-trend classification with the
/// documented thresholds. Members whose preimage lattice is empty get an
/// exact zero without walking.
EssentialityReport essentiality(const FiniteLeaf& leaf, const Point& z, double r,
                                const WalkConfig& cfg);

/// Moebius recentering: for each member with a lattice preimage a (|a| < 1)
/// of a point within tol of z, emits f_j o G_a. Throws EmptyLeafError when
/// no member has such a preimage.
FiniteLeaf recenter(const FiniteLeaf& leaf, const Point& z, double tol);

struct BoundarySupportReport {
  bool stabilized = false;
  bool pass = false;
  double max_excess = 0.0;   // worst distance from a boundary cell to the support
  double resolution = 0.0;   // occupancy cell size h; PASS requires excess < 3h
  int boundary_cells = 0;
  std::string note;
};

/// One-dimensional boundary/support test: the topological boundary of the
/// sampled cluster (grid occupancy) must lie within 3h of the support samples.
/// Requires consecutive member measures to agree within 1e-2 at dmax 4.
BoundarySupportReport boundary_support_test_1d(const FiniteLeaf& leaf,
                                               const std::vector<Cx>& support_samples,
                                               double resolution);

struct MidribConfig {
  double w_radius = 0.1;    // neighborhood radius of z_L defining the target
  int grid_cells = 160;     // flood-fill resolution per axis
  int walks = 20000;
  long max_steps = 400000;
  std::uint64_t seed = 1;
};

struct MidribReport {
  enum class Verdict { positive, zero, inconclusive, not_in_component };
  Verdict verdict = Verdict::inconclusive;
  double estimate = 0.0;
  double ci95 = 0.0;
  int target_cells = 0;
  int component_cells = 0;
  std::string note;
  std::string to_json_string(int indent = -1) const;
};

/// Midrib diagnostic: build the planar component K' of C minus h(support)
/// containing h(z_L) by grid flood fill, then estimate the harmonic measure
/// of h(W cap cluster) within K' at h(z) by a lattice random walk. A positive
/// estimate puts z in the midrib surrogate.
MidribReport midrib_test(const FiniteLeaf& leaf, const MultiPoly& h, const Point& z,
                         const MidribConfig& cfg);

}  // namespace adisk

#endif  // ADISK_LEAVES_HPP
