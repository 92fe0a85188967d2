#ifndef ADISK_POTENTIAL_HPP
#define ADISK_POTENTIAL_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "adisk/analytic_map.hpp"
#include "adisk/multipoly.hpp"
#include "adisk/types.hpp"

namespace adisk {

/// Disjoint arcs [start, end) on the unit circle, normalized mod 2pi and
/// merged; total length <= 2pi.
class ArcSet {
 public:
  struct Arc {
    double start, end;  // 0 <= start < 2pi, start < end <= start + 2pi
  };

  ArcSet() = default;
  /// Arcs given as (start, length) pairs in radians.
  explicit ArcSet(const std::vector<std::pair<double, double>>& arcs);

  static ArcSet full_circle();

  const std::vector<Arc>& arcs() const { return arcs_; }
  double total_length() const;
  bool contains(double theta) const;

 private:
  std::vector<Arc> arcs_;
};

/// Harmonic measure of a boundary arc set at an interior point, by the
/// closed-form Poisson antiderivative. Equals total length / 2pi at 0.
double harmonic_measure_arc(Cx zeta, const ArcSet& arcs);

struct WalkConfig {
  int walks = 100000;
  double eps_abs = 1e-4;  // absorption distance at the unit circle
  long max_steps = 1000000;
  std::uint64_t seed = 1;
};

struct EstimatorReport {
  double estimate = 0.0;
  double ci95 = 0.0;
  int walks = 0;
  double exhausted_fraction = 0.0;
  std::vector<std::string> warnings;
  std::string to_json_string(int indent = -1) const;
};

/// Fraction of Brownian paths from zeta absorbed in the hit set before
/// reaching the unit circle. Jumps are exact disk exits capped at a fixed
/// interior step, with the predicate checked at every sampled position, so
/// the estimate approaches the harmonic measure of the open set from below.
/// Deterministic for a fixed config; per-walk streams derive from
/// (seed, walk index).
EstimatorReport harmonic_measure_interior(Cx zeta,
                                          const std::function<bool(Cx)>& hit,
                                          const WalkConfig& cfg);

/// Interior step cap used by the walk between boundary-distance jumps.
inline constexpr double kInteriorStepCap = 1.0 / 128.0;

/// Two-constant bound m^d M^{1-d} for 0 < m <= M, d in [0, 1].
double two_constant_bound(double m, double M, double d);

/// Inputs of the quantitative subleaf estimates: a disk bounded by R with
/// center at distance b from the origin, harmonic-measure mass a on the ball
/// B(0, r), and a dilation factor k with kr < b.
struct Lemma42Inputs {
  double k, r, R, a, b;
};

struct Lemma42Constants {
  double s, m, t, c;
};

/// The constants 2s = a ln(kr/R)/ln(b/R), m = k^{(1-s)/2},
/// t = (1-s) ln k / (2 ln(R/(kr))), c = min(s, t). Inputs whose s leaves
/// (0, 1) are outside the estimate's regime and raise
/// DegenerateGeometryError.
Lemma42Constants lemma42_constants(const Lemma42Inputs& in);

struct BlochMemberEvidence {
  double bloch_h = 0.0;          // Bloch norm of h o f_j
  Cx witness_h;                  // grid point attaining it
  double best_coord_bloch = 0.0; // largest per-coordinate Bloch norm
  int best_coord = 0;
  Cx witness_coord;
  double arc_length = 0.0;       // longest boundary run with |h o f_j| >= 1
};

struct BlochCriterionReport {
  bool pass = false;
  std::string failure;      // empty when hypotheses hold
  int failing_member = -1;
  double threshold = 0.0;   // c / (n M)
  double min_coord_bloch = 0.0;
  std::vector<BlochMemberEvidence> members;
  std::string to_json_string(int indent = -1) const;
};

/// Numerical check of the analytic-disk existence criterion: |h| and the
/// gradient bounded by M on the sampled cluster, |h(z_L)| <= b < 1, and for
/// every member a boundary arc of length >= alpha_arc where |h o f_j| >= 1.
/// Evidence: Bloch norms of h o f_j and of the coordinate functions, which
/// must stay >= c_user / (n M).
BlochCriterionReport bloch_criterion(const std::vector<AnalyticMap>& members,
                                     const MultiPoly& h, double M, double b,
                                     double alpha_arc, double c_user,
                                     const BoundaryGrid& grid = BoundaryGrid(1024));

}  // namespace adisk

#endif  // ADISK_POTENTIAL_HPP
