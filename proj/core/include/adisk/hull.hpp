#ifndef ADISK_HULL_HPP
#define ADISK_HULL_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adisk/analytic_map.hpp"
#include "adisk/multipoly.hpp"
#include "adisk/types.hpp"

namespace adisk {

/// A compact K in C^n given by a dense sample cloud plus the neighborhood
/// radius eps_k standing in for "every open set E containing K".
class CompactSet {
 public:
  CompactSet(std::vector<Point> samples, double eps_k);

  const std::vector<Point>& samples() const { return *samples_; }
  double eps_k() const { return eps_k_; }
  int dim() const { return dim_; }
  /// 2 * max distance from the sample centroid (exact for centered sets).
  double diameter() const { return diameter_; }
  double max_norm() const { return max_norm_; }

  /// Same samples, different neighborhood radius.
  CompactSet with_eps(double eps) const;

  /// Distance from z to the sample cloud, clamped: any value above
  /// 1.25 * eps_k is reported as that cap (grid-hash accelerated).
  double distance_clamped(const Point& z) const;
  /// Exact distance (brute force over samples).
  double distance_exact(const Point& z) const;

 private:
  void build_hash();

  std::shared_ptr<const std::vector<Point>> samples_;
  double eps_k_;
  int dim_ = 1;
  double diameter_ = 0.0, max_norm_ = 0.0;
  double cell_ = 1.0;
  Point centroid_;
  std::shared_ptr<const std::vector<std::vector<std::uint32_t>>> buckets_;
  std::shared_ptr<const std::vector<std::uint64_t>> bucket_keys_;
};

/// Fraction of boundary samples of the disk at distance >= eps_k from K.
double outside_fraction(const AnalyticMap& disk, const CompactSet& K,
                        const BoundaryGrid& grid);

struct DiskSearchConfig {
  std::vector<int> degrees{1, 2, 4, 8};
  int restarts = 16;
  int grid_n = 256;        // boundary grid during optimization
  int final_grid_n = 4096; // certification grid
  int nm_max_evals = 0;    // 0: 140 * dim + 700
  double tol_outside = 1e-2;
  double margin_min = 0.05;
  double ambient_radius = 0.0;  // 0: 2 * max(1, max norm of K)
  std::vector<double> eps_fractions{0.1, 0.05, 0.02};  // of diameter(K)
  std::vector<double> eps_levels_abs;  // when nonempty, used verbatim instead
  int sep_iters = 400;
  int sep_restarts = 8;
  std::uint64_t seed = 1;
};

struct HullCertificate {
  enum class Kind { membership, separation, unknown };
  Kind kind = Kind::unknown;

  std::optional<AnalyticMap> disk;   // membership evidence
  double outside_fraction = 1.0;
  double eps_used = 0.0;

  std::optional<MultiPoly> poly;     // separation evidence
  double margin = 0.0;               // |p(z)| / max_K |p|

  double best_outside_fraction = 1.0;  // bests carried by Unknown
  double best_margin = 0.0;

  std::string to_json_string(int indent = -1) const;
};

/// Searches for a polynomial disk with f(0) = z whose boundary lies in the
/// eps-neighborhood of K, over the degree schedule with seeded restarts.
/// Membership must hold at the smallest budgeted eps; never returns a false
/// Membership (the certificate is re-verified on the certification grid).
HullCertificate membership_search(const CompactSet& K, const Point& z,
                                  const DiskSearchConfig& cfg = {});

/// Maximizes |p(z)| over polynomials normalized by max_K |p| = 1 via
/// projected subgradient ascent with random restarts.
HullCertificate separation_search(const CompactSet& K, const Point& z,
                                  int degree, const DiskSearchConfig& cfg = {});

/// Separation first (cheap), then membership; first conclusive answer wins.
HullCertificate hull_classify(const CompactSet& K, const Point& z,
                              const DiskSearchConfig& cfg = {});

struct PluriharmonicEstimate {
  double value = 0.0;  // in [-1, 0]; an upper bound of the true measure
  double inside_fraction = 0.0;
  std::optional<AnalyticMap> witness;
};

/// P(-chi_E) estimated over the budgeted disk family: minus the best
/// achievable boundary fraction inside the eps-neighborhood of E.
PluriharmonicEstimate pluriharmonic_measure_estimate(const Point& z,
                                                     const CompactSet& E,
                                                     double ambient_radius,
                                                     const DiskSearchConfig& cfg = {});

}  // namespace adisk

#endif  // ADISK_HULL_HPP
