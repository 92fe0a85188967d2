#ifndef ADISK_ENVELOPE_HPP
#define ADISK_ENVELOPE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adisk/analytic_map.hpp"
#include "adisk/hull.hpp"
#include "adisk/leaves.hpp"
#include "adisk/types.hpp"

namespace adisk {

/// Real-valued polynomial in z and conj(z): Re sum c z^alpha conj(z)^beta.
struct HermitianPoly {
  struct Term {
    Cx coeff;
    std::vector<int> alpha, beta;
  };
  int dim = 1;
  std::vector<Term> terms;

  double value(const Point& z) const;
};

/// Upper semicontinuous integrand for the disk functional.
class UscFunction {
 public:
  static UscFunction poly_real(HermitianPoly p);
  /// z -> ||z||^p.
  static UscFunction norm_power(int dim, double p);
  /// z -> ln ||z||, -infinity at 0.
  static UscFunction log_norm(int dim);
  /// Continuous phi on the sphere of the given radius, extended by the
  /// constant M inside (with a thin continuous blend band below the sphere).
  static UscFunction boundary_data(HermitianPoly phi, double M, double domain_radius,
                                   double band = 0.0);
  /// Smoothed -chi_E for the eps-neighborhood of the sampled set E:
  /// -1 inside, ramping to 0 across the neighborhood boundary.
  static UscFunction smoothed_indicator(CompactSet E);

  double value(const Point& z) const;
  int dim() const { return dim_; }
  bool pushes_boundary() const { return is_boundary_data_; }

 private:
  UscFunction() = default;
  int dim_ = 1;
  bool is_boundary_data_ = false;
  std::function<double(const Point&)> fn_;
};

struct DiskFunctionalResult {
  double value = 0.0;
  int dropped = 0;   // -infinity samples dropped, weight renormalized
  bool warning = false;  // more than 1% of the grid dropped
};

/// Trapezoid boundary average (1/2pi) int phi(f(e^{i t})) dt.
DiskFunctionalResult disk_functional_full(const UscFunction& phi, const AnalyticMap& f,
                                          const BoundaryGrid& grid);
double disk_functional(const UscFunction& phi, const AnalyticMap& f,
                       const BoundaryGrid& grid);

struct EnvelopeConfig {
  std::vector<int> degrees{1, 2, 4, 8};
  int restarts = 12;
  int grid_n = 256;
  int final_grid_n = 2048;
  int nm_max_evals = 0;  // 0: 140 * dim + 700
  double containment_weight = 100.0;
  double boundary_weight = 4.0;  // proximity pull used for boundary data
  std::uint64_t seed = 1;
};

struct EnvelopeResult {
  double value = 0.0;
  AnalyticMap witness;
  std::vector<std::pair<int, double>> trace;  // (restart index, best value)
};

/// P(phi)(z): minimizes the disk functional over polynomial disks with
/// f(0) = z and image inside the ball of the given radius. The reported value
/// is a certified upper bound of the true envelope; the constant disk is
/// always admissible, so value <= phi(z).
EnvelopeResult poletsky_value(const UscFunction& phi, const Point& z,
                              double domain_radius, const EnvelopeConfig& cfg = {});

struct PshProbeViolation {
  Point z;
  std::size_t line = 0;
  double radius = 0.0;
  double u_center = 0.0, mean = 0.0;
};

struct PshProbeReport {
  int checked = 0;
  std::vector<PshProbeViolation> violations;
  double violation_rate() const {
    return checked == 0 ? 0.0 : static_cast<double>(violations.size()) / checked;
  }
};

/// Sub-mean-value test along complex lines: u(z) <= mean of u over the circle
/// z + rho e^{i t} xi, up to tol.
PshProbeReport psh_probe(const std::function<double(const Point&)>& u,
                         const std::vector<Point>& points,
                         const std::vector<Point>& lines,
                         const std::vector<double>& radii, double tol,
                         int angles = 16);

struct ExtremalLeafResult {
  FiniteLeaf leaf;
  std::vector<double> values;        // Phi per member, sorted ascending
  std::vector<double> boundary_gap;  // max (R - ||f||) over boundary samples
};

/// J near-optimal disks from independent seeded restarts, each with a
/// boundary-proximity penalty pushing the boundary samples toward the sphere.
ExtremalLeafResult extremal_leaf(const UscFunction& phi, const Point& z,
                                 double domain_radius, const EnvelopeConfig& cfg,
                                 int J);

using MaximalityProbe = std::function<double(const Point&)>;

struct MaximalityViolation {
  std::size_t probe = 0;
  bool super_side = false;  // violation of the plurisuperharmonic direction
  Point where;
  double u_val = 0.0, v_val = 0.0;
};

struct MaximalityReport {
  bool inconclusive = false;
  std::string note;
  int qualified = 0;   // probes dominated by u on the boundary band
  int checked = 0;
  std::vector<MaximalityViolation> violations;
  std::string to_json_string(int indent = -1) const;
};

/// Comparison-principle check on cluster samples: a psh probe v with
/// u >= v on the samples near the sphere of G_radius must satisfy u >= v on
/// the samples inside; plurisuperharmonic probes (negated dictionary) are
/// checked with reversed inequalities. Finds violations, never proves
/// maximality.
MaximalityReport maximality_check(const std::function<double(const Point&)>& u,
                                  const FiniteLeaf& leaf, double G_radius,
                                  double H_radius,
                                  const std::vector<MaximalityProbe>& probes,
                                  double band = 0.0, double tol = 1e-9);

/// Random psh dictionary (Bremermann probes, calibrated quadratics and
/// constants) shifted so each probe qualifies on the given band samples.
std::vector<MaximalityProbe> make_maximality_dictionary(
    const std::function<double(const Point&)>& u,
    const std::vector<Point>& band_samples, int dim, int count,
    std::uint64_t seed);

}  // namespace adisk

#endif  // ADISK_ENVELOPE_HPP
