#ifndef ADISK_ANALYTIC_MAP_HPP
#define ADISK_ANALYTIC_MAP_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "adisk/types.hpp"

namespace adisk {

/// Conformal automorphism of the unit disk, G_a(z) = (z + a) / (1 + conj(a) z).
/// Requires |a| < 1.
Cx moebius_transform(Cx a, Cx zeta);

/// Finite Blaschke product with the given zeros, B(z) = prod (z - a_i)/(1 - conj(a_i) z).
/// Unimodular on the unit circle; requires every |a_i| < 1.
Cx blaschke_product(const std::vector<Cx>& zeros, Cx zeta);

/// The map e of the closed unit disk onto the closed ring {r <= |w| <= 1}:
/// exp composed with the conformal equivalence of the disk and the strip
/// {ln r < Re xi < 0} that sends 0 to xi = (1-alpha) ln r and 1 to xi = 0.
/// The arc {e^{it}: |t| < pi*alpha} lands on |w| = 1, its complement on |w| = r.
Cx strip_exp_point(double r, double alpha, Cx zeta);

/// An analytic disk: an evaluable holomorphic map of the closed unit disk
/// into C^n, built from a closed composition set (polynomial core, Moebius /
/// Blaschke reparameterizations, ring sums, strip-exp precompositions).
/// Immutable after construction; evaluation is pure and thread-safe.
class AnalyticMap {
 public:
  /// coeffs[k] holds the coefficients c_0..c_d of coordinate k.
  static AnalyticMap polynomial(std::vector<std::vector<Cx>> coeffs);
  static AnalyticMap constant(Point c);
  /// f(z) = z in C^1.
  static AnalyticMap identity();

  /// f composed with G_a (parameter change, same image).
  AnalyticMap precompose_moebius(Cx a) const;
  /// f composed with the Blaschke product of the given zeros.
  AnalyticMap precompose_blaschke(std::vector<Cx> zeros) const;

  /// w -> f(w) + g(r/w) - center, defined on the ring r <= |w| <= 1.
  /// Only evaluable on the closed disk after a strip_exp precomposition.
  static AnalyticMap annulus_sum(AnalyticMap f, AnalyticMap g, double r,
                                 Point center);
  /// ring_map composed with the strip-exp map of parameters (r, alpha).
  static AnalyticMap strip_exp(AnalyticMap ring_map, double r, double alpha);

  Point eval(Cx zeta) const;
  int dim() const;

  bool is_polynomial() const;
  /// Coefficients when the map is a bare polynomial (throws otherwise).
  const std::vector<std::vector<Cx>>& poly_coeffs() const;

  std::string to_json_string(int indent = -1) const;
  static AnalyticMap from_json_string(const std::string& text);

  struct Node;

  explicit AnalyticMap(std::shared_ptr<const Node> root);
  const std::shared_ptr<const Node>& root() const { return root_; }

 private:
  std::shared_ptr<const Node> root_;
};

/// Scalar boundary value f(zeta)[0]; requires dim() == 1.
Cx eval1(const AnalyticMap& f, Cx zeta);

/// Max over boundary samples of |f(e^{i theta})|; requires grid.n >= 256.
/// Monotone nondecreasing in the sample count.
double sup_norm(const AnalyticMap& f, const BoundaryGrid& grid);

/// sup_norm on grids doubled from 4096 until two successive estimates
/// differ by less than 1e-8 (capped at 2^17 samples).
double sup_norm_auto(const AnalyticMap& f);

/// Derivative of a scalar map: exact for bare polynomials, central finite
/// differences (relative step 1e-6) for composite trees.
Cx derivative_at(const AnalyticMap& f, Cx zeta);

struct BlochGrid {
  int radii = 240;
  int angles = 256;
  double max_radius = 1.0 - 1e-3;
};

struct BlochResult {
  double value = 0.0;
  Cx witness;  // grid point attaining the max
};

/// Grid maximum of |u'(z)| (1 - |z|^2) over the interior grid; a lower bound
/// of the Bloch seminorm converging as the grid refines.
BlochResult bloch_norm_scan(const std::function<Cx(Cx)>& u,
                            const BlochGrid& grid = {});
BlochResult bloch_norm_scan(const AnalyticMap& u, const BlochGrid& grid = {});
double bloch_norm(const AnalyticMap& u, const BlochGrid& grid = {});

}  // namespace adisk

#endif  // ADISK_ANALYTIC_MAP_HPP
