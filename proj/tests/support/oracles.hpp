#ifndef ADISK_TESTS_ORACLES_HPP
#define ADISK_TESTS_ORACLES_HPP

// Independent oracles for the test suites. Everything here recomputes
// expected values through routes separate from the library implementations
// they check: direct quadrature, grid relaxation, long-double re-derivations.

#include <complex>
#include <functional>
#include <vector>

#include "adisk/types.hpp"

namespace adisk::oracles {

/// Harmonic measure of the arc [theta1, theta2] at z by Simpson quadrature
/// of the Poisson kernel.
double poisson_arc_quadrature(Cx z, double theta1, double theta2, int panels = 20000);

/// Harmonic extension of phi(e^{i t}) at z by trapezoid quadrature of the
/// Poisson integral.
double poisson_boundary_value(const std::function<double(double)>& phi, Cx z,
                              int samples = 8192);

/// Hitting probability of the hit set before the unit circle, by 5-point
/// SOR relaxation of the discrete Laplace problem on [-1,1]^2.
double grid_laplace_hitting(Cx z, const std::function<bool(Cx)>& hit,
                            int cells = 321, int max_sweeps = 40000);

/// Walk-on-spheres boundary-exit frequency falling in the arc predicate.
double wos_arc_measure(Cx z, const std::function<bool(double)>& in_arc, int walks,
                       unsigned long long seed);

/// Maximum of f over [a, b]: dense scan plus golden-section refinement.
double maximize_1d(const std::function<double(double)>& f, double a, double b);

/// Boundary moment (1/2pi) int prod_k f_k^{alpha_k} conj(f_k)^{beta_k} dt of a
/// polynomial disk given by per-coordinate coefficients (own Horner).
Cx poly_disk_moment(const std::vector<std::vector<Cx>>& coeffs,
                    const std::vector<int>& alpha, const std::vector<int>& beta,
                    int samples = 200000);

/// Emptiness of f^{-1}(B(z, r)) on an independent (rho, theta) grid.
bool preimage_empty_grid(const std::function<Point(Cx)>& eval, const Point& z,
                         double r, int n_rho = 700, int n_theta = 700);

struct Lemma42Oracle {
  long double s, m, t, c;
  bool in_regime;
};

/// Long-double re-derivation of the quantitative-estimate constants through
/// a different algebraic arrangement of the logarithms.
Lemma42Oracle lemma42_rederive(long double k, long double r, long double R,
                               long double a, long double b);

/// Long-double two-constant bound via powl.
long double two_constant_rederive(long double m, long double M, long double d);

}  // namespace adisk::oracles

#endif  // ADISK_TESTS_ORACLES_HPP
