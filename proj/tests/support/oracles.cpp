#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "adisk/rng.hpp"

namespace adisk::oracles {

namespace {

double poisson_kernel(Cx z, double theta) {
  const Cx e = std::polar(1.0, theta);
  return (1.0 - std::norm(z)) / std::norm(e - z);
}

}  // namespace

double poisson_arc_quadrature(Cx z, double theta1, double theta2, int panels) {
  // Composite Simpson over [theta1, theta2].
  const double h = (theta2 - theta1) / (2 * panels);
  double acc = poisson_kernel(z, theta1) + poisson_kernel(z, theta2);
  for (int i = 1; i < 2 * panels; ++i)
    acc += poisson_kernel(z, theta1 + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0 / kTwoPi;
}

double poisson_boundary_value(const std::function<double(double)>& phi, Cx z,
                              int samples) {
  double acc = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = kTwoPi * k / samples;
    acc += poisson_kernel(z, t) * phi(t);
  }
  return acc / samples;
}

double grid_laplace_hitting(Cx z, const std::function<bool(Cx)>& hit, int cells,
                            int max_sweeps) {
  const double h = 2.0 / (cells - 1);
  auto coord = [&](int i) { return -1.0 + i * h; };
  // state: 0 interior unknown, 1 fixed 1 (hit), 2 fixed 0 (outside disk)
  std::vector<char> state(static_cast<std::size_t>(cells) * cells, 0);
  std::vector<double> u(static_cast<std::size_t>(cells) * cells, 0.0);
  for (int iy = 0; iy < cells; ++iy)
    for (int ix = 0; ix < cells; ++ix) {
      const Cx p(coord(ix), coord(iy));
      auto& s = state[static_cast<std::size_t>(iy) * cells + ix];
      if (std::abs(p) >= 1.0)
        s = 2;
      else if (hit(p)) {
        s = 1;
        u[static_cast<std::size_t>(iy) * cells + ix] = 1.0;
      }
    }
  const double omega = 2.0 / (1.0 + std::sin(kPi * h / 2.0));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double delta = 0.0;
    for (int iy = 1; iy < cells - 1; ++iy)
      for (int ix = 1; ix < cells - 1; ++ix) {
        const std::size_t c = static_cast<std::size_t>(iy) * cells + ix;
        if (state[c] != 0) continue;
        const double avg = 0.25 * (u[c - 1] + u[c + 1] + u[c - cells] + u[c + cells]);
        const double upd = u[c] + omega * (avg - u[c]);
        delta = std::max(delta, std::abs(upd - u[c]));
        u[c] = upd;
      }
    if (delta < 1e-12) break;
  }
  // Bilinear interpolation at z.
  const double fx = (z.real() + 1.0) / h, fy = (z.imag() + 1.0) / h;
  const int ix = std::clamp(static_cast<int>(fx), 0, cells - 2);
  const int iy = std::clamp(static_cast<int>(fy), 0, cells - 2);
  const double tx = fx - ix, ty = fy - iy;
  auto at = [&](int x, int y) { return u[static_cast<std::size_t>(y) * cells + x]; };
  return (1 - tx) * (1 - ty) * at(ix, iy) + tx * (1 - ty) * at(ix + 1, iy) +
         (1 - tx) * ty * at(ix, iy + 1) + tx * ty * at(ix + 1, iy + 1);
}

double maximize_1d(const std::function<double(double)>& f, double a, double b) {
  double best_x = a, best = f(a);
  for (int i = 0; i <= 4000; ++i) {
    const double x = a + (b - a) * i / 4000.0;
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  double lo = std::max(a, best_x - (b - a) / 4000.0);
  double hi = std::min(b, best_x + (b - a) / 4000.0);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  for (int it = 0; it < 200; ++it) {
    if (f(c) < f(d))
      lo = c;
    else
      hi = d;
    c = hi - gr * (hi - lo);
    d = lo + gr * (hi - lo);
  }
  return f(0.5 * (lo + hi));
}

Cx poly_disk_moment(const std::vector<std::vector<Cx>>& coeffs,
                    const std::vector<int>& alpha, const std::vector<int>& beta,
                    int samples) {
  Cx acc(0.0, 0.0);
  for (int s = 0; s < samples; ++s) {
    const Cx zeta = std::polar(1.0, kTwoPi * s / samples);
    Cx term(1.0, 0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      Cx w(0.0, 0.0);
      for (std::size_t j = coeffs[k].size(); j-- > 0;) w = w * zeta + coeffs[k][j];
      for (int p = 0; p < alpha[k]; ++p) term *= w;
      for (int p = 0; p < beta[k]; ++p) term *= std::conj(w);
    }
    acc += term;
  }
  return acc / static_cast<double>(samples);
}

bool preimage_empty_grid(const std::function<Point(Cx)>& eval, const Point& z,
                         double r, int n_rho, int n_theta) {
  const double r2 = r * r;
  for (int i = 0; i < n_rho; ++i) {
    const double rho = 0.9995 * i / (n_rho - 1);
    for (int t = 0; t < n_theta; ++t) {
      const Point w = eval(std::polar(rho, kTwoPi * t / n_theta));
      double d2 = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) d2 += std::norm(w[k] - z[k]);
      if (d2 < r2) return false;
    }
  }
  return true;
}

Lemma42Oracle lemma42_rederive(long double k, long double r, long double R,
                               long double a, long double b) {
  const long double num = std::log(k) + std::log(r) - std::log(R);
  const long double den = std::log(b) - std::log(R);
  const long double s = 0.5L * a * num / den;
  Lemma42Oracle out{s, 0.0L, 0.0L, 0.0L, s > 0.0L && s < 1.0L};
  if (!out.in_regime) return out;
  out.m = std::exp(0.5L * (1.0L - s) * std::log(k));
  out.t = (1.0L - s) * std::log(k) /
          (2.0L * (std::log(R) - std::log(k) - std::log(r)));
  out.c = std::min(out.s, out.t);
  return out;
}

long double two_constant_rederive(long double m, long double M, long double d) {
  return std::pow(m, d) * std::pow(M, 1.0L - d);
}

double wos_arc_measure(Cx z, const std::function<bool(double)>& in_arc, int walks,
                       unsigned long long seed) {
  long hits = 0;
  for (int w = 0; w < walks; ++w) {
    Rng rng(sub_seed(seed, w));
    Cx p = z;
    for (;;) {
      const double d = 1.0 - std::abs(p);
      if (d < 1e-5) {
        if (in_arc(std::arg(p))) ++hits;
        break;
      }
      p += d * rng.unit_circle();
    }
  }
  return static_cast<double>(hits) / walks;
}

}  // namespace adisk::oracles
