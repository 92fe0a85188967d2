#include "adisk/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "adisk/optim.hpp"
#include "adisk/probes.hpp"
#include "adisk/rng.hpp"

namespace adisk {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double HermitianPoly::value(const Point& z) const {
  Cx acc(0.0, 0.0);
  for (const Term& t : terms) {
    Cx m = t.coeff;
    for (int k = 0; k < dim; ++k) {
      for (int p = 0; p < t.alpha[k]; ++p) m *= z[k];
      for (int p = 0; p < t.beta[k]; ++p) m *= std::conj(z[k]);
    }
    acc += m;
  }
  return acc.real();
}

UscFunction UscFunction::poly_real(HermitianPoly p) {
  UscFunction f;
  f.dim_ = p.dim;
  f.fn_ = [p = std::move(p)](const Point& z) { return p.value(z); };
  return f;
}

UscFunction UscFunction::norm_power(int dim, double p) {
  UscFunction f;
  f.dim_ = dim;
  f.fn_ = [p](const Point& z) { return std::pow(norm(z), p); };
  return f;
}

UscFunction UscFunction::log_norm(int dim) {
  UscFunction f;
  f.dim_ = dim;
  f.fn_ = [](const Point& z) {
    const double r = norm(z);
    return r == 0.0 ? kNegInf : std::log(r);
  };
  return f;
}

UscFunction UscFunction::boundary_data(HermitianPoly phi, double M,
                                       double domain_radius, double band) {
  if (band <= 0.0) band = 0.02 * domain_radius;
  UscFunction f;
  f.dim_ = phi.dim;
  f.is_boundary_data_ = true;
  f.fn_ = [phi = std::move(phi), M, domain_radius, band](const Point& z) {
    const double s = norm(z);
    if (s >= domain_radius - band) return phi.value(z);
    if (s >= domain_radius - 2.0 * band) {
      const double w = (s - (domain_radius - 2.0 * band)) / band;
      return w * phi.value(z) + (1.0 - w) * M;
    }
    return M;
  };
  return f;
}

UscFunction UscFunction::smoothed_indicator(CompactSet E) {
  UscFunction f;
  f.dim_ = E.dim();
  f.fn_ = [E = std::move(E)](const Point& z) {
    const double eps = E.eps_k();
    const double d = E.distance_clamped(z);
    return -1.0 + std::clamp((d - 0.75 * eps) / (0.5 * eps), 0.0, 1.0);
  };
  return f;
}

double UscFunction::value(const Point& z) const { return fn_(z); }

DiskFunctionalResult disk_functional_full(const UscFunction& phi, const AnalyticMap& f,
                                          const BoundaryGrid& grid) {
  if (phi.dim() != f.dim())
    throw std::invalid_argument("disk_functional: dimension mismatch");
  DiskFunctionalResult out;
  double acc = 0.0;
  int finite = 0;
  for (int k = 0; k < grid.n; ++k) {
    const double v = phi.value(f.eval(grid.point(k)));
    if (v == kNegInf) {
      ++out.dropped;
      continue;
    }
    acc += v;
    ++finite;
  }
  out.warning = out.dropped > grid.n / 100;
  out.value = finite == 0 ? kNegInf : acc / finite;
  return out;
}

double disk_functional(const UscFunction& phi, const AnalyticMap& f,
                       const BoundaryGrid& grid) {
  return disk_functional_full(phi, f, grid).value;
}

// ---------------------------------------------------------------------------
// Envelope optimization
// ---------------------------------------------------------------------------

namespace {

AnalyticMap envelope_disk(const Point& z, const std::vector<double>& x, int n,
                          int degree) {
  std::vector<std::vector<Cx>> coeffs(n);
  std::size_t i = 0;
  for (int k = 0; k < n; ++k) {
    coeffs[k].resize(degree + 1);
    coeffs[k][0] = z[k];
    for (int m = 1; m <= degree; ++m, ++i)
      coeffs[k][m] = Cx(x[2 * i], x[2 * i + 1]);
  }
  return AnalyticMap::polynomial(std::move(coeffs));
}

/// Shrinks the non-constant part about the center until the image sits in
/// the closed ball; leaves admissible disks untouched.
AnalyticMap contain_disk(const AnalyticMap& f, const Point& z, double R,
                         const BoundaryGrid& grid) {
  if (sup_norm(f, grid) <= R) return f;
  const auto& coeffs = f.poly_coeffs();
  auto scaled = [&](double s) {
    std::vector<std::vector<Cx>> c = coeffs;
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t m = 1; m < c[k].size(); ++m) c[k][m] *= s;
    return AnalyticMap::polynomial(std::move(c));
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sup_norm(scaled(mid), grid) <= R)
      lo = mid;
    else
      hi = mid;
  }
  return scaled(lo);
}

struct EnvelopeObjective {
  const UscFunction* phi;
  const Point* z;
  int n, degree;
  std::vector<Cx> boundary;
  double R;
  double containment_weight;
  double boundary_weight;  // 0 unless the integrand only lives on the sphere

  double operator()(const std::vector<double>& x) const {
    AnalyticMap f = envelope_disk(*z, x, n, degree);
    double acc = 0.0, pen = 0.0, pull = 0.0;
    int finite = 0;
    for (Cx zeta : boundary) {
      const Point w = f.eval(zeta);
      const double v = phi->value(w);
      if (v != kNegInf) {
        acc += v;
        ++finite;
      }
      const double r = norm(w);
      const double excess = r - R;
      if (excess > 0.0) pen += excess * excess;
      if (boundary_weight > 0.0) {
        const double gap = R - r;
        if (gap > 0.0) pull += gap * gap;
      }
    }
    const double m = static_cast<double>(boundary.size());
    const double mean = finite == 0 ? 0.0 : acc / finite;
    return mean + containment_weight * pen / m + boundary_weight * pull / m;
  }
};

}  // namespace

EnvelopeResult poletsky_value(const UscFunction& phi, const Point& z,
                              double domain_radius, const EnvelopeConfig& cfg) {
  const int n = phi.dim();
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("poletsky_value: dimension mismatch");
  if (norm(z) > domain_radius)
    throw std::invalid_argument("poletsky_value: z outside the domain ball");

  const BoundaryGrid final_grid{cfg.final_grid_n};
  const BoundaryGrid probe_grid{1024};
  std::vector<Cx> boundary(cfg.grid_n);
  for (int k = 0; k < cfg.grid_n; ++k) boundary[k] = std::polar(1.0, kTwoPi * k / cfg.grid_n);

  // The constant disk is admissible and tried first.
  EnvelopeResult best{0.0, AnalyticMap::constant(z), {}};
  best.value = disk_functional(phi, best.witness, final_grid);
  best.trace.push_back({-1, best.value});

  const double bw = phi.pushes_boundary() ? cfg.boundary_weight : 0.0;
  Rng rng(sub_seed(cfg.seed, 0x656e76ULL));
  std::vector<double> warm;
  int warm_degree = 0;

  int restart_index = 0;
  for (int degree : cfg.degrees) {
    const int dim = 2 * n * degree;
    EnvelopeObjective obj{&phi, &z, n, degree, boundary, domain_radius,
                          cfg.containment_weight, bw};

    std::vector<std::vector<double>> starts;
    if (!warm.empty() && warm_degree <= degree) {
      std::vector<double> padded(dim, 0.0);
      std::copy(warm.begin(), warm.end(), padded.begin());
      starts.push_back(padded);
      for (int p = 0; p < 2; ++p) {
        std::vector<double> jig = padded;
        for (double& v : jig) v += 0.05 * (2.0 * rng.u01() - 1.0);
        starts.push_back(jig);
      }
    }
    const int want = degree == cfg.degrees.front() ? cfg.restarts
                                                   : std::max(2, cfg.restarts / 3);
    const double scale = 0.5 * domain_radius / std::sqrt(static_cast<double>(degree));
    while (static_cast<int>(starts.size()) < want) {
      std::vector<double> x(dim);
      for (int i = 0; i < dim; i += 2) {
        Cx c = scale * rng.gaussian() / (1.0 + static_cast<double>((i / 2) % degree));
        x[i] = c.real();
        x[i + 1] = c.imag();
      }
      starts.push_back(std::move(x));
    }

    double degree_best = std::numeric_limits<double>::infinity();
    for (const auto& x0 : starts) {
      NelderMeadOptions opts;
      opts.max_evals = cfg.nm_max_evals > 0 ? cfg.nm_max_evals : 140 * dim + 700;
      opts.init_step = 0.1;
      NelderMeadResult res = nelder_mead(obj, x0, opts);

      // Containment escalation, then an exact radial shrink of the witness.
      EnvelopeObjective esc = obj;
      for (int e = 0; e < 3; ++e) {
        AnalyticMap f = envelope_disk(z, res.x, n, degree);
        if (sup_norm(f, probe_grid) <= domain_radius * (1.0 + 1e-7)) break;
        esc.containment_weight *= 10.0;
        res = nelder_mead(esc, res.x, opts);
      }
      AnalyticMap f =
          contain_disk(envelope_disk(z, res.x, n, degree), z, domain_radius, probe_grid);

      const double value = disk_functional(phi, f, final_grid);
      if (value < best.value) {
        best.value = value;
        best.witness = f;
      }
      if (res.fx < degree_best) {
        degree_best = res.fx;
        warm = res.x;
        warm_degree = degree;
      }
      best.trace.push_back({restart_index, best.value});
      ++restart_index;
    }
  }
  return best;
}

PshProbeReport psh_probe(const std::function<double(const Point&)>& u,
                         const std::vector<Point>& points,
                         const std::vector<Point>& lines,
                         const std::vector<double>& radii, double tol,
                         int angles) {
  PshProbeReport rep;
  for (const Point& z : points) {
    const double uz = u(z);
    for (std::size_t li = 0; li < lines.size(); ++li) {
      for (double rho : radii) {
        double acc = 0.0;
        for (int a = 0; a < angles; ++a) {
          const Cx w = std::polar(rho, kTwoPi * a / angles);
          Point p = z;
          for (std::size_t k = 0; k < p.size(); ++k) p[k] += w * lines[li][k];
          acc += u(p);
        }
        const double mean = acc / angles;
        ++rep.checked;
        if (uz > mean + tol) rep.violations.push_back({z, li, rho, uz, mean});
      }
    }
  }
  return rep;
}

ExtremalLeafResult extremal_leaf(const UscFunction& phi, const Point& z,
                                 double domain_radius, const EnvelopeConfig& cfg,
                                 int J) {
  if (J < 1) throw std::invalid_argument("extremal_leaf: J must be >= 1");
  struct Cand {
    double value;
    double gap;
    AnalyticMap disk;
  };
  std::vector<Cand> cands;
  const BoundaryGrid grid{cfg.final_grid_n};
  for (int j = 0; j < J; ++j) {
    EnvelopeConfig sub = cfg;
    sub.seed = sub_seed(cfg.seed, 0x1ea4ULL + j);
    sub.restarts = std::max(2, cfg.restarts / 2);
    if (sub.boundary_weight <= 0.0) sub.boundary_weight = 4.0;
    EnvelopeResult res = poletsky_value(phi, z, domain_radius, sub);
    double gap = 0.0;
    for (int k = 0; k < grid.n; ++k)
      gap = std::max(gap, domain_radius - norm(res.witness.eval(grid.point(k))));
    cands.push_back({res.value, gap, std::move(res.witness)});
  }
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return a.value < b.value; });
  ExtremalLeafResult out;
  out.leaf.ambient_radius = domain_radius;
  for (Cand& c : cands) {
    out.values.push_back(c.value);
    out.boundary_gap.push_back(c.gap);
    out.leaf.members.push_back(std::move(c.disk));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Maximality on clusters
// ---------------------------------------------------------------------------

std::string MaximalityReport::to_json_string(int indent) const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["inconclusive"] = inconclusive;
  j["note"] = note;
  j["qualified"] = qualified;
  j["checked"] = checked;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& v : violations) {
    nlohmann::json r;
    r["probe"] = v.probe;
    r["super_side"] = v.super_side;
    nlohmann::json zj = nlohmann::json::array();
    for (Cx c : v.where) zj.push_back({c.real(), c.imag()});
    r["where"] = zj;
    r["u"] = v.u_val;
    r["v"] = v.v_val;
    rows.push_back(r);
  }
  j["violations"] = rows;
  return j.dump(indent);
}

MaximalityReport maximality_check(const std::function<double(const Point&)>& u,
                                  const FiniteLeaf& leaf, double G_radius,
                                  double H_radius,
                                  const std::vector<MaximalityProbe>& probes,
                                  double band, double tol) {
  if (!(G_radius < H_radius))
    throw std::invalid_argument("maximality_check: need G_radius < H_radius");
  if (band <= 0.0) band = 0.05 * G_radius;

  MaximalityReport rep;
  if (probes.empty()) {
    rep.note = "empty probe dictionary: vacuous pass";
    return rep;
  }

  std::vector<double> radii = {0.0, 0.25, 0.5, 0.65, 0.8, 0.9, 0.95, 1.0};
  ClusterSample cs = cluster_sample(leaf, 1024, radii);

  std::vector<const Point*> band_pts, inner_pts;
  for (const Point& p : cs.points) {
    const double r = norm(p);
    if (std::abs(r - G_radius) <= band)
      band_pts.push_back(&p);
    else if (r < G_radius - band)
      inner_pts.push_back(&p);
  }
  if (band_pts.empty()) {
    rep.inconclusive = true;
    rep.note = "no cluster samples on the boundary band of G";
    return rep;
  }

  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    const MaximalityProbe& v = probes[pi];
    // psh direction: u >= v on the band implies u >= v inside.
    bool qualifies = true;
    for (const Point* p : band_pts)
      if (v(*p) > u(*p) + tol) {
        qualifies = false;
        break;
      }
    if (qualifies) {
      ++rep.qualified;
      for (const Point* p : inner_pts) {
        ++rep.checked;
        const double uv = u(*p), vv = v(*p);
        if (vv > uv + tol) rep.violations.push_back({pi, false, *p, uv, vv});
      }
    }
    // plurisuperharmonic direction with the negated probe: u <= w on the
    // band implies u <= w inside.
    auto w = [&](const Point& p) { return -v(p); };
    qualifies = true;
    for (const Point* p : band_pts)
      if (w(*p) < u(*p) - tol) {
        qualifies = false;
        break;
      }
    if (qualifies) {
      ++rep.qualified;
      for (const Point* p : inner_pts) {
        ++rep.checked;
        const double uv = u(*p), wv = w(*p);
        if (wv < uv - tol) rep.violations.push_back({pi, true, *p, uv, wv});
      }
    }
  }
  return rep;
}

std::vector<MaximalityProbe> make_maximality_dictionary(
    const std::function<double(const Point&)>& u,
    const std::vector<Point>& band_samples, int dim, int count,
    std::uint64_t seed) {
  if (band_samples.empty())
    throw std::invalid_argument("make_maximality_dictionary: band samples required");
  std::vector<MaximalityProbe> out;
  out.reserve(count);

  auto calibrated = [&](std::function<double(const Point&)> raw) {
    double shift = -std::numeric_limits<double>::infinity();
    for (const Point& p : band_samples) shift = std::max(shift, raw(p) - u(p));
    const double s = shift + 1e-6;
    return MaximalityProbe([raw = std::move(raw), s](const Point& z) { return raw(z) - s; });
  };

  auto bremermann = random_probe_dictionary(dim, (count + 1) / 2, 2, seed);
  for (auto& probe : bremermann)
    out.push_back(calibrated([probe](const Point& z) { return probe.value(z); }));

  // Quadratics a ||z - p||^2 + Re(b . z) + c, psh for a >= 0; includes
  // constants (a = b = 0), which alone falsify non-maximal quadratics.
  int qi = 0;
  while (static_cast<int>(out.size()) < count) {
    Rng rng(sub_seed(seed, 0x9a4dULL + qi++));
    const double a = qi % 4 == 0 ? 0.0 : rng.uniform(0.0, 1.5);
    Point p0(dim), b(dim);
    for (int k = 0; k < dim; ++k) {
      p0[k] = 0.7 * rng.gaussian();
      b[k] = (qi % 4 == 0) ? Cx(0.0, 0.0) : 0.5 * rng.gaussian();
    }
    auto raw = [a, p0, b](const Point& z) {
      double v = 0.0;
      Cx lin(0.0, 0.0);
      for (std::size_t k = 0; k < z.size(); ++k) {
        v += a * std::norm(z[k] - p0[k]);
        lin += b[k] * z[k];
      }
      return v + lin.real();
    };
    out.push_back(calibrated(raw));
  }
  return out;
}

}  // namespace adisk
