#include "adisk/hull.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "adisk/optim.hpp"
#include "adisk/rng.hpp"

namespace adisk {

namespace {

constexpr double kSepDeltaNorm = 1e-9;

std::uint64_t cell_key(const std::vector<long>& cell) {
  std::uint64_t h = 1469598103934665603ULL;
  for (long c : cell) {
    std::uint64_t v = static_cast<std::uint64_t>(c);
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::vector<long> point_cell(const Point& z, double cell) {
  std::vector<long> out(2 * z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    out[2 * k] = static_cast<long>(std::floor(z[k].real() / cell));
    out[2 * k + 1] = static_cast<long>(std::floor(z[k].imag() / cell));
  }
  return out;
}

}  // namespace

CompactSet::CompactSet(std::vector<Point> samples, double eps_k)
    : samples_(std::make_shared<const std::vector<Point>>(std::move(samples))),
      eps_k_(eps_k) {
  if (samples_->empty()) throw std::invalid_argument("CompactSet: samples must be nonempty");
  if (eps_k_ <= 0.0) throw std::invalid_argument("CompactSet: eps_k must be positive");
  dim_ = static_cast<int>((*samples_)[0].size());
  centroid_.assign(dim_, Cx(0.0, 0.0));
  for (const Point& p : *samples_) {
    if (static_cast<int>(p.size()) != dim_)
      throw std::invalid_argument("CompactSet: ragged sample dimensions");
    for (int k = 0; k < dim_; ++k) centroid_[k] += p[k];
    max_norm_ = std::max(max_norm_, norm(p));
  }
  for (int k = 0; k < dim_; ++k) centroid_[k] /= static_cast<double>(samples_->size());
  double dmax = 0.0;
  for (const Point& p : *samples_) dmax = std::max(dmax, dist(p, centroid_));
  diameter_ = 2.0 * dmax;
  build_hash();
}

void CompactSet::build_hash() {
  cell_ = 1.25 * eps_k_;
  // Hash buckets keyed by the lattice cell. Key collisions only add extra
  // candidates; distances are always checked exactly.
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> map;
  map.reserve(samples_->size());
  for (std::uint32_t i = 0; i < samples_->size(); ++i)
    map[cell_key(point_cell((*samples_)[i], cell_))].push_back(i);
  auto keys = std::make_shared<std::vector<std::uint64_t>>();
  auto buckets = std::make_shared<std::vector<std::vector<std::uint32_t>>>();
  keys->reserve(map.size());
  buckets->reserve(map.size());
  std::vector<std::uint64_t> sorted;
  sorted.reserve(map.size());
  for (auto& [k, v] : map) sorted.push_back(k);
  std::sort(sorted.begin(), sorted.end());
  for (std::uint64_t k : sorted) {
    keys->push_back(k);
    buckets->push_back(std::move(map[k]));
  }
  bucket_keys_ = keys;
  buckets_ = buckets;
}

CompactSet CompactSet::with_eps(double eps) const {
  CompactSet out = *this;
  if (eps <= 0.0) throw std::invalid_argument("CompactSet: eps must be positive");
  out.eps_k_ = eps;
  out.build_hash();
  return out;
}

double CompactSet::distance_clamped(const Point& z) const {
  const double cap = cell_;
  std::vector<long> base = point_cell(z, cell_);
  const int dims = static_cast<int>(base.size());
  std::vector<long> cell(base);
  std::vector<int> digit(dims, -1);
  double best2 = cap * cap;
  for (;;) {
    for (int k = 0; k < dims; ++k) cell[k] = base[k] + digit[k];
    const std::uint64_t key = cell_key(cell);
    auto it = std::lower_bound(bucket_keys_->begin(), bucket_keys_->end(), key);
    if (it != bucket_keys_->end() && *it == key) {
      const auto& bucket = (*buckets_)[it - bucket_keys_->begin()];
      for (std::uint32_t idx : bucket) {
        const Point& p = (*samples_)[idx];
        double d2 = 0.0;
        for (int k = 0; k < dim_; ++k) d2 += std::norm(z[k] - p[k]);
        best2 = std::min(best2, d2);
      }
    }
    int k = 0;
    while (k < dims && digit[k] == 1) digit[k++] = -1;
    if (k == dims) break;
    ++digit[k];
  }
  return std::sqrt(best2);
}

double CompactSet::distance_exact(const Point& z) const {
  double best2 = std::numeric_limits<double>::infinity();
  for (const Point& p : *samples_) {
    double d2 = 0.0;
    for (int k = 0; k < dim_; ++k) d2 += std::norm(z[k] - p[k]);
    best2 = std::min(best2, d2);
  }
  return std::sqrt(best2);
}

double outside_fraction(const AnalyticMap& disk, const CompactSet& K,
                        const BoundaryGrid& grid) {
  if (disk.dim() != K.dim())
    throw std::invalid_argument("outside_fraction: dimension mismatch");
  int outside = 0;
  for (int k = 0; k < grid.n; ++k)
    if (K.distance_clamped(disk.eval(grid.point(k))) >= K.eps_k()) ++outside;
  return static_cast<double>(outside) / grid.n;
}

// ---------------------------------------------------------------------------
// Membership search
// ---------------------------------------------------------------------------

namespace {

AnalyticMap coeffs_to_disk(const Point& z, const std::vector<double>& x, int n,
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

/// Smoothed outside fraction: a clamped ramp of width eps/2 around the
/// neighborhood boundary, plus a small mean-distance term that keeps the
/// descent moving once the whole boundary sits inside the neighborhood,
/// plus the ambient-ball penalty.
struct MembershipObjective {
  const CompactSet* K;
  const Point* z;
  int n, degree;
  std::vector<Cx> boundary;  // e^{i theta} samples
  double ambient;
  double containment_weight;

  double operator()(const std::vector<double>& x) const {
    AnalyticMap f = coeffs_to_disk(*z, x, n, degree);
    const double eps = K->eps_k();
    double ramp = 0.0, pull = 0.0, pen = 0.0;
    for (Cx zeta : boundary) {
      const Point w = f.eval(zeta);
      const double d = K->distance_clamped(w);
      ramp += std::clamp((d - 0.75 * eps) / (0.5 * eps), 0.0, 1.0);
      pull += std::min(d, 1.25 * eps) / (1.25 * eps);
      const double excess = norm(w) - ambient;
      if (excess > 0.0) pen += excess * excess;
    }
    const double m = static_cast<double>(boundary.size());
    return ramp / m + 0.01 * pull / m + containment_weight * pen / m;
  }
};

std::vector<Cx> boundary_samples(int n) {
  std::vector<Cx> out(n);
  for (int k = 0; k < n; ++k) out[k] = std::polar(1.0, kTwoPi * k / n);
  return out;
}

int nm_budget(const DiskSearchConfig& cfg, int dim) {
  return cfg.nm_max_evals > 0 ? cfg.nm_max_evals : 140 * dim + 700;
}

}  // namespace

HullCertificate membership_search(const CompactSet& K, const Point& z,
                                  const DiskSearchConfig& cfg) {
  if (static_cast<int>(z.size()) != K.dim())
    throw std::invalid_argument("membership_search: dimension mismatch");
  const int n = K.dim();
  const double ambient =
      cfg.ambient_radius > 0.0 ? cfg.ambient_radius : 2.0 * std::max(1.0, K.max_norm());
  if (norm(z) > ambient)
    throw std::invalid_argument("membership_search: z outside the ambient ball");

  std::vector<double> eps_levels = cfg.eps_levels_abs;
  if (eps_levels.empty())
    for (double frac : cfg.eps_fractions) eps_levels.push_back(frac * K.diameter());
  std::sort(eps_levels.begin(), eps_levels.end(), std::greater<double>());
  while (!eps_levels.empty() && eps_levels.back() <= 0.0) eps_levels.pop_back();
  if (eps_levels.empty()) eps_levels.push_back(K.eps_k());
  const double eps_min = std::min(eps_levels.back(), K.eps_k());
  eps_levels.back() = eps_min;
  const CompactSet K_final = K.with_eps(eps_min);

  HullCertificate best;
  best.kind = HullCertificate::Kind::unknown;
  best.eps_used = eps_min;

  std::vector<double> warm;  // best coefficient vector found so far
  int warm_degree = 0;
  double warm_obj = std::numeric_limits<double>::infinity();

  const BoundaryGrid cert_grid{cfg.final_grid_n};
  const BoundaryGrid probe_grid{std::max(1024, cfg.grid_n)};
  auto boundary = boundary_samples(cfg.grid_n);
  Rng rng(sub_seed(cfg.seed, 0x6d656d62ULL));

  for (std::size_t level = 0; level < eps_levels.size(); ++level) {
    const CompactSet K_eps = K.with_eps(eps_levels[level]);
    for (int degree : cfg.degrees) {
      const int dim = 2 * n * degree;
      MembershipObjective obj{&K_eps, &z, n, degree, boundary, ambient, 100.0};

      std::vector<std::vector<double>> starts;
      if (!warm.empty() && warm_degree <= degree) {
        std::vector<double> padded(dim, 0.0);
        std::copy(warm.begin(), warm.end(), padded.begin());
        starts.push_back(padded);
        for (int p = 0; p < 3; ++p) {
          std::vector<double> jig = padded;
          for (double& v : jig) v += 0.05 * (2.0 * rng.u01() - 1.0);
          starts.push_back(jig);
        }
      }
      const int want = (level == 0 && degree == cfg.degrees.front())
                           ? cfg.restarts
                           : std::max(2, cfg.restarts / 4);
      const double scale = 0.5 * std::max(1.0, K.max_norm()) / std::sqrt(static_cast<double>(degree));
      while (static_cast<int>(starts.size()) < want + static_cast<int>(!warm.empty() ? 4 : 0)) {
        std::vector<double> x(dim);
        for (int i = 0; i < dim; i += 2) {
          Cx c = scale * rng.gaussian() / (1.0 + static_cast<double>((i / 2) % degree));
          x[i] = c.real();
          x[i + 1] = c.imag();
        }
        starts.push_back(std::move(x));
      }

      for (const auto& x0 : starts) {
        NelderMeadOptions opts;
        opts.max_evals = nm_budget(cfg, dim);
        opts.init_step = 0.1;
        NelderMeadResult res = nelder_mead(obj, x0, opts);

        // Escalate the containment weight until the witness is violation-free.
        MembershipObjective esc = obj;
        for (int e = 0; e < 6; ++e) {
          AnalyticMap f = coeffs_to_disk(z, res.x, n, degree);
          if (sup_norm(f, probe_grid) <= ambient * (1.0 + 1e-9)) break;
          esc.containment_weight *= 10.0;
          res = nelder_mead(esc, res.x, opts);
        }

        AnalyticMap f = coeffs_to_disk(z, res.x, n, degree);
        if (sup_norm(f, probe_grid) > ambient * (1.0 + 1e-9)) continue;

        if (res.fx < warm_obj || warm_degree < degree) {
          if (res.fx < warm_obj) {
            warm = res.x;
            warm_degree = degree;
            warm_obj = res.fx;
          }
        }
        const double frac = outside_fraction(f, K_final, probe_grid);
        if (frac < best.best_outside_fraction) {
          best.best_outside_fraction = frac;
          best.disk = f;
        }
        if (frac < cfg.tol_outside) {
          const double certified = outside_fraction(f, K_final, cert_grid);
          if (certified < cfg.tol_outside) {
            best.kind = HullCertificate::Kind::membership;
            best.disk = f;
            best.outside_fraction = certified;
            return best;
          }
        }
      }
      warm_obj = std::numeric_limits<double>::infinity();  // re-rank per degree
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Separation search
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> holomorphic_monomials(int dim, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(dim, 0);
  std::function<void(int, int)> rec = [&](int pos, int budget) {
    if (pos == dim) {
      out.push_back(idx);
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      idx[pos] = v;
      rec(pos + 1, budget - v);
    }
    idx[pos] = 0;
  };
  rec(0, degree);
  return out;
}

MultiPoly coeffs_to_poly(const std::vector<Cx>& c,
                         const std::vector<std::vector<int>>& monos, int dim) {
  std::vector<MultiPoly::Term> terms;
  for (std::size_t i = 0; i < monos.size(); ++i)
    if (c[i] != Cx(0.0, 0.0)) terms.push_back({c[i], monos[i]});
  if (terms.empty()) terms.push_back({Cx(0.0, 0.0), std::vector<int>(dim, 0)});
  return MultiPoly(dim, std::move(terms));
}

}  // namespace

HullCertificate separation_search(const CompactSet& K, const Point& z, int degree,
                                  const DiskSearchConfig& cfg) {
  if (degree < 1) throw std::invalid_argument("separation_search: degree must be >= 1");
  if (static_cast<int>(z.size()) != K.dim())
    throw std::invalid_argument("separation_search: dimension mismatch");
  const int n = K.dim();
  const auto monos = holomorphic_monomials(n, degree);
  const std::size_t m = monos.size();

  // Deterministic subsample of K for the ascent; the certified margin is
  // always computed against the full sample cloud.
  const auto& samples = K.samples();
  const std::size_t stride = std::max<std::size_t>(1, samples.size() / 512);
  std::vector<const Point*> sub;
  for (std::size_t i = 0; i < samples.size(); i += stride) sub.push_back(&samples[i]);

  auto eval_at = [&](const std::vector<Cx>& c, const Point& w) {
    Cx acc(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      Cx mono = c[i];
      for (int k = 0; k < n; ++k)
        for (int p = 0; p < monos[i][k]; ++p) mono *= w[k];
      acc += mono;
    }
    return acc;
  };
  auto monomials_at = [&](const Point& w, std::vector<Cx>& out) {
    for (std::size_t i = 0; i < m; ++i) {
      Cx mono(1.0, 0.0);
      for (int k = 0; k < n; ++k)
        for (int p = 0; p < monos[i][k]; ++p) mono *= w[k];
      out[i] = mono;
    }
  };

  auto full_margin = [&](const std::vector<Cx>& c) {
    double mx = 0.0;
    for (const Point& w : samples) mx = std::max(mx, std::abs(eval_at(c, w)));
    return std::abs(eval_at(c, z)) / (mx + kSepDeltaNorm);
  };

  HullCertificate best;
  best.kind = HullCertificate::Kind::unknown;

  std::vector<Cx> mono_z(m), mono_s(m);
  monomials_at(z, mono_z);

  for (int restart = 0; restart < cfg.sep_restarts; ++restart) {
    Rng rng(sub_seed(cfg.seed, 0x73657000ULL + restart));
    std::vector<Cx> c(m);
    for (Cx& v : c) v = rng.gaussian();

    for (int iter = 0; iter < cfg.sep_iters; ++iter) {
      // Subgradient of ln|p(z)| - ln max_K |p| in the coefficients.
      const Cx pz = eval_at(c, z);
      double mx = 0.0;
      const Point* argmax = sub[0];
      for (const Point* w : sub) {
        const double v = std::abs(eval_at(c, *w));
        if (v > mx) {
          mx = v;
          argmax = w;
        }
      }
      if (std::abs(pz) < 1e-14 || mx < 1e-14) break;
      monomials_at(*argmax, mono_s);
      const Cx ps = eval_at(c, *argmax);
      const double lr = 0.4 / std::sqrt(1.0 + iter);
      for (std::size_t i = 0; i < m; ++i) {
        // d/d(conj c_i) of ln|p| is mono_i * conj(p) / (2|p|^2); ascent in c.
        const Cx gz = std::conj(mono_z[i] * std::conj(pz)) / (2.0 * std::norm(pz));
        const Cx gs = std::conj(mono_s[i] * std::conj(ps)) / (2.0 * std::norm(ps));
        c[i] += lr * (gz - gs);
      }
      // Project: renormalize so the subsampled max modulus is 1.
      double mx2 = 0.0;
      for (const Point* w : sub) mx2 = std::max(mx2, std::abs(eval_at(c, *w)));
      if (mx2 > 1e-300)
        for (Cx& v : c) v /= mx2;
    }
    const double margin = full_margin(c);
    if (margin > best.best_margin) {
      best.best_margin = margin;
      best.poly = coeffs_to_poly(c, monos, n);
    }
  }

  if (best.best_margin > 1.0 + cfg.margin_min) {
    best.kind = HullCertificate::Kind::separation;
    best.margin = best.best_margin;
  }
  return best;
}

HullCertificate hull_classify(const CompactSet& K, const Point& z,
                              const DiskSearchConfig& cfg) {
  const int degree = std::max(2, K.dim());
  HullCertificate sep = separation_search(K, z, degree, cfg);
  if (sep.kind == HullCertificate::Kind::separation) return sep;
  HullCertificate mem = membership_search(K, z, cfg);
  if (mem.kind == HullCertificate::Kind::membership) return mem;
  mem.best_margin = sep.best_margin;
  return mem;
}

PluriharmonicEstimate pluriharmonic_measure_estimate(const Point& z,
                                                     const CompactSet& E,
                                                     double ambient_radius,
                                                     const DiskSearchConfig& cfg) {
  DiskSearchConfig c = cfg;
  c.ambient_radius = ambient_radius;
  c.eps_levels_abs = {E.eps_k()};
  HullCertificate res = membership_search(E, z, c);
  PluriharmonicEstimate out;
  const double frac = res.kind == HullCertificate::Kind::membership
                          ? res.outside_fraction
                          : res.best_outside_fraction;
  out.inside_fraction = 1.0 - frac;
  out.value = -out.inside_fraction;
  out.witness = res.disk;
  return out;
}

// ---------------------------------------------------------------------------

std::string HullCertificate::to_json_string(int indent) const {
  nlohmann::json j;
  j["schema_version"] = 1;
  switch (kind) {
    case Kind::membership: {
      j["kind"] = "membership";
      j["outside_fraction"] = outside_fraction;
      j["eps_used"] = eps_used;
      j["disk"] = nlohmann::json::parse(disk->to_json_string());
      break;
    }
    case Kind::separation: {
      j["kind"] = "separation";
      j["margin"] = margin;
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& t : poly->terms()) {
        nlohmann::json row;
        row["coeff"] = {t.coeff.real(), t.coeff.imag()};
        row["powers"] = t.powers;
        terms.push_back(row);
      }
      j["poly"] = terms;
      break;
    }
    case Kind::unknown: {
      j["kind"] = "unknown";
      j["best_outside_fraction"] = best_outside_fraction;
      j["best_margin"] = best_margin;
      break;
    }
  }
  return j.dump(indent);
}

}  // namespace adisk
