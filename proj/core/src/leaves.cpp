#include "adisk/leaves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "adisk/errors.hpp"
#include "adisk/rng.hpp"

namespace adisk {

Point FiniteLeaf::tail_center() const {
  if (members.empty()) throw std::invalid_argument("FiniteLeaf: no members");
  return members.back().eval(Cx(0.0, 0.0));
}

ClusterSample cluster_sample(const FiniteLeaf& leaf, int per_member,
                             const std::vector<double>& interior_radii) {
  if (per_member < 64)
    throw std::invalid_argument("cluster_sample: per_member must be >= 64");
  if (interior_radii.empty())
    throw std::invalid_argument("cluster_sample: radii list must be nonempty");
  for (double r : interior_radii)
    if (r < 0.0 || r > 1.0)
      throw std::invalid_argument("cluster_sample: radii must lie in [0, 1]");

  const int na = std::max<int>(8, (per_member + static_cast<int>(interior_radii.size()) - 1) /
                                      static_cast<int>(interior_radii.size()));
  ClusterSample out;
  out.points.reserve(leaf.members.size() * interior_radii.size() * na);
  for (std::size_t j = 0; j < leaf.members.size(); ++j) {
    for (double rho : interior_radii) {
      for (int a = 0; a < na; ++a) {
        const Cx zeta = std::polar(rho, kTwoPi * a / na);
        out.points.push_back(leaf.members[j].eval(zeta));
        out.provenance.push_back({static_cast<int>(j), zeta});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Preimage lattice: occupancy of f^{-1}(B(z, r)) on a (rho, theta) grid,
// used both for emptiness checks and as the Monte-Carlo hit predicate.
// ---------------------------------------------------------------------------

namespace {

constexpr int kLatticeRho = 512;
constexpr int kLatticeTheta = 512;

struct PreimageLattice {
  std::vector<char> occ;
  bool any = false;

  PreimageLattice(const AnalyticMap& f, const Point& z, double r) {
    occ.assign(kLatticeRho * kLatticeTheta, 0);
    const double r2 = r * r;
    for (int i = 0; i < kLatticeRho; ++i) {
      const double rho = 0.999 * i / (kLatticeRho - 1);
      for (int t = 0; t < kLatticeTheta; ++t) {
        const Point w = f.eval(std::polar(rho, kTwoPi * t / kLatticeTheta));
        double d2 = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) d2 += std::norm(w[k] - z[k]);
        if (d2 < r2) {
          occ[i * kLatticeTheta + t] = 1;
          any = true;
        }
      }
    }
  }

  bool operator()(Cx zeta) const {
    const double rho = std::abs(zeta);
    if (rho > 0.999) return false;
    int i = static_cast<int>(std::lround(rho / 0.999 * (kLatticeRho - 1)));
    double th = std::arg(zeta);
    if (th < 0.0) th += kTwoPi;
    int t = static_cast<int>(std::lround(th / kTwoPi * kLatticeTheta)) % kLatticeTheta;
    return occ[i * kLatticeTheta + t] != 0;
  }
};

}  // namespace

std::string EssentialityReport::to_json_string(int indent) const {
  nlohmann::json j;
  j["schema_version"] = 1;
  nlohmann::json zj = nlohmann::json::array();
  for (Cx c : z) zj.push_back({c.real(), c.imag()});
  j["z"] = zj;
  j["r"] = r;
  const char* names[] = {"nonessential", "essential", "totally_essential_candidate",
                         "inconclusive"};
  j["classification"] = names[static_cast<int>(classification)];
  j["is_essential"] = is_essential;
  j["threshold_low"] = threshold_low;
  j["threshold_high"] = threshold_high;
  nlohmann::json est = nlohmann::json::array();
  for (const auto& e : per_member) est.push_back(nlohmann::json::parse(e.to_json_string()));
  j["per_member"] = est;
  j["warnings"] = warnings;
  return j.dump(indent);
}

EssentialityReport essentiality(const FiniteLeaf& leaf, const Point& z, double r,
                                const WalkConfig& cfg) {
  if (r <= 0.0) throw std::invalid_argument("essentiality: r must be positive");
  if (leaf.members.empty()) throw std::invalid_argument("essentiality: empty leaf");

  EssentialityReport rep;
  rep.z = z;
  rep.r = r;
  const std::size_t J = leaf.members.size();
  for (std::size_t j = 0; j < J; ++j) {
    PreimageLattice hit(leaf.members[j], z, r);
    if (!hit.any) {
      EstimatorReport zero;
      zero.walks = cfg.walks;
      zero.ci95 = 0.0;
      rep.per_member.push_back(zero);  // empty preimage: exactly zero
      continue;
    }
    WalkConfig wc = cfg;
    wc.seed = sub_seed(cfg.seed, 0xe55e00ULL + j);
    EstimatorReport est = harmonic_measure_interior(Cx(0.0, 0.0), hit, wc);
    for (const std::string& w : est.warnings)
      rep.warnings.push_back("member " + std::to_string(j) + ": " + w);
    rep.per_member.push_back(std::move(est));
  }

  // Tail trend over the last third of the members.
  const std::size_t tail_len = std::max<std::size_t>(1, J / 3);
  double tail_max = 0.0, tail_min = 1.0;
  int tail_high = 0;
  for (std::size_t j = J - tail_len; j < J; ++j) {
    const double e = rep.per_member[j].estimate;
    tail_max = std::max(tail_max, e);
    tail_min = std::min(tail_min, e);
    if (e > kEssentialThreshold) ++tail_high;
  }
  if (tail_max < kNonessentialThreshold)
    rep.classification = EssentialityReport::Class::nonessential;
  else if (tail_min > kEssentialThreshold)
    rep.classification = EssentialityReport::Class::totally_essential_candidate;
  else if (tail_high >= std::max<int>(1, static_cast<int>(tail_len) / 2))
    rep.classification = EssentialityReport::Class::essential;
  else
    rep.classification = EssentialityReport::Class::inconclusive;
  rep.is_essential =
      rep.classification == EssentialityReport::Class::essential ||
      rep.classification == EssentialityReport::Class::totally_essential_candidate;
  return rep;
}

FiniteLeaf recenter(const FiniteLeaf& leaf, const Point& z, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("recenter: tol must be positive");
  FiniteLeaf out;
  out.ambient_radius = leaf.ambient_radius;
  for (const AnalyticMap& f : leaf.members) {
    // Best lattice preimage of a point within tol of z.
    double best = tol;
    Cx best_zeta(0.0, 0.0);
    bool found = false;
    for (int i = 0; i < kLatticeRho; ++i) {
      const double rho = 0.999 * i / (kLatticeRho - 1);
      for (int t = 0; t < kLatticeTheta; ++t) {
        const Cx zeta = std::polar(rho, kTwoPi * t / kLatticeTheta);
        const double d = dist(f.eval(zeta), z);
        if (d <= best) {
          best = d;
          best_zeta = zeta;
          found = true;
        }
      }
    }
    if (found) out.members.push_back(f.precompose_moebius(best_zeta));
  }
  if (out.members.empty())
    throw EmptyLeafError("recenter: no preimages of the requested point found");
  return out;
}

BoundarySupportReport boundary_support_test_1d(const FiniteLeaf& leaf,
                                               const std::vector<Cx>& support_samples,
                                               double resolution) {
  if (leaf.members.empty() || support_samples.empty())
    throw std::invalid_argument("boundary_support_test_1d: empty inputs");
  if (leaf.members[0].dim() != 1)
    throw std::invalid_argument("boundary_support_test_1d: ambient dimension must be 1");

  BoundarySupportReport rep;
  rep.resolution = resolution;

  if (leaf.members.size() >= 2) {
    const BoundaryGrid g{2048};
    const auto& a = leaf.members[leaf.members.size() - 2];
    const auto& b = leaf.members.back();
    rep.stabilized = weak_distance(pushforward(a, g), pushforward(b, g), 4) < 1e-2;
  }
  if (!rep.stabilized) {
    rep.note = "member measures not stabilized; test inconclusive";
    return rep;
  }

  const double R = leaf.ambient_radius > 0.0 ? leaf.ambient_radius : 1.0;
  const double h = resolution;
  const int cells = static_cast<int>(std::ceil(2.0 * (R + 2.0 * h) / h));
  const double lo = -(R + 2.0 * h);
  auto cell_of = [&](Cx p) {
    int ix = static_cast<int>(std::floor((p.real() - lo) / h));
    int iy = static_cast<int>(std::floor((p.imag() - lo) / h));
    return std::pair<int, int>(ix, iy);
  };

  // Occupancy from a lattice denser than the cell size.
  const int nr = std::max(8, static_cast<int>(std::ceil(1.6 * R / h)));
  std::vector<double> radii(nr);
  for (int i = 0; i < nr; ++i) radii[i] = static_cast<double>(i) / (nr - 1);
  const int per_member = nr * std::max(64, static_cast<int>(std::ceil(kTwoPi * R * 1.6 / h)));
  ClusterSample cs = cluster_sample(leaf, per_member, radii);

  std::vector<char> occ(static_cast<std::size_t>(cells) * cells, 0);
  for (const Point& p : cs.points) {
    auto [ix, iy] = cell_of(p[0]);
    if (ix >= 0 && iy >= 0 && ix < cells && iy < cells)
      occ[static_cast<std::size_t>(iy) * cells + ix] = 1;
  }

  double worst = 0.0;
  int boundary_cells = 0;
  for (int iy = 0; iy < cells; ++iy) {
    for (int ix = 0; ix < cells; ++ix) {
      if (!occ[static_cast<std::size_t>(iy) * cells + ix]) continue;
      bool edge = ix == 0 || iy == 0 || ix == cells - 1 || iy == cells - 1;
      if (!edge) {
        edge = !occ[static_cast<std::size_t>(iy) * cells + ix - 1] ||
               !occ[static_cast<std::size_t>(iy) * cells + ix + 1] ||
               !occ[static_cast<std::size_t>(iy - 1) * cells + ix] ||
               !occ[static_cast<std::size_t>(iy + 1) * cells + ix];
      }
      if (!edge) continue;
      ++boundary_cells;
      const Cx center(lo + (ix + 0.5) * h, lo + (iy + 0.5) * h);
      double dmin = std::numeric_limits<double>::infinity();
      for (Cx s : support_samples) dmin = std::min(dmin, std::abs(center - s));
      worst = std::max(worst, dmin);
    }
  }
  rep.boundary_cells = boundary_cells;
  rep.max_excess = worst;
  rep.pass = worst < 3.0 * h;
  return rep;
}

// ---------------------------------------------------------------------------
// Midrib diagnostic
// ---------------------------------------------------------------------------

std::string MidribReport::to_json_string(int indent) const {
  nlohmann::json j;
  j["schema_version"] = 1;
  const char* names[] = {"positive", "zero", "inconclusive", "not_in_component"};
  j["verdict"] = names[static_cast<int>(verdict)];
  j["estimate"] = estimate;
  j["ci95"] = ci95;
  j["target_cells"] = target_cells;
  j["component_cells"] = component_cells;
  j["note"] = note;
  return j.dump(indent);
}

MidribReport midrib_test(const FiniteLeaf& leaf, const MultiPoly& h, const Point& z,
                         const MidribConfig& cfg) {
  if (leaf.members.empty()) throw std::invalid_argument("midrib_test: empty leaf");
  const Point z_center = leaf.tail_center();

  // Support samples from the tail member's boundary measure.
  const BoundaryGrid grid{2048};
  const AnalyticMap& tail = leaf.members.back();
  std::vector<Cx> h_support(grid.n);
  for (int k = 0; k < grid.n; ++k) h_support[k] = h.eval(tail.eval(grid.point(k)));

  // Cluster samples and their h-images.
  std::vector<double> radii = {0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.95, 1.0};
  ClusterSample cs = cluster_sample(leaf, 2048, radii);

  const Cx h_zl = h.eval(z_center);
  const Cx h_z = h.eval(z);

  // Preconditions: z_L off the support, h injective near z_L on samples.
  double supp_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.n; ++k)
    supp_gap = std::min(supp_gap, dist(tail.eval(grid.point(k)), z_center));

  // Planar grid over the h-images.
  double lo_x = h_zl.real(), hi_x = h_zl.real(), lo_y = h_zl.imag(), hi_y = h_zl.imag();
  auto stretch = [&](Cx w) {
    lo_x = std::min(lo_x, w.real());
    hi_x = std::max(hi_x, w.real());
    lo_y = std::min(lo_y, w.imag());
    hi_y = std::max(hi_y, w.imag());
  };
  for (Cx w : h_support) stretch(w);
  for (const Point& p : cs.points) stretch(h.eval(p));
  stretch(h_z);
  const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y) + 1e-9;
  lo_x -= pad;
  lo_y -= pad;
  const double span = std::max(hi_x + pad - lo_x, hi_y + pad - lo_y);
  const int n = cfg.grid_cells;
  const double cell = span / n;

  MidribReport rep;
  if (supp_gap < 2.0 * cell) {
    throw std::invalid_argument("midrib_test: z_L lies on the support samples");
  }
  // Injectivity spot check near z_L: distinct samples must not collapse in h.
  {
    std::vector<const Point*> near;
    for (const Point& p : cs.points)
      if (dist(p, z_center) < 2.0 * cfg.w_radius) near.push_back(&p);
    const std::size_t stride = std::max<std::size_t>(1, near.size() / 64);
    for (std::size_t i = 0; i < near.size(); i += stride)
      for (std::size_t j = i + stride; j < near.size(); j += stride) {
        if (dist(*near[i], *near[j]) > 4.0 * cell &&
            std::abs(h.eval(*near[i]) - h.eval(*near[j])) < 0.25 * cell)
          throw std::invalid_argument("midrib_test: h not injective on cluster samples near z_L");
      }
  }

  auto cell_of = [&](Cx w) {
    int ix = static_cast<int>(std::floor((w.real() - lo_x) / cell));
    int iy = static_cast<int>(std::floor((w.imag() - lo_y) / cell));
    ix = std::clamp(ix, 0, n - 1);
    iy = std::clamp(iy, 0, n - 1);
    return iy * n + ix;
  };

  // 0 free, 1 blocked (support image thickened by one cell), 2 target.
  std::vector<char> state(static_cast<std::size_t>(n) * n, 0);
  for (Cx w : h_support) {
    const int c = cell_of(w);
    const int ix = c % n, iy = c / n;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        int jx = ix + dx, jy = iy + dy;
        if (jx >= 0 && jy >= 0 && jx < n && jy < n) state[jy * n + jx] = 1;
      }
  }

  // Flood fill the component of h(z_L).
  std::vector<char> comp(static_cast<std::size_t>(n) * n, 0);
  {
    const int start = cell_of(h_zl);
    if (state[start] == 1) {
      rep.note = "h(z_L) cell blocked by the support image";
      return rep;
    }
    std::vector<int> stack = {start};
    comp[start] = 1;
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      const int ix = c % n, iy = c / n;
      const int nbr[4] = {c - 1, c + 1, c - n, c + n};
      const bool ok[4] = {ix > 0, ix < n - 1, iy > 0, iy < n - 1};
      for (int d = 0; d < 4; ++d)
        if (ok[d] && !comp[nbr[d]] && state[nbr[d]] != 1) {
          comp[nbr[d]] = 1;
          stack.push_back(nbr[d]);
        }
    }
  }
  rep.component_cells = static_cast<int>(std::count(comp.begin(), comp.end(), char(1)));

  if (!comp[cell_of(h_z)]) {
    rep.verdict = MidribReport::Verdict::not_in_component;
    rep.note = "h(z) outside the component of h(z_L)";
    return rep;
  }

  // Target: h-images of cluster samples within w_radius of z_L. Below two
  // grid cells the target cannot be resolved and the verdict stays open.
  if (cfg.w_radius < 2.0 * cell) {
    rep.note = "W radius below the grid resolution; vanishing target set";
    return rep;
  }
  int targets = 0;
  for (const Point& p : cs.points) {
    if (dist(p, z_center) > cfg.w_radius) continue;
    const int c = cell_of(h.eval(p));
    if (state[c] != 1 && comp[c]) {
      if (state[c] != 2) ++targets;
      state[c] = 2;
    }
  }
  rep.target_cells = targets;
  if (targets == 0) {
    rep.note = "target set empty at this W radius";
    return rep;
  }

  // Lattice walk absorbed on blocked (0) or target (1) cells.
  const int start = cell_of(h_z);
  long hits = 0;
  for (int w = 0; w < cfg.walks; ++w) {
    Rng rng(sub_seed(cfg.seed, 0x3d1d0000ULL + w));
    int c = start;
    for (long s = 0; s < cfg.max_steps; ++s) {
      if (state[c] == 2) {
        ++hits;
        break;
      }
      if (state[c] == 1 || !comp[c]) break;
      const int ix = c % n, iy = c / n;
      switch (rng.uniform_int(4)) {
        case 0: c = ix > 0 ? c - 1 : c; break;
        case 1: c = ix < n - 1 ? c + 1 : c; break;
        case 2: c = iy > 0 ? c - n : c; break;
        default: c = iy < n - 1 ? c + n : c; break;
      }
    }
  }
  rep.estimate = static_cast<double>(hits) / cfg.walks;
  rep.ci95 = hits == 0 || hits == cfg.walks
                 ? 3.0 / cfg.walks
                 : 1.96 * std::sqrt(rep.estimate * (1.0 - rep.estimate) / cfg.walks);
  if (hits >= 5)
    rep.verdict = MidribReport::Verdict::positive;
  else if (hits == 0 && cfg.walks >= 1000)
    rep.verdict = MidribReport::Verdict::zero;
  else {
    rep.verdict = MidribReport::Verdict::inconclusive;
    rep.note = "too few hits for a stable sign";
  }
  return rep;
}

}  // namespace adisk
