#include "adisk/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "adisk/errors.hpp"
#include "adisk/parallel.hpp"
#include "adisk/rng.hpp"

namespace adisk {

// ---------------------------------------------------------------------------
// ArcSet
// ---------------------------------------------------------------------------

namespace {

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

}  // namespace

ArcSet::ArcSet(const std::vector<std::pair<double, double>>& arcs) {
  std::vector<Arc> raw;
  double total = 0.0;
  for (auto [start, length] : arcs) {
    if (length < 0.0) throw std::invalid_argument("ArcSet: negative arc length");
    if (length == 0.0) continue;
    if (length >= kTwoPi) {
      arcs_ = {{0.0, kTwoPi}};
      return;
    }
    total += length;
    double s = wrap_angle(start);
    if (s + length <= kTwoPi) {
      raw.push_back({s, s + length});
    } else {  // split a wrapping arc
      raw.push_back({s, kTwoPi});
      raw.push_back({0.0, s + length - kTwoPi});
    }
  }
  if (total > kTwoPi + 1e-12)
    throw std::invalid_argument("ArcSet: total length exceeds 2 pi");
  std::sort(raw.begin(), raw.end(),
            [](const Arc& a, const Arc& b) { return a.start < b.start; });
  for (const Arc& a : raw) {
    if (!arcs_.empty() && a.start <= arcs_.back().end + 1e-15)
      arcs_.back().end = std::max(arcs_.back().end, a.end);
    else
      arcs_.push_back(a);
  }
}

ArcSet ArcSet::full_circle() {
  ArcSet s;
  s.arcs_ = {{0.0, kTwoPi}};
  return s;
}

double ArcSet::total_length() const {
  double t = 0.0;
  for (const Arc& a : arcs_) t += a.end - a.start;
  return t;
}

bool ArcSet::contains(double theta) const {
  const double t = wrap_angle(theta);
  for (const Arc& a : arcs_)
    if (t >= a.start && t < a.end) return true;
  return false;
}

double harmonic_measure_arc(Cx zeta, const ArcSet& arcs) {
  if (std::abs(zeta) >= 1.0)
    throw std::domain_error("harmonic_measure_arc: point must be interior");
  double total = 0.0;
  for (const ArcSet::Arc& a : arcs.arcs()) {
    const double len = a.end - a.start;
    if (len >= kTwoPi - 1e-15) return 1.0;
    // omega = (2*gamma - len) / 2pi, gamma the continuous increase of
    // arg(e^{i theta} - zeta) over the arc (in (0, 2pi) for interior zeta).
    const Cx e1 = std::polar(1.0, a.start) - zeta;
    const Cx e2 = std::polar(1.0, a.end) - zeta;
    double gamma = std::arg(e2 / e1);
    if (gamma < 0.0) gamma += kTwoPi;
    total += (2.0 * gamma - len) / kTwoPi;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Interior-set Monte-Carlo estimator
// ---------------------------------------------------------------------------

std::string EstimatorReport::to_json_string(int indent) const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["estimate"] = estimate;
  j["ci95"] = ci95;
  j["walks"] = walks;
  j["exhausted_fraction"] = exhausted_fraction;
  j["warnings"] = warnings;
  return j.dump(indent);
}

EstimatorReport harmonic_measure_interior(Cx zeta,
                                          const std::function<bool(Cx)>& hit,
                                          const WalkConfig& cfg) {
  if (std::abs(zeta) >= 1.0)
    throw std::domain_error("harmonic_measure_interior: start must be interior");
  if (cfg.walks < 1000)
    throw std::invalid_argument("harmonic_measure_interior: walks must be >= 1000");
  if (cfg.eps_abs <= 1e-6 || cfg.eps_abs >= 1e-2)
    throw std::invalid_argument("harmonic_measure_interior: eps_abs must lie in (1e-6, 1e-2)");

  std::vector<unsigned char> outcome(cfg.walks);  // 0 miss, 1 hit, 2 exhausted
  parallel_for(static_cast<std::size_t>(cfg.walks), [&](std::size_t w) {
    Rng rng(sub_seed(cfg.seed, w));
    Cx z = zeta;
    for (long step = 0; step < cfg.max_steps; ++step) {
      if (hit(z)) {
        outcome[w] = 1;
        return;
      }
      const double d = 1.0 - std::abs(z);
      if (d < cfg.eps_abs) {
        outcome[w] = 0;
        return;
      }
      z += std::min(d, kInteriorStepCap) * rng.unit_circle();
    }
    outcome[w] = 2;
  });

  long hits = 0, exhausted = 0;
  for (unsigned char o : outcome) {
    if (o == 1) ++hits;
    if (o == 2) ++exhausted;
  }
  EstimatorReport rep;
  rep.walks = cfg.walks;
  rep.estimate = static_cast<double>(hits) / cfg.walks;
  rep.exhausted_fraction = static_cast<double>(exhausted) / cfg.walks;
  const double p = rep.estimate;
  rep.ci95 = (hits == 0 || hits == cfg.walks)
                 ? 3.0 / cfg.walks
                 : 1.96 * std::sqrt(p * (1.0 - p) / cfg.walks);
  if (rep.exhausted_fraction > 0.01)
    rep.warnings.push_back("max_steps exhausted on more than 1% of walks");
  return rep;
}

// ---------------------------------------------------------------------------
// Formula evaluators
// ---------------------------------------------------------------------------

double two_constant_bound(double m, double M, double d) {
  if (m <= 0.0 || M <= 0.0 || m > M)
    throw std::invalid_argument("two_constant_bound: need 0 < m <= M");
  if (d < 0.0 || d > 1.0)
    throw std::invalid_argument("two_constant_bound: d must lie in [0, 1]");
  return std::exp(d * std::log(m) + (1.0 - d) * std::log(M));
}

Lemma42Constants lemma42_constants(const Lemma42Inputs& in) {
  if (!(in.k > 1.0)) throw std::invalid_argument("lemma42: k must exceed 1");
  if (!(in.r > 0.0) || !(in.R > 0.0))
    throw std::invalid_argument("lemma42: radii must be positive");
  if (!(in.a > 0.0) || in.a > 1.0)
    throw std::invalid_argument("lemma42: a must lie in (0, 1]");
  if (!(in.b > 0.0) || !(in.b < in.R))
    throw std::invalid_argument("lemma42: need 0 < b < R");
  if (!(in.k * in.r < in.b))
    throw std::invalid_argument("lemma42: need k r < b");
  if (!(in.k * in.r < in.R))
    throw std::invalid_argument("lemma42: need k r < R");

  const double s = 0.5 * in.a * std::log(in.k * in.r / in.R) / std::log(in.b / in.R);
  if (!(s > 0.0) || !(s < 1.0))
    throw DegenerateGeometryError("lemma42: s outside (0, 1); inputs leave the regime");
  const double m = std::pow(in.k, 0.5 * (1.0 - s));
  const double t = (1.0 - s) * std::log(in.k) / (2.0 * std::log(in.R / (in.k * in.r)));
  return {s, m, t, std::min(s, t)};
}

// ---------------------------------------------------------------------------
// Bloch criterion
// ---------------------------------------------------------------------------

std::string BlochCriterionReport::to_json_string(int indent) const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["pass"] = pass;
  j["failure"] = failure;
  j["failing_member"] = failing_member;
  j["threshold"] = threshold;
  j["min_coord_bloch"] = min_coord_bloch;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& m : members) {
    nlohmann::json r;
    r["bloch_h"] = m.bloch_h;
    r["witness_h"] = {m.witness_h.real(), m.witness_h.imag()};
    r["best_coord_bloch"] = m.best_coord_bloch;
    r["best_coord"] = m.best_coord;
    r["witness_coord"] = {m.witness_coord.real(), m.witness_coord.imag()};
    r["arc_length"] = m.arc_length;
    rows.push_back(r);
  }
  j["members"] = rows;
  return j.dump(indent);
}

BlochCriterionReport bloch_criterion(const std::vector<AnalyticMap>& members,
                                     const MultiPoly& h, double M, double b,
                                     double alpha_arc, double c_user,
                                     const BoundaryGrid& grid) {
  if (members.empty()) throw std::invalid_argument("bloch_criterion: empty leaf");
  const int n = members[0].dim();
  if (h.dim() != n) throw std::invalid_argument("bloch_criterion: polynomial arity mismatch");
  if (!(b < 1.0)) throw std::invalid_argument("bloch_criterion: need b < 1");

  BlochCriterionReport rep;
  rep.threshold = c_user / (n * M);

  // Hypothesis (1): |h| and the gradient norm bounded by M on the sampled
  // cluster (boundary plus a few interior rings).
  const double radii[] = {0.25, 0.5, 0.75, 0.95, 1.0};
  for (std::size_t j = 0; j < members.size(); ++j) {
    for (double rho : radii) {
      for (int a = 0; a < 64; ++a) {
        const Point z = members[j].eval(std::polar(rho, kTwoPi * a / 64.0));
        if (std::abs(h.eval(z)) > M || h.gradient_norm(z) > M) {
          rep.failure = "hypothesis (1): |h| or ||grad h|| exceeds M on a cluster sample";
          rep.failing_member = static_cast<int>(j);
          return rep;
        }
      }
    }
  }

  // Hypothesis (2): |h(z_L)| <= b, z_L taken as the last member's center.
  const Point z_last = members.back().eval(Cx(0.0, 0.0));
  if (std::abs(h.eval(z_last)) > b + 1e-12) {
    rep.failure = "hypothesis (2): |h(z_L)| exceeds b";
    return rep;
  }

  // Hypothesis (3) and the Bloch evidence per member.
  rep.min_coord_bloch = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < members.size(); ++j) {
    const AnalyticMap& f = members[j];
    // Longest circular run of boundary samples with |h(f)| >= 1.
    std::vector<char> on(grid.n);
    for (int k = 0; k < grid.n; ++k)
      on[k] = std::abs(h.eval(f.eval(grid.point(k)))) >= 1.0 - 1e-9;
    int best_run = 0, run = 0;
    for (int k = 0; k < 2 * grid.n; ++k) {  // doubled scan handles wrap
      if (on[k % grid.n]) {
        run = std::min(run + 1, grid.n);
        best_run = std::max(best_run, run);
      } else {
        run = 0;
      }
    }
    BlochMemberEvidence ev;
    ev.arc_length = kTwoPi * best_run / grid.n;
    if (ev.arc_length < alpha_arc) {
      rep.failure = "hypothesis (3): no boundary arc of the required length";
      rep.failing_member = static_cast<int>(j);
      rep.members.push_back(ev);
      return rep;
    }

    auto hof = [&](Cx zeta) { return h.eval(f.eval(zeta)); };
    BlochResult bh = bloch_norm_scan(hof);
    ev.bloch_h = bh.value;
    ev.witness_h = bh.witness;
    for (int k = 0; k < n; ++k) {
      auto coord = [&, k](Cx zeta) { return f.eval(zeta)[k]; };
      BlochResult bk = bloch_norm_scan(coord);
      if (bk.value > ev.best_coord_bloch) {
        ev.best_coord_bloch = bk.value;
        ev.best_coord = k;
        ev.witness_coord = bk.witness;
      }
    }
    rep.min_coord_bloch = std::min(rep.min_coord_bloch, ev.best_coord_bloch);
    rep.members.push_back(ev);
  }

  rep.pass = rep.min_coord_bloch >= rep.threshold;
  if (!rep.pass) rep.failure = "per-coordinate Bloch norms fall below c/(nM)";
  return rep;
}

}  // namespace adisk
