#include "adisk/probes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "adisk/rng.hpp"

namespace adisk {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

PshTestFunction::PshTestFunction(std::vector<Term> terms) : terms_(std::move(terms)) {
  if (terms_.empty())
    throw std::invalid_argument("PshTestFunction: at least one term required");
  for (const Term& t : terms_) {
    if (t.a <= 0.0)
      throw std::invalid_argument("PshTestFunction: coefficients must be positive");
    if (t.p.dim() != terms_[0].p.dim())
      throw std::invalid_argument("PshTestFunction: mixed term dimensions");
  }
}

double PshTestFunction::value(const Point& z) const {
  double best = kNegInf;
  for (const Term& t : terms_) {
    const double m = std::abs(t.p.eval(z));
    if (m > 0.0) best = std::max(best, t.a * std::log(m));
  }
  return best;
}

std::vector<PshTestFunction> random_probe_dictionary(int dim, int count,
                                                     int max_degree,
                                                     std::uint64_t seed) {
  std::vector<PshTestFunction> dict;
  dict.reserve(count);
  auto monomials = moment_index_set(dim, max_degree);
  for (int i = 0; i < count; ++i) {
    Rng rng(sub_seed(seed, i));
    const int nterms = 1 + rng.uniform_int(3);
    std::vector<PshTestFunction::Term> terms;
    for (int t = 0; t < nterms; ++t) {
      std::vector<MultiPoly::Term> poly_terms;
      for (const auto& [alpha, beta] : monomials) {
        bool holomorphic = true;
        for (int b : beta)
          if (b != 0) holomorphic = false;
        if (!holomorphic) continue;
        // Thin the monomial set at random; keep the constant so the
        // polynomial rarely vanishes at probe centers.
        int deg = 0;
        for (int a : alpha) deg += a;
        if (deg > 0 && rng.u01() < 0.5) continue;
        poly_terms.push_back({rng.gaussian(), alpha});
      }
      terms.push_back({rng.uniform(0.2, 1.0), MultiPoly(dim, std::move(poly_terms))});
    }
    dict.emplace_back(std::move(terms));
  }
  return dict;
}

std::string JensenReport::to_json_string(int indent) const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["all_pass"] = all_pass;
  nlohmann::json rows = nlohmann::json::array();
  for (const JensenEntry& e : entries) {
    nlohmann::json r;
    r["probe"] = e.probe;
    r["lhs"] = std::isfinite(e.lhs) ? nlohmann::json(e.lhs) : nlohmann::json("-inf");
    r["rhs"] = e.rhs;
    r["margin"] = e.margin;
    r["pass"] = e.pass;
    r["skipped"] = e.skipped;
    r["dropped_samples"] = e.dropped_samples;
    rows.push_back(r);
  }
  j["entries"] = rows;
  return j.dump(indent);
}

JensenReport jensen_check(const EmpiricalMeasure& mu, const Point& z0,
                          const std::vector<PshTestFunction>& probes,
                          double slack) {
  if (probes.empty())
    throw std::invalid_argument("jensen_check: probe list must be nonempty");
  if (slack < 0.0) throw std::invalid_argument("jensen_check: slack must be >= 0");
  JensenReport report;
  report.entries.reserve(probes.size());
  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    const PshTestFunction& v = probes[pi];
    JensenEntry e;
    e.probe = pi;
    e.lhs = v.value(z0);
    double acc = 0.0, mass = 0.0;
    int dropped = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double vi = v.value(mu.points()[i]);
      if (vi == kNegInf) {
        ++dropped;
        continue;
      }
      acc += mu.weights()[i] * vi;
      mass += mu.weights()[i];
    }
    e.dropped_samples = dropped;
    if (mass == 0.0) {
      // Integral is -infinity: the inequality is vacuous, flag and skip.
      e.skipped = true;
      e.pass = true;
      e.rhs = kNegInf;
      e.margin = 0.0;
    } else {
      e.rhs = acc / mass;
      e.margin = e.rhs + slack - e.lhs;
      e.pass = (e.lhs == kNegInf) || (e.lhs <= e.rhs + slack);
    }
    if (!e.pass) report.all_pass = false;
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace adisk
