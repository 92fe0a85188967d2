#include "adisk/gluing.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "adisk/errors.hpp"

namespace adisk {

AnalyticMap strip_exp_map(const StripMapSpec& spec) {
  return AnalyticMap::strip_exp(AnalyticMap::identity(), spec.r, spec.alpha);
}

AnalyticMap glue(const AnalyticMap& f, const AnalyticMap& g, const GlueConfig& cfg) {
  if (cfg.alpha <= 0.0 || cfg.alpha >= 1.0)
    throw std::invalid_argument("glue: alpha must lie in (0, 1)");
  if (f.dim() != g.dim()) throw std::invalid_argument("glue: dimension mismatch");

  const Point cf = f.eval(Cx(0.0, 0.0));
  const Point cg = g.eval(Cx(0.0, 0.0));
  if (dist(cf, cg) > 1e-9)
    throw std::invalid_argument("glue: centers must agree within 1e-9");

  const double rf = sup_norm(f, cfg.grid);
  const double rg = sup_norm(g, cfg.grid);

  // The additive cross-term is controlled by min(|w|, r/|w|) <= sqrt(r) on
  // the ring; the default ambient ball is the resulting a-priori bound.
  double ambient = cfg.ambient_radius;
  if (ambient <= 0.0) {
    const double srt = std::sqrt(cfg.r);
    ambient = std::max(rf, rg) + 2.0 * (rf + rg + norm(cf)) * srt + 1e-9;
  }

  AnalyticMap ring = AnalyticMap::annulus_sum(f, g, cfg.r, cf);
  AnalyticMap p = AnalyticMap::strip_exp(std::move(ring), cfg.r, cfg.alpha);

  const double rp = sup_norm(p, cfg.grid);
  if (rp > ambient)
    throw ContainmentError("glue: glued image escapes the ambient ball", rp);
  return p;
}

EmpiricalMeasure mix(double alpha, const EmpiricalMeasure& mu1,
                     const EmpiricalMeasure& mu2) {
  if (mu1.dim() != mu2.dim()) throw std::invalid_argument("mix: dimension mismatch");
  std::vector<Point> pts;
  std::vector<double> wts;
  pts.reserve(mu1.size() + mu2.size());
  wts.reserve(mu1.size() + mu2.size());
  for (std::size_t i = 0; i < mu1.size(); ++i) {
    pts.push_back(mu1.points()[i]);
    wts.push_back(alpha * mu1.weights()[i]);
  }
  for (std::size_t i = 0; i < mu2.size(); ++i) {
    pts.push_back(mu2.points()[i]);
    wts.push_back((1.0 - alpha) * mu2.weights()[i]);
  }
  return EmpiricalMeasure(std::move(pts), std::move(wts));
}

std::vector<ConvergenceRow> convergence_profile(const AnalyticMap& f,
                                                const AnalyticMap& g,
                                                double alpha,
                                                const std::vector<double>& r_list,
                                                const BoundaryGrid& grid,
                                                int dmax, std::uint64_t seed) {
  if (r_list.empty()) throw std::invalid_argument("convergence_profile: empty schedule");
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    if (r_list[i] <= 0.0 || r_list[i] >= 1.0)
      throw std::invalid_argument("convergence_profile: r values must lie in (0, 1)");
    if (i > 0 && r_list[i] >= r_list[i - 1])
      throw std::invalid_argument("convergence_profile: schedule must be strictly decreasing");
  }
  const EmpiricalMeasure target = mix(alpha, pushforward(f, grid), pushforward(g, grid));
  std::vector<ConvergenceRow> rows;
  rows.reserve(r_list.size());
  for (double r : r_list) {
    GlueConfig cfg;
    cfg.alpha = alpha;
    cfg.r = r;
    cfg.grid = grid;
    AnalyticMap p = glue(f, g, cfg);
    double d = weak_distance(pushforward(p, grid), target, dmax);
    rows.push_back({r, d, grid.n, seed});
  }
  return rows;
}

void profile_to_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out) {
  out << "r,distance,N,seed\n";
  char buf[128];
  for (const ConvergenceRow& row : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%llu\n", row.r, row.distance,
                  row.grid_n, static_cast<unsigned long long>(row.seed));
    out << buf;
  }
}

}  // namespace adisk
