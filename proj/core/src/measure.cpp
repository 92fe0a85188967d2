#include "adisk/measure.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "adisk/parallel.hpp"

namespace adisk {

namespace {
constexpr std::size_t kMomentEntryCap = 50000;
}

EmpiricalMeasure::EmpiricalMeasure(std::vector<Point> points,
                                   std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty() || points_.size() != weights_.size())
    throw std::invalid_argument("EmpiricalMeasure: points/weights mismatch");
  const std::size_t n = points_[0].size();
  double total = 0.0, comp = 0.0;  // Kahan: the check must not drown in roundoff
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != n)
      throw std::invalid_argument("EmpiricalMeasure: ragged point dimensions");
    if (weights_[i] < 0.0)
      throw std::invalid_argument("EmpiricalMeasure: negative weight");
    const double y = weights_[i] - comp;
    const double t = total + y;
    comp = (t - total) - y;
    total = t;
    ambient_radius_ = std::max(ambient_radius_, norm(points_[i]));
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("EmpiricalMeasure: weights must sum to 1");
}

EmpiricalMeasure EmpiricalMeasure::atom(Point c) {
  return EmpiricalMeasure({std::move(c)}, {1.0});
}

void EmpiricalMeasure::to_csv(std::ostream& out) const {
  const int n = dim();
  for (int k = 0; k < n; ++k) out << "z" << k << "_re,z" << k << "_im,";
  out << "weight\n";
  char buf[64];
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (int k = 0; k < n; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,", points_[i][k].real(),
                    points_[i][k].imag());
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", weights_[i]);
    out << buf;
  }
}

EmpiricalMeasure pushforward(const AnalyticMap& f, const BoundaryGrid& grid) {
  std::vector<Point> pts(grid.n);
  for (int k = 0; k < grid.n; ++k) pts[k] = f.eval(grid.point(k));
  std::vector<double> w(grid.n, grid.weight());
  return EmpiricalMeasure(std::move(pts), std::move(w));
}

Point center(const EmpiricalMeasure& mu) {
  Point c(mu.dim(), Cx(0.0, 0.0));
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (int k = 0; k < mu.dim(); ++k) c[k] += mu.weights()[i] * mu.points()[i][k];
  return c;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> moment_index_set(
    int dim, int dmax) {
  if (dim < 1 || dmax < 0) throw std::invalid_argument("moment_index_set: bad arguments");
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  std::vector<int> idx(2 * dim, 0);
  // Graded enumeration of N^{2n} vectors with sum <= dmax, alpha then beta.
  auto emit = [&] {
    out.emplace_back(std::vector<int>(idx.begin(), idx.begin() + dim),
                     std::vector<int>(idx.begin() + dim, idx.end()));
  };
  std::function<void(int, int)> rec = [&](int pos, int budget) {
    if (pos == 2 * dim) {
      emit();
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      idx[pos] = v;
      rec(pos + 1, budget - v);
    }
    idx[pos] = 0;
  };
  rec(0, dmax);
  if (out.size() > kMomentEntryCap)
    throw std::length_error("moments: index set exceeds the configured cap");
  return out;
}

MomentVector::MomentVector(int dim, int dmax, std::vector<Entry> entries)
    : dim_(dim), dmax_(dmax), entries_(std::move(entries)) {}

Cx MomentVector::at(const std::vector<int>& alpha, const std::vector<int>& beta) const {
  for (const Entry& e : entries_)
    if (e.alpha == alpha && e.beta == beta) return e.value;
  throw std::out_of_range("MomentVector: index pair outside computed range");
}

std::string MomentVector::key(const std::vector<int>& alpha,
                              const std::vector<int>& beta) {
  std::ostringstream s;
  for (std::size_t i = 0; i < alpha.size(); ++i) s << (i ? "." : "") << alpha[i];
  s << "|";
  for (std::size_t i = 0; i < beta.size(); ++i) s << (i ? "." : "") << beta[i];
  return s.str();
}

std::string MomentVector::to_json_string(int indent) const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["dim"] = dim_;
  j["dmax"] = dmax_;
  nlohmann::json vals;
  for (const Entry& e : entries_)
    vals[key(e.alpha, e.beta)] = nlohmann::json::array({e.value.real(), e.value.imag()});
  j["moments"] = vals;
  return j.dump(indent);
}

MomentVector moments(const EmpiricalMeasure& mu, int dmax) {
  if (dmax < 1) throw std::invalid_argument("moments: dmax must be >= 1");
  const int n = mu.dim();
  auto indices = moment_index_set(n, dmax);

  // Power tables per point, then one pass per index. Parallel over indices;
  // each entry is a sequential sum so the result is scheduling-independent.
  const std::size_t npts = mu.size();
  std::vector<Cx> pows(npts * n * (dmax + 1));
  auto pw = [&](std::size_t i, int k, int p) -> Cx& {
    return pows[(i * n + k) * (dmax + 1) + p];
  };
  for (std::size_t i = 0; i < npts; ++i)
    for (int k = 0; k < n; ++k) {
      pw(i, k, 0) = Cx(1.0, 0.0);
      for (int p = 1; p <= dmax; ++p) pw(i, k, p) = pw(i, k, p - 1) * mu.points()[i][k];
    }

  std::vector<MomentVector::Entry> entries(indices.size());
  parallel_for(indices.size(), [&](std::size_t e) {
    const auto& [alpha, beta] = indices[e];
    Cx acc(0.0, 0.0);
    for (std::size_t i = 0; i < npts; ++i) {
      Cx m(1.0, 0.0);
      for (int k = 0; k < n; ++k) {
        m *= pw(i, k, alpha[k]);
        m *= std::conj(pw(i, k, beta[k]));
      }
      acc += mu.weights()[i] * m;
    }
    entries[e] = MomentVector::Entry{alpha, beta, acc};
  });
  return MomentVector(n, dmax, std::move(entries));
}

double weak_distance(const EmpiricalMeasure& mu1, const EmpiricalMeasure& mu2,
                     int dmax) {
  if (mu1.dim() != mu2.dim())
    throw std::invalid_argument("weak_distance: ambient dimension mismatch");
  MomentVector m1 = moments(mu1, dmax);
  MomentVector m2 = moments(mu2, dmax);
  double best = 0.0;
  for (std::size_t i = 0; i < m1.entries().size(); ++i)
    best = std::max(best, std::abs(m1.entries()[i].value - m2.entries()[i].value));
  return best;
}

}  // namespace adisk
