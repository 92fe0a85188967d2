// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code = number of failures.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "adisk/envelope.hpp"
#include "adisk/errors.hpp"
#include "adisk/experiment.hpp"
#include "adisk/gluing.hpp"
#include "adisk/hull.hpp"
#include "adisk/leaves.hpp"
#include "adisk/measure.hpp"
#include "adisk/potential.hpp"
#include "adisk/probes.hpp"
#include "adisk/rng.hpp"
#include "support/oracles.hpp"

using namespace adisk;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

AnalyticMap random_poly_disk(Rng& rng, int dim, int degree, double scale) {
  std::vector<std::vector<Cx>> coeffs(dim);
  for (int k = 0; k < dim; ++k) {
    coeffs[k].resize(degree + 1);
    for (int m = 0; m <= degree; ++m) coeffs[k][m] = scale * rng.gaussian();
  }
  return AnalyticMap::polynomial(std::move(coeffs));
}

// --------------------------------------------------------------------------
// 1. Inner invariance (reparameterization by Blaschke products fixing 0)
// --------------------------------------------------------------------------
Outcome criterion1() {
  Outcome out;
  const BoundaryGrid grid(200000);
  Rng rng(1001);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = trial < 10 ? 1 : 2;
    AnalyticMap f = random_poly_disk(rng, dim, 1 + rng.uniform_int(3), 0.7);
    std::vector<Cx> zeros = {Cx(0, 0)};  // B(0) = 0
    const int extra = rng.uniform_int(3);
    for (int e = 0; e < extra; ++e) zeros.push_back(rng.in_disk(0.8));
    AnalyticMap fb = f.precompose_blaschke(zeros);
    const double d = weak_distance(pushforward(f, grid), pushforward(fb, grid), 4);
    out.require(d < 2e-3, "disk " + std::to_string(trial) + " distance " +
                              std::to_string(d));
  }
  if (out.detail.empty()) out.detail = "20 disks, max moment drift < 2e-3 at N=2e5";
  return out;
}

// --------------------------------------------------------------------------
// 2. Gluing convergence toward the mixture (direct mixture-moment oracle)
// --------------------------------------------------------------------------
Outcome criterion2() {
  Outcome out;
  const BoundaryGrid grid(200000);
  AnalyticMap f = AnalyticMap::identity();
  AnalyticMap g = AnalyticMap::polynomial({{Cx(0, 0), Cx(2, 0)}});

  const Cx m_f = oracles::poly_disk_moment({{Cx(0, 0), Cx(1, 0)}}, {1}, {1}, 8192);
  const Cx m_g = oracles::poly_disk_moment({{Cx(0, 0), Cx(2, 0)}}, {1}, {1}, 8192);
  const double target = 0.5 * (m_f.real() + m_g.real());

  GlueConfig cfg;
  cfg.alpha = 0.5;
  cfg.r = 1e-3;
  cfg.grid = grid;
  AnalyticMap glued = glue(f, g, cfg);
  const double m11 = moments(pushforward(glued, grid), 2).at({1}, {1}).real();
  out.require(std::abs(m11 - target) / target < 0.05,
              "(1,1) moment " + std::to_string(m11) + " vs " + std::to_string(target));

  auto rows = convergence_profile(f, g, 0.5, {1e-1, 1e-2, 1e-3}, grid);
  const double noise = 2.0 / std::sqrt(grid.n);
  out.require(rows[1].distance < rows[0].distance + noise &&
                  rows[2].distance < rows[1].distance + noise &&
                  rows[2].distance < rows[0].distance,
              "profile not improving");
  if (out.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "m11=%.4f (target %.4f), profile %.3f > %.3f > %.3f",
                  m11, target, rows[0].distance, rows[1].distance, rows[2].distance);
    out.detail = buf;
  }
  return out;
}

// --------------------------------------------------------------------------
// 3. Jensen property of glued measures at the common center
// --------------------------------------------------------------------------
Outcome criterion3() {
  Outcome out;
  const BoundaryGrid grid(65536);
  AnalyticMap f = AnalyticMap::identity();
  AnalyticMap g = AnalyticMap::polynomial({{Cx(0, 0), Cx(2, 0)}});
  auto dict = random_probe_dictionary(1, 100, 3, 3003);
  int checked = 0;
  for (double r : {1e-1, 1e-2, 1e-3, 1e-4}) {
    GlueConfig cfg;
    cfg.alpha = 0.5;
    cfg.r = r;
    cfg.grid = grid;
    AnalyticMap glued = glue(f, g, cfg);
    JensenReport rep = jensen_check(pushforward(glued, grid), {Cx(0, 0)}, dict, 5e-2);
    ++checked;
    out.require(rep.all_pass, "violation at r=" + std::to_string(r));
  }
  if (out.pass)
    out.detail = std::to_string(checked) + " glued measures x 100 probes, slack 5e-2";
  return out;
}

// --------------------------------------------------------------------------
// 4. Envelope oracle: harmonic extension in C^1, psh fixed point in C^2
// --------------------------------------------------------------------------
Outcome criterion4() {
  Outcome out;
  HermitianPoly re;
  re.dim = 1;
  re.terms.push_back({Cx(1, 0), {1}, {0}});
  UscFunction phi = UscFunction::boundary_data(re, 1.5, 1.0);
  EnvelopeConfig cfg;
  cfg.seed = 4004;
  double worst1 = 0.0;
  for (Cx z : {Cx(0, 0), Cx(0.5, 0), Cx(-0.5, 0), Cx(0, 0.5), Cx(0, -0.5)}) {
    EnvelopeResult res = poletsky_value(phi, {z}, 1.0, cfg);
    const double oracle =
        oracles::poisson_boundary_value([](double t) { return std::cos(t); }, z);
    worst1 = std::max(worst1, std::abs(res.value - oracle));
  }
  out.require(worst1 < 1e-2, "harmonic-extension deviation " + std::to_string(worst1));

  UscFunction nsq = UscFunction::norm_power(2, 2.0);
  EnvelopeConfig cfg2;
  cfg2.seed = 4005;
  cfg2.degrees = {1, 2};
  cfg2.restarts = 6;
  Rng rng(4006);
  double worst2 = 0.0;
  for (int i = 0; i < 5; ++i) {
    Point z = {rng.in_disk(0.6), rng.in_disk(0.6)};
    EnvelopeResult res = poletsky_value(nsq, z, 1.0, cfg2);
    worst2 = std::max(worst2, std::abs(res.value - norm2(z)));
  }
  out.require(worst2 < 2e-2, "fixed-point deviation " + std::to_string(worst2));
  if (out.pass) {
    char buf[120];
    std::snprintf(buf, sizeof buf, "max |P(phi)-Re z| = %.2e, max psh deviation = %.2e",
                  worst1, worst2);
    out.detail = buf;
  }
  return out;
}

// --------------------------------------------------------------------------
// 5. Hull classification with mutual exclusion on the corpus
// --------------------------------------------------------------------------
Outcome criterion5() {
  Outcome out;
  auto circle = [](int n, double eps) {
    std::vector<Point> s;
    for (int k = 0; k < n; ++k) s.push_back({std::polar(1.0, kTwoPi * k / n)});
    return CompactSet(std::move(s), eps);
  };
  CompactSet K = circle(512, 0.04);
  DiskSearchConfig cfg;
  cfg.seed = 5005;

  HullCertificate c0 = hull_classify(K, {Cx(0, 0)}, cfg);
  out.require(c0.kind == HullCertificate::Kind::membership &&
                  c0.outside_fraction < 1e-2,
              "circle z=0 not certified inside");
  HullCertificate c1 = hull_classify(K, {Cx(0.5, 0)}, cfg);
  out.require(c1.kind == HullCertificate::Kind::membership &&
                  c1.outside_fraction < 1e-2,
              "circle z=0.5 not certified inside");
  HullCertificate c2 = hull_classify(K, {Cx(1.5, 0)}, cfg);
  out.require(c2.kind == HullCertificate::Kind::separation && c2.margin >= 1.4,
              "circle z=1.5 not separated at margin 1.4");

  std::vector<Point> torus;
  const int n = 180;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      torus.push_back({std::polar(1.0, kTwoPi * a / n), std::polar(1.0, kTwoPi * b / n)});
  CompactSet T(torus, 0.05);
  HullCertificate ct = hull_classify(T, {Cx(0, 0), Cx(0, 0)}, cfg);
  bool torus_ok = ct.kind == HullCertificate::Kind::membership &&
                  ct.outside_fraction < 1e-2 && ct.disk->is_polynomial();
  if (torus_ok)
    for (const auto& c : ct.disk->poly_coeffs()) torus_ok = torus_ok && c.size() <= 9;
  out.require(torus_ok, "torus center not certified via a degree <= 8 disk");

  // Mutual exclusion: both searches run independently on the corpus.
  DiskSearchConfig cheap = cfg;
  cheap.degrees = {1, 2};
  cheap.restarts = 6;
  struct Case {
    CompactSet K;
    Point z;
  };
  std::vector<Point> seg_pts;
  for (int k = 0; k < 512; ++k) seg_pts.push_back({Cx(-1.0 + 2.0 * k / 511.0, 0)});
  std::vector<Case> corpus;
  corpus.push_back({K, {Cx(0, 0)}});
  corpus.push_back({K, {Cx(0.5, 0)}});
  corpus.push_back({K, {Cx(1.5, 0)}});
  corpus.push_back({CompactSet(seg_pts, 0.04), {Cx(0.25, 0)}});
  corpus.push_back({CompactSet(seg_pts, 0.04), {Cx(0, 0.8)}});
  corpus.push_back({CompactSet({{Cx(0, 0)}, {Cx(1, 0)}}, 0.05), {Cx(0.5, 0)}});
  corpus.push_back({T, {Cx(0, 0), Cx(0, 0)}});
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    HullCertificate mem = membership_search(corpus[i].K, corpus[i].z, cheap);
    HullCertificate sep = separation_search(corpus[i].K, corpus[i].z, 2, cheap);
    out.require(!(mem.kind == HullCertificate::Kind::membership &&
                  sep.kind == HullCertificate::Kind::separation),
                "both certificates on corpus case " + std::to_string(i));
  }
  if (out.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "circle in/in/out ok (margin %.2f), torus degree<=8 ok, corpus exclusive",
                  c2.margin);
    out.detail = buf;
  }
  return out;
}

// --------------------------------------------------------------------------
// 6. Formula evaluators against independent re-derivations
// --------------------------------------------------------------------------
Outcome criterion6() {
  Outcome out;
  Rng rng(6006);
  int in_regime = 0, out_regime = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double m = rng.uniform(1e-3, 2.0);
    const double M = m * (1.0 + rng.uniform(0.0, 9.0));
    const double d = rng.u01();
    worst = std::max(worst,
                     std::abs(two_constant_bound(m, M, d) -
                              static_cast<double>(oracles::two_constant_rederive(m, M, d))));
  }
  out.require(worst < 1e-12, "two_constant deviation " + std::to_string(worst));

  double worst42 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double k = rng.uniform(1.1, 4.0);
    const double R = rng.uniform(1.0, 5.0);
    const double b = rng.uniform(0.2, 0.95) * R;
    const double r = rng.uniform(0.02, 0.9) * b / k;
    const double a = rng.uniform(0.05, 1.0);
    auto oracle = oracles::lemma42_rederive(k, r, R, a, b);
    if (!oracle.in_regime) {
      ++out_regime;
      try {
        lemma42_constants({k, r, R, a, b});
        out.require(false, "out-of-regime input returned values");
      } catch (const DegenerateGeometryError&) {
      }
      continue;
    }
    ++in_regime;
    Lemma42Constants c = lemma42_constants({k, r, R, a, b});
    worst42 = std::max({worst42, std::abs(c.s - static_cast<double>(oracle.s)),
                        std::abs(c.m - static_cast<double>(oracle.m)),
                        std::abs(c.t - static_cast<double>(oracle.t)),
                        std::abs(c.c - static_cast<double>(oracle.c))});
  }
  out.require(worst42 < 1e-12, "lemma-constant deviation " + std::to_string(worst42));
  if (out.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "1000+%d in-regime checks at 1e-12; %d out-of-regime all raised",
                  in_regime, out_regime);
    out.detail = buf;
  }
  return out;
}

// --------------------------------------------------------------------------
// 7. Harmonic-measure kernels vs Monte-Carlo and the grid-Laplace oracle
// --------------------------------------------------------------------------
Outcome criterion7() {
  Outcome out;
  Rng rng(7007);
  double worst_arc = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Cx z = rng.in_disk(0.85);
    const double start = rng.uniform(0.0, kTwoPi);
    const double len = rng.uniform(0.3, 4.5);
    ArcSet arcs({{start, len}});
    const double closed = harmonic_measure_arc(z, arcs);
    const double mc = oracles::wos_arc_measure(
        z, [&](double t) { return arcs.contains(t); }, 100000, 7100 + i);
    worst_arc = std::max(worst_arc, std::abs(closed - mc));
  }
  out.require(worst_arc < 1e-2, "arc deviation " + std::to_string(worst_arc));

  struct Config {
    Cx start;
    std::function<bool(Cx)> hit;
  };
  std::vector<Config> configs;
  configs.push_back({Cx(0, 0), [](Cx z) { return std::abs(z - Cx(0.5, 0)) < 0.1; }});
  configs.push_back({Cx(0, 0), [](Cx z) { return std::abs(z - Cx(0.3, 0.2)) < 0.15; }});
  configs.push_back({Cx(0.2, 0), [](Cx z) { return std::abs(z - Cx(-0.4, 0)) < 0.12; }});
  configs.push_back({Cx(0, 0), [](Cx z) {
                       return std::abs(z - Cx(0.35, 0)) < 0.1 ||
                              std::abs(z - Cx(-0.35, 0)) < 0.1;
                     }});
  configs.push_back({Cx(0, -0.3), [](Cx z) {
                       const double r = std::abs(z);
                       return r > 0.45 && r < 0.6 && z.real() > 0.0 && z.imag() > 0.0;
                     }});
  double worst_int = 0.0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const double oracle = oracles::grid_laplace_hitting(configs[i].start, configs[i].hit);
    WalkConfig wcfg;
    wcfg.walks = 30000;
    wcfg.seed = 7200 + i;
    EstimatorReport rep = harmonic_measure_interior(configs[i].start, configs[i].hit, wcfg);
    worst_int = std::max(worst_int, std::abs(rep.estimate - oracle));
  }
  out.require(worst_int < 2e-2, "interior deviation " + std::to_string(worst_int));
  if (out.pass) {
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "arcs max dev %.3e (10 pairs), interior max dev %.3e (5 configs)",
                  worst_arc, worst_int);
    out.detail = buf;
  }
  return out;
}

// --------------------------------------------------------------------------
// 8. The (zeta, zeta^j) family: Haar moments, essentiality, midrib
// --------------------------------------------------------------------------
Outcome criterion8() {
  Outcome out;
  FiniteLeaf leaf;
  for (int j = 1; j <= 20; ++j) {
    std::vector<Cx> second(j + 1, Cx(0, 0));
    second[j] = Cx(1, 0);
    leaf.members.push_back(
        AnalyticMap::polynomial({{Cx(0, 0), Cx(1, 0)}, std::move(second)}));
  }
  leaf.ambient_radius = std::sqrt(2.0);

  const BoundaryGrid grid(4096);
  MomentVector mv = moments(pushforward(leaf.members.back(), grid), 4);
  const double noise = 2.0 / std::sqrt(grid.n);
  double worst = 0.0;
  for (const auto& e : mv.entries())
    worst = std::max(worst, std::abs(e.value - Cx(e.alpha == e.beta ? 1.0 : 0.0, 0)));
  out.require(worst < noise, "Haar moment deviation " + std::to_string(worst));

  WalkConfig wc;
  wc.walks = 4000;
  wc.seed = 8008;
  EssentialityReport ess = essentiality(leaf, {Cx(0.3, 0), Cx(0, 0)}, 0.1, wc);
  out.require(ess.is_essential, "(0.3, 0) not classified essential");
  EssentialityReport non = essentiality(leaf, {Cx(0.5, 0), Cx(0.5, 0)}, 0.1, wc);
  out.require(non.classification == EssentialityReport::Class::nonessential,
              "(0.5, 0.5) not classified nonessential");
  // Estimator zeros agree with the independent grid oracle on emptiness.
  for (std::size_t j = 4; j < leaf.members.size(); ++j) {
    const bool empty = oracles::preimage_empty_grid(
        [&](Cx zeta) { return leaf.members[j].eval(zeta); }, {Cx(0.5, 0), Cx(0.5, 0)},
        0.1);
    out.require(empty == (non.per_member[j].estimate == 0.0),
                "grid oracle disagrees on member " + std::to_string(j));
  }

  MidribConfig mc;
  mc.seed = 8009;
  mc.w_radius = 0.1;
  MidribReport mid = midrib_test(leaf, MultiPoly::coordinate(2, 0),
                                 {Cx(0.3, 0), Cx(0, 0)}, mc);
  out.require(mid.verdict == MidribReport::Verdict::positive,
              "midrib test not positive at (0.3, 0)");
  if (out.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "Haar dev %.2e; essential/nonessential as stated; midrib est %.3f",
                  worst, mid.estimate);
    out.detail = buf;
  }
  return out;
}

// --------------------------------------------------------------------------
// 9. Maximality checker on linear-disk leaves
// --------------------------------------------------------------------------
Outcome criterion9() {
  Outcome out;
  FiniteLeaf leaf;
  leaf.ambient_radius = 1.0;
  Rng rng(9009);
  for (int i = 0; i < 40; ++i) {
    Point z0 = {0.6 * rng.in_disk(1.0), 0.6 * rng.in_disk(1.0)};
    Point v = {0.3 * rng.unit_circle(), 0.3 * rng.unit_circle()};
    leaf.members.push_back(AnalyticMap::polynomial({{z0[0], v[0]}, {z0[1], v[1]}}));
  }
  std::vector<double> radii = {0.0, 0.25, 0.5, 0.65, 0.8, 0.9, 0.95, 1.0};
  ClusterSample cs = cluster_sample(leaf, 1024, radii);
  std::vector<Point> band;
  for (const Point& p : cs.points)
    if (std::abs(norm(p) - 0.5) <= 0.025) band.push_back(p);

  auto u1 = [](const Point& z) { return z[0].real(); };
  auto probes1 = make_maximality_dictionary(u1, band, 2, 50, 9010);
  MaximalityReport rep1 = maximality_check(u1, leaf, 0.5, 0.8, probes1);
  out.require(!rep1.inconclusive && rep1.violations.empty(),
              "pluriharmonic u falsely flagged (" +
                  std::to_string(rep1.violations.size()) + " violations)");

  auto u2 = [](const Point& z) { return norm2(z); };
  auto probes2 = make_maximality_dictionary(u2, band, 2, 50, 9011);
  MaximalityReport rep2 = maximality_check(u2, leaf, 0.5, 0.8, probes2);
  out.require(!rep2.violations.empty(), "||z||^2 not falsified");
  if (out.pass)
    out.detail = "Re z1: 0 violations / 50 probes; ||z||^2: " +
                 std::to_string(rep2.violations.size()) + " violations found";
  return out;
}

// --------------------------------------------------------------------------
// 10. Reproducibility: bit-identical artifacts for a fixed seed
// --------------------------------------------------------------------------
Outcome criterion10() {
  Outcome out;
  const char* cfg = R"({
    "schema_version": 1,
    "command": "glue",
    "seed": 20260809,
    "grid_n": 8192,
    "glue": {
      "f": {"node": "poly", "coeffs": [[[0,0],[1,0]]]},
      "g": {"node": "poly", "coeffs": [[[0,0],[2,0]]]},
      "alpha": 0.5,
      "r_list": [1e-1, 1e-2, 1e-3],
      "jensen_probes": 50
    }
  })";
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const fs::path d1 = fs::temp_directory_path() / "adisk_accept_rep1";
  const fs::path d2 = fs::temp_directory_path() / "adisk_accept_rep2";
  fs::remove_all(d1);
  fs::remove_all(d2);
  CliOverrides o1, o2;
  o1.output_dir = d1.string();
  o2.output_dir = d2.string();
  out.require(run_experiment(cfg, o1).exit_code == 0, "first run failed");
  out.require(run_experiment(cfg, o2).exit_code == 0, "second run failed");
  int files = 0;
  if (out.pass) {
    for (const auto& entry : fs::directory_iterator(d1)) {
      if (entry.path().filename() == "manifest.json") continue;  // embeds out dir
      ++files;
      const std::string a = slurp(entry.path());
      const std::string b = slurp(d2 / entry.path().filename());
      out.require(!a.empty() && a == b,
                  "artifact differs: " + entry.path().filename().string());
    }
    out.require(files >= 4, "expected at least 4 artifacts");
  }
  if (out.pass) out.detail = std::to_string(files) + " artifacts bit-identical across runs";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"inner invariance of push-forward measures", criterion1},
      {"gluing convergence to the mixture measure", criterion2},
      {"glued measures satisfy the Jensen inequality", criterion3},
      {"envelope values match the harmonic/psh oracles", criterion4},
      {"hull certificates on circle, torus and corpus", criterion5},
      {"formula evaluators match independent re-derivations", criterion6},
      {"harmonic-measure kernels vs Monte-Carlo and grid oracle", criterion7},
      {"(zeta, zeta^j) family: Haar moments, essentiality, midrib", criterion8},
      {"maximality checker accepts Re z1 and falsifies ||z||^2", criterion9},
      {"bit-identical artifacts under a fixed seed", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    if (!out.pass) ++failures;
    std::printf("[%s] criterion %zu: %s%s%s\n", out.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, out.detail.empty() ? "" : " -- ",
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
