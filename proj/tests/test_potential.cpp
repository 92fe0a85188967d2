#include <doctest.h>

#include <cmath>

#include "adisk/errors.hpp"
#include "adisk/potential.hpp"
#include "adisk/rng.hpp"
#include "support/oracles.hpp"

using namespace adisk;

TEST_CASE("harmonic_measure_arc: values at the center and full circle") {
  ArcSet half({{0.3, kPi}});
  CHECK(harmonic_measure_arc(Cx(0, 0), half) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(harmonic_measure_arc(Cx(0, 0), ArcSet::full_circle()) == 1.0);
  CHECK_THROWS_AS(harmonic_measure_arc(Cx(1, 0), half), std::domain_error);
}

TEST_CASE("harmonic_measure_arc: closed form matches the Poisson quadrature") {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const Cx z = rng.in_disk(0.9);
    const double start = rng.uniform(0.0, kTwoPi);
    const double len = rng.uniform(0.1, 5.0);
    ArcSet arcs({{start, len}});
    const double closed = harmonic_measure_arc(z, arcs);
    const double quad = oracles::poisson_arc_quadrature(z, start, start + len);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
    CHECK(closed >= 0.0);
    CHECK(closed <= 1.0);
  }
}

TEST_CASE("harmonic_measure_arc: additive over disjoint arcs, rotation invariant") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Cx z = rng.in_disk(0.85);
    ArcSet a({{0.2, 0.9}});
    ArcSet b({{2.5, 1.1}});
    ArcSet both({{0.2, 0.9}, {2.5, 1.1}});
    CHECK(harmonic_measure_arc(z, both) ==
          doctest::Approx(harmonic_measure_arc(z, a) + harmonic_measure_arc(z, b))
              .epsilon(1e-12));
    const double rot = rng.uniform(0.0, kTwoPi);
    ArcSet a_rot({{0.2 + rot, 0.9}});
    const Cx z_rot = z * std::polar(1.0, rot);
    CHECK(harmonic_measure_arc(z_rot, a_rot) ==
          doctest::Approx(harmonic_measure_arc(z, a)).epsilon(1e-12));
  }
}

TEST_CASE("harmonic_measure_arc: walk-on-spheres cross-check at 1e-2") {
  ArcSet quarter({{-kPi / 2, kPi}});
  const double closed = harmonic_measure_arc(Cx(0.5, 0), quarter);
  const double mc = oracles::wos_arc_measure(
      Cx(0.5, 0), [&](double t) { return quarter.contains(t); }, 100000, 77);
  CHECK(std::abs(closed - mc) < 1e-2);
}

TEST_CASE("harmonic_measure_interior: trivial hit sets") {
  WalkConfig cfg;
  cfg.walks = 2000;
  cfg.seed = 9;
  auto inside = [](Cx z) { return std::abs(z) < 0.5; };
  EstimatorReport rep = harmonic_measure_interior(Cx(0, 0), inside, cfg);
  CHECK(rep.estimate == 1.0);  // the walk starts inside the set

  auto never = [](Cx) { return false; };
  EstimatorReport rep0 = harmonic_measure_interior(Cx(0, 0), never, cfg);
  CHECK(rep0.estimate == 0.0);
  CHECK(rep0.warnings.empty());

  CHECK_THROWS_AS(harmonic_measure_interior(Cx(1.5, 0), never, cfg), std::domain_error);
  WalkConfig bad = cfg;
  bad.walks = 10;
  CHECK_THROWS_AS(harmonic_measure_interior(Cx(0, 0), never, bad), std::invalid_argument);
  bad = cfg;
  bad.eps_abs = 0.5;
  CHECK_THROWS_AS(harmonic_measure_interior(Cx(0, 0), never, bad), std::invalid_argument);
}

TEST_CASE("harmonic_measure_interior: grid-Laplace oracle agreement") {
  auto hit = [](Cx z) { return std::abs(z - Cx(0.5, 0)) < 0.1; };
  const double oracle = oracles::grid_laplace_hitting(Cx(0, 0), hit);
  WalkConfig cfg;
  cfg.walks = 40000;
  cfg.seed = 21;
  EstimatorReport rep = harmonic_measure_interior(Cx(0, 0), hit, cfg);
  CHECK(std::abs(rep.estimate - oracle) < 2e-2);
}

TEST_CASE("harmonic_measure_interior: confidence radius scales as 1/sqrt(walks)") {
  // Quadrupling the walks halves the radius (the n^{-1/2} law).
  auto hit = [](Cx z) { return std::abs(z - Cx(0.3, 0.2)) < 0.15; };
  WalkConfig cfg;
  cfg.seed = 33;
  cfg.walks = 4000;
  EstimatorReport small = harmonic_measure_interior(Cx(0, 0), hit, cfg);
  cfg.walks = 16000;
  EstimatorReport big = harmonic_measure_interior(Cx(0, 0), hit, cfg);
  const double ratio = big.ci95 / small.ci95;
  CHECK(ratio > 0.4);
  CHECK(ratio < 0.6);
}

TEST_CASE("two_constant_bound: examples and monotonicity") {
  CHECK(two_constant_bound(0.2, 5.0, 1.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(two_constant_bound(0.2, 5.0, 0.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(two_constant_bound(0.1, 10.0, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(two_constant_bound(2.0, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(two_constant_bound(0.5, 1.0, 1.5), std::invalid_argument);

  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const double m = rng.uniform(1e-3, 1.0);
    const double M = m + rng.uniform(0.0, 10.0);
    const double d = rng.u01();
    const double v = two_constant_bound(m, M, d);
    CHECK(v >= m - 1e-12);
    CHECK(v <= M + 1e-12);
    CHECK(static_cast<double>(oracles::two_constant_rederive(m, M, d)) ==
          doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("two-constant empirical law on random disks") {
  // ln|h(f)| is subharmonic, so |h(f(0))| <= m^d M^{1-d} with d the boundary
  // measure of {|h o f| <= m}.
  Rng rng(47);
  const int n_samples = 4096;
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Cx> cf, ch;
    for (int k = 0; k <= 3; ++k) cf.push_back(0.7 * rng.gaussian());
    for (int k = 0; k <= 2; ++k) ch.push_back(0.7 * rng.gaussian());
    AnalyticMap f = AnalyticMap::polynomial({cf});
    auto h_of = [&](Cx w) {
      Cx acc(0, 0);
      for (std::size_t j = ch.size(); j-- > 0;) acc = acc * w + ch[j];
      return acc;
    };
    double M = 0.0;
    std::vector<double> mods(n_samples);
    for (int k = 0; k < n_samples; ++k) {
      mods[k] = std::abs(h_of(eval1(f, std::polar(1.0, kTwoPi * k / n_samples))));
      M = std::max(M, mods[k]);
    }
    const double m = 0.5 * M + 1e-9;
    int below = 0;
    for (double v : mods)
      if (v <= m) ++below;
    const double d = static_cast<double>(below) / n_samples;
    const double bound = two_constant_bound(m, M + 1e-12, d);
    CHECK(std::abs(h_of(eval1(f, Cx(0, 0)))) <= bound + 1e-2);
  }
}

TEST_CASE("lemma42_constants: frozen derived examples") {
  // k=2, r=0.2, R=2, a=0.3, b=1 (values recomputed by the long-double route).
  Lemma42Inputs in{2.0, 0.2, 2.0, 0.3, 1.0};
  auto oracle = oracles::lemma42_rederive(2.0L, 0.2L, 2.0L, 0.3L, 1.0L);
  REQUIRE(oracle.in_regime);
  Lemma42Constants c = lemma42_constants(in);
  CHECK(c.s == doctest::Approx(static_cast<double>(oracle.s)).epsilon(1e-14));
  CHECK(c.m == doctest::Approx(static_cast<double>(oracle.m)).epsilon(1e-14));
  CHECK(c.t == doctest::Approx(static_cast<double>(oracle.t)).epsilon(1e-14));
  CHECK(c.c == doctest::Approx(static_cast<double>(oracle.c)).epsilon(1e-14));
  CHECK(c.s == doctest::Approx(0.3483).epsilon(1e-3));
  CHECK(c.m == doctest::Approx(1.2534).epsilon(1e-3));
  CHECK(c.t == doctest::Approx(0.1403).epsilon(1e-3));
  CHECK(c.c == doctest::Approx(0.1403).epsilon(1e-3));

  // k=2, r=0.05, R=2, a=0.8, b=1: s ~ 1.73 is out of regime.
  CHECK_THROWS_AS(lemma42_constants({2.0, 0.05, 2.0, 0.8, 1.0}),
                  DegenerateGeometryError);
  // Input invariants themselves.
  CHECK_THROWS_AS(lemma42_constants({0.9, 0.2, 2.0, 0.3, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(lemma42_constants({2.0, 0.2, 2.0, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(lemma42_constants({2.0, 0.6, 2.0, 0.3, 1.0}), std::invalid_argument);
}

TEST_CASE("lemma42_constants: random in-regime inputs match the re-derivation") {
  Rng rng(53);
  int tested = 0;
  while (tested < 500) {
    const double k = rng.uniform(1.1, 4.0);
    const double R = rng.uniform(1.0, 5.0);
    const double b = rng.uniform(0.2, 0.95) * R;
    const double r = rng.uniform(0.02, 0.9) * b / k;
    const double a = rng.uniform(0.05, 1.0);
    auto oracle = oracles::lemma42_rederive(k, r, R, a, b);
    if (!oracle.in_regime) {
      CHECK_THROWS_AS(lemma42_constants({k, r, R, a, b}), DegenerateGeometryError);
      continue;
    }
    Lemma42Constants c = lemma42_constants({k, r, R, a, b});
    CHECK(std::abs(c.s - static_cast<double>(oracle.s)) < 1e-12);
    CHECK(std::abs(c.m - static_cast<double>(oracle.m)) < 1e-12);
    CHECK(std::abs(c.t - static_cast<double>(oracle.t)) < 1e-12);
    CHECK(std::abs(c.c - static_cast<double>(oracle.c)) < 1e-12);
    // Proof-side consistency: 1 < m < k, c > 0, and the q >= 2s chain holds
    // with m in place of k (ln(mr/R)/ln(b/R) >= ln(kr/R)/ln(b/R) = 2s/a).
    CHECK(c.m > 1.0);
    CHECK(c.m < k);
    CHECK(c.c > 0.0);
    CHECK(a * std::log(c.m * r / R) / std::log(b / R) >= 2.0 * c.s - 1e-12);
    CHECK(c.t * 2.0 * std::log(R / (k * r)) ==
          doctest::Approx((1.0 - c.s) * std::log(k)).epsilon(1e-12));
    ++tested;
  }
}

TEST_CASE("bloch_criterion: identity leaf passes, constant leaf fails") {
  // Leaf {f_j = zeta} with h(w) = w: |h| = 1 on the whole boundary circle.
  std::vector<AnalyticMap> members(3, AnalyticMap::identity());
  MultiPoly h = MultiPoly::coordinate(1, 0);
  BlochCriterionReport rep = bloch_criterion(members, h, 2.0, 0.0, 1.0, 1.0);
  CHECK(rep.pass);
  CHECK(rep.members.size() == 3);
  for (const auto& m : rep.members) {
    CHECK(m.bloch_h == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(m.best_coord_bloch == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(m.arc_length == doctest::Approx(kTwoPi).epsilon(1e-6));
  }
  CHECK(rep.threshold == doctest::Approx(0.5).epsilon(1e-12));

  std::vector<AnalyticMap> constants(3, AnalyticMap::constant({Cx(0.1, 0)}));
  BlochCriterionReport fail = bloch_criterion(constants, h, 2.0, 0.5, 1.0, 1.0);
  CHECK(!fail.pass);
}

TEST_CASE("bloch_criterion: coordinate Bloch norms of (zeta, zeta^j)") {
  std::vector<AnalyticMap> members;
  for (int j = 1; j <= 4; ++j) {
    std::vector<Cx> second(j + 1, Cx(0, 0));
    second[j] = Cx(1, 0);
    members.push_back(AnalyticMap::polynomial({{Cx(0, 0), Cx(1, 0)}, second}));
  }
  MultiPoly h = MultiPoly::coordinate(2, 0);  // h(w1, w2) = w1
  BlochCriterionReport rep = bloch_criterion(members, h, 2.0, 0.0, 1.0, 1.0);
  CHECK(rep.pass);
  for (const auto& m : rep.members)
    CHECK(m.best_coord_bloch >= 1.0 - 1e-6);  // the first coordinate is zeta
}
