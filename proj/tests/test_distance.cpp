#include <gtest/gtest.h>

#include "skorohod/distance.hpp"
#include "skorohod/oracle.hpp"
#include "skorohod/random.hpp"

using namespace skorohod;

namespace {

StepFunction indicator(double a, double high = 1.0) { return make_step({0.0, a}, {0.0, high}); }
const Pseudometric abs_d = Pseudometric::euclidean();

struct Pair {
  StepFunction x, y;
  Pseudometric d;
};

Pair random_pair(Rng& rng, std::size_t max_jumps = 4, std::size_t grid = 20) {
  auto xj = random_grid_jumps(rng, uniform_index(rng, 0, max_jumps), grid);
  auto yj = random_grid_jumps(rng, uniform_index(rng, 0, max_jumps), grid);
  if (uniform_index(rng, 0, 1) == 0) {
    auto v = pick_from({0.0, 0.3, 1.0});
    return {random_step(rng, xj, v), random_step(rng, yj, v), abs_d};
  }
  auto v = uniform_box(2, 0.0, 1.0);
  return {random_step(rng, xj, v), random_step(rng, yj, v), coordinate_family(2).metric(FamilyIndex::of({1, 2}))};
}

}  // namespace

TEST(Feasible, Examples) {
  StepFunction x = indicator(0.5), y = indicator(0.6);
  auto same = feasible(x, x, 0.0, abs_d);
  EXPECT_TRUE(same.feasible);
  EXPECT_EQ(warp_deviation(*same.certificate), 0.0);
  EXPECT_FALSE(feasible(x, y, 0.09, abs_d).feasible);
  EXPECT_TRUE(feasible(x, y, 0.1, abs_d).feasible);
  EXPECT_FALSE(feasible(make_step({0.0}, {0}), make_step({0.0}, {1}), 0.5, abs_d).feasible);
  EXPECT_THROW(feasible(x, y, -0.1, abs_d), std::invalid_argument);
}

// values frozen from the brute-force oracle
TEST(Oracle, FrozenExamples) {
  EXPECT_NEAR(oracle_distance(indicator(0.5), indicator(0.6), abs_d), 0.1, 1e-15);
  EXPECT_NEAR(oracle_distance(indicator(0.5), indicator(0.5, 0.8), abs_d), 0.2, 1e-15);
  EXPECT_FALSE(BruteForceOracle(indicator(0.5), indicator(0.6), abs_d).feasible(0.09));
  EXPECT_TRUE(BruteForceOracle(indicator(0.5), indicator(0.6), abs_d).feasible(0.1));
  EXPECT_EQ(oracle_distance(indicator(0.5), indicator(0.5), abs_d), 0.0);
  EXPECT_EQ(oracle_distance(make_step({0.0}, {0}), make_step({0.0}, {1}), abs_d), 1.0);
}

TEST(Oracle, RejectsLargeInstances) {
  std::vector<double> t{0.0};
  std::vector<Value> v{Value(0)};
  for (int k = 1; k <= 6; ++k) {
    t.push_back(k / 10.0);
    v.emplace_back(k % 2);
  }
  StepFunction big(t, v);
  EXPECT_THROW(BruteForceOracle(big, big, abs_d), OracleTooLarge);
}

TEST(SkorohodDistance, Examples) {
  DistanceResult self = skorohod_distance(indicator(0.5), indicator(0.5), abs_d);
  EXPECT_EQ(self.value, 0.0);
  EXPECT_EQ(warp_deviation(self.certificate), 0.0);

  DistanceResult r = skorohod_distance(indicator(0.5), indicator(0.6), abs_d);
  EXPECT_NEAR(r.value, 0.1, 1e-9);
  ASSERT_EQ(r.certificate.knots().size(), 3u);
  EXPECT_EQ(r.certificate.knots()[1], (TimeChange::Knot{0.6, 0.5}));
  EXPECT_NEAR(r.time_sup, 0.1, 1e-12);
  EXPECT_EQ(r.value_sup, 0.0);

  DistanceResult h = skorohod_distance(indicator(0.5), indicator(0.5, 0.8), abs_d);
  EXPECT_NEAR(h.value, 0.2, 1e-12);
  EXPECT_EQ(warp_deviation(h.certificate), 0.0);

  EXPECT_THROW(skorohod_distance(indicator(0.5), make_step({0.0}, {Value({1.0, 2.0})}), abs_d), ValueSpaceMismatch);
}

TEST(SkorohodDistance, EdgeCases) {
  // no time change squeezes out the first or last piece
  EXPECT_EQ(skorohod_distance(indicator(0.1, 5.0), make_step({0.0}, {5.0}), abs_d).value, 5.0);
  EXPECT_EQ(skorohod_distance(indicator(0.9, 5.0), make_step({0.0}, {0.0}), abs_d).value, 5.0);
  EXPECT_EQ(oracle_distance(indicator(0.9, 5.0), make_step({0.0}, {0.0}), abs_d), 5.0);
  // middle pieces cannot vanish either; matching them costs only the shift
  StepFunction blip = make_step({0.0, 0.5, 0.52}, {0.0, 1.0, 0.0});
  EXPECT_NEAR(skorohod_distance(blip, make_step({0.0}, {0.0}), abs_d).value, 1.0, 1e-12);
  EXPECT_NEAR(skorohod_distance(blip, make_step({0.0, 0.5, 0.53}, {0.0, 1.0, 0.0}), abs_d).value, 0.01, 1e-12);
  // label-valued traces under the discrete metric
  StepFunction a = make_step({0.0, 0.4}, {"idle", "run"});
  StepFunction b = make_step({0.0, 0.45}, {"idle", "run"});
  EXPECT_NEAR(skorohod_distance(a, b, Pseudometric::discrete()).value, 0.05, 1e-12);
  EXPECT_EQ(skorohod_distance(a, make_step({0.0}, {"idle"}), Pseudometric::discrete()).value, 1.0);
}

TEST(UniformDistance, Examples) {
  EXPECT_EQ(uniform_distance(indicator(0.5), indicator(0.5), abs_d), 0.0);
  EXPECT_EQ(uniform_distance(indicator(0.5), indicator(0.6), abs_d), 1.0);
  EXPECT_EQ(uniform_distance(make_step({0.0}, {0}), make_step({0.0}, {1}), abs_d), 1.0);
}

TEST(Properties, OracleEquivalence) {
  Rng rng(101);
  for (int k = 0; k < 300; ++k) {
    Pair p = random_pair(rng);
    BruteForceOracle o(p.x, p.y, p.d);
    EXPECT_NEAR(skorohod_distance(p.x, p.y, p.d).value, o.distance(), 1e-9);
    for (double eps : candidate_levels(p.x, p.y, p.d)) EXPECT_EQ(feasible(p.x, p.y, eps, p.d).feasible, o.feasible(eps));
  }
}

// Off-grid jump times exercise ties that never occur on a grid and vice versa.
TEST(Properties, OracleEquivalenceOffGrid) {
  Rng rng(103);
  for (int k = 0; k < 300; ++k) {
    Pair p = random_pair(rng, 4, 997);
    EXPECT_NEAR(skorohod_distance(p.x, p.y, p.d).value, oracle_distance(p.x, p.y, p.d), 1e-9);
  }
}

TEST(Properties, BisectionAgrees) {
  Rng rng(107);
  for (int k = 0; k < 200; ++k) {
    Pair p = random_pair(rng, 6);
    EXPECT_NEAR(bisection_distance(p.x, p.y, p.d), skorohod_distance(p.x, p.y, p.d).value, 1e-11);
  }
}

TEST(Properties, Axioms) {
  Rng rng(109);
  for (int k = 0; k < 200; ++k) {
    auto v = pick_from({0.0, 0.3, 1.0, 2.0});
    StepFunction x = random_step(rng, random_grid_jumps(rng, uniform_index(rng, 0, 6), 50), v);
    StepFunction y = random_step(rng, random_grid_jumps(rng, uniform_index(rng, 0, 6), 50), v);
    StepFunction z = random_step(rng, random_grid_jumps(rng, uniform_index(rng, 0, 6), 50), v);
    EXPECT_EQ(skorohod_distance(x, x, abs_d).value, 0.0);
    double xy = skorohod_distance(x, y, abs_d).value;
    EXPECT_NEAR(xy, skorohod_distance(y, x, abs_d).value, 1e-9);
    EXPECT_LE(skorohod_distance(x, z, abs_d).value, xy + skorohod_distance(y, z, abs_d).value + 1e-9);
  }
}

TEST(Properties, CertificateSoundness) {
  Rng rng(113);
  for (int k = 0; k < 300; ++k) {
    Pair p = random_pair(rng, 7, 100);
    DistanceResult r = skorohod_distance(p.x, p.y, p.d);
    CertificateCheck c = check_certificate(p.x, p.y, p.d, r.certificate);
    EXPECT_TRUE(c.holds(r.value)) << c.bound() << " vs " << r.value;
    EXPECT_LE(std::max(r.time_sup, r.value_sup), r.value + kCertificateTol);
  }
}

TEST(Properties, BoundChain) {
  Rng rng(127);
  for (int k = 0; k < 200; ++k) {
    Pair p = random_pair(rng, 5, 100);
    EXPECT_LE(skorohod_distance(p.x, p.y, p.d).value, uniform_distance(p.x, p.y, p.d));
    TimeChange l = random_time_change(rng, 4);
    EXPECT_LE(skorohod_distance(compose_time_change(p.x, l), p.x, p.d).value, warp_deviation(l) + 1e-9);
  }
}

TEST(Properties, MonotoneFeasibility) {
  Rng rng(131);
  for (int k = 0; k < 100; ++k) {
    Pair p = random_pair(rng, 5, 100);
    bool seen = false;
    for (double eps : candidate_levels(p.x, p.y, p.d)) {
      bool f = feasible(p.x, p.y, eps, p.d).feasible;
      EXPECT_TRUE(!seen || f);
      seen = seen || f;
    }
    EXPECT_TRUE(seen);
  }
}

TEST(Properties, MaxFamilyCoherence) {
  Rng rng(137);
  PseudometricFamily fam = coordinate_family(3);
  auto v = uniform_box(3, -1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    StepFunction x = random_step(rng, random_grid_jumps(rng, uniform_index(rng, 0, 4), 50), v);
    StepFunction y = random_step(rng, random_grid_jumps(rng, uniform_index(rng, 0, 4), 50), v);
    for (FamilyIndex i : fam.indices()) {
      for (FamilyIndex j : fam.indices()) {
        if (!i.subset_of(j)) continue;
        EXPECT_LE(skorohod_distance(x, y, fam.metric(i)).value, skorohod_distance(x, y, fam.metric(j)).value + 1e-12);
      }
    }
  }
}

TEST(CheckCertificate, RejectsUnderclaims) {
  DistanceResult r = skorohod_distance(indicator(0.5), indicator(0.6), abs_d);
  CertificateCheck c = check_certificate(indicator(0.5), indicator(0.6), abs_d, r.certificate);
  EXPECT_TRUE(c.holds(r.value));
  EXPECT_FALSE(c.holds(r.value - 10 * kCertificateTol));
  // the identity witnesses only the uniform bound
  EXPECT_EQ(check_certificate(indicator(0.5), indicator(0.6), abs_d, TimeChange::identity()).bound(), 1.0);
}
