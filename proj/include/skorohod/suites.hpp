#pragma once

// Seeded property suites over the whole library. Each suite returns a
// machine-readable summary; the CLI and the acceptance test both run these.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skorohod/cadlag.hpp"
#include "skorohod/counterexample.hpp"
#include "skorohod/distance.hpp"
#include "skorohod/json_io.hpp"
#include "skorohod/oracle.hpp"
#include "skorohod/pseudometric.hpp"
#include "skorohod/random.hpp"
#include "skorohod/topology.hpp"

namespace skorohod::suites {

using nlohmann::json;

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::vector<double> transfer_eps{0.2, 0.05};
  std::size_t transfer_trials = 100;
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::size_t cases = 0;
  json details = json::object();
};

inline json to_json(const SuiteResult& r) {
  return {{"suite", r.name}, {"pass", r.pass}, {"cases", r.cases}, {"details", r.details}};
}

/// One distance instance: two step functions and the pseudometric to use.
struct Instance {
  StepFunction x;
  StepFunction y;
  Pseudometric d;
};

/// Seeded pairs with at most 4 interior jumps each on the grid k/20: reals
/// with values in {0, 0.3, 1} under |.|, and points of [0,1]^2 under the
/// max of the two coordinate pseudometrics.
inline std::vector<Instance> oracle_instances(std::uint64_t seed, std::size_t per_space = 250) {
  Rng rng(seed);
  std::vector<Instance> out;
  auto scalar = pick_from({0.0, 0.3, 1.0});
  auto plane = uniform_box(2, 0.0, 1.0);
  const Pseudometric abs = Pseudometric::euclidean();
  const Pseudometric max12 = coordinate_family(2).metric(FamilyIndex::of({1, 2}));
  for (std::size_t k = 0; k < 2 * per_space; ++k) {
    auto xj = random_grid_jumps(rng, uniform_index(rng, 0, 4), 20);
    auto yj = random_grid_jumps(rng, uniform_index(rng, 0, 4), 20);
    if (k < per_space) {
      auto x = random_step(rng, xj, scalar);
      auto y = random_step(rng, yj, scalar);
      out.push_back({std::move(x), std::move(y), abs});
    } else {
      auto x = random_step(rng, xj, plane);
      auto y = random_step(rng, yj, plane);
      out.push_back({std::move(x), std::move(y), max12});
    }
  }
  return out;
}

inline StepFunction indicator(double from) { return StepFunction({0.0, from}, {Value(0.0), Value(1.0)}); }

/// Indicators of [a,1] and [b,1] for a, b in {0.1, ..., 0.9}.
inline std::vector<Instance> indicator_instances() {
  std::vector<Instance> out;
  for (int a = 1; a <= 9; ++a) {
    for (int b = 1; b <= 9; ++b) out.push_back({indicator(a / 10.0), indicator(b / 10.0), Pseudometric::euclidean()});
  }
  return out;
}

inline bool certificate_round_trip(const Instance& inst, const DistanceResult& r) {
  // through the same JSON the CLI emits and certificate-check consumes
  json doc = io::to_json(r);
  TimeChange cert = io::time_change_from_json(doc["certificate"]);
  return check_certificate(inst.x, inst.y, inst.d, cert).holds(doc["distance"].get<double>());
}

inline SuiteResult oracle_suite(const SuiteOptions& opt) {
  SuiteResult res{"oracle"};
  std::size_t value_mismatch = 0, feasibility_mismatch = 0, levels_checked = 0, bisection_mismatch = 0;
  double worst = 0.0;
  for (const auto& inst : oracle_instances(opt.seed)) {
    BruteForceOracle oracle(inst.x, inst.y, inst.d);
    double dp = skorohod_distance(inst.x, inst.y, inst.d).value;
    double ref = oracle.distance();
    worst = std::max(worst, std::abs(dp - ref));
    if (std::abs(dp - ref) > 1e-9) ++value_mismatch;
    if (std::abs(bisection_distance(inst.x, inst.y, inst.d) - dp) > 1e-11) ++bisection_mismatch;
    for (double eps : candidate_levels(inst.x, inst.y, inst.d)) {
      ++levels_checked;
      if (feasible(inst.x, inst.y, eps, inst.d).feasible != oracle.feasible(eps)) ++feasibility_mismatch;
    }
    ++res.cases;
  }
  res.pass = value_mismatch == 0 && feasibility_mismatch == 0 && bisection_mismatch == 0;
  res.details = {{"value_mismatches", value_mismatch},
                 {"feasibility_mismatches", feasibility_mismatch},
                 {"bisection_mismatches", bisection_mismatch},
                 {"levels_checked", levels_checked},
                 {"max_abs_difference", worst}};
  return res;
}

inline SuiteResult indicator_suite(const SuiteOptions&) {
  SuiteResult res{"indicator"};
  // the law min(|a - b|, 1) is first confirmed by the oracle at spot points
  std::size_t law_failures = 0;
  for (auto [a, b] : {std::pair{0.1, 0.9}, {0.5, 0.6}, {0.3, 0.2}, {0.7, 0.7}, {0.9, 0.4}}) {
    double ref = oracle_distance(indicator(a), indicator(b), Pseudometric::euclidean());
    if (std::abs(ref - std::min(std::abs(a - b), 1.0)) > 1e-9) ++law_failures;
  }
  std::size_t failures = 0;
  for (const auto& inst : indicator_instances()) {
    double a = inst.x.jumps()[0], b = inst.y.jumps()[0];
    double got = skorohod_distance(inst.x, inst.y, inst.d).value;
    if (std::abs(got - std::min(std::abs(a - b), 1.0)) > 1e-9) ++failures;
    ++res.cases;
  }
  res.pass = law_failures == 0 && failures == 0;
  res.details = {{"oracle_spot_checks", 5}, {"law_failures", law_failures}, {"failures", failures}};
  return res;
}

inline SuiteResult axioms_suite(const SuiteOptions& opt) {
  SuiteResult res{"axioms"};
  Rng rng(opt.seed ^ 0xa5a5a5a5ULL);
  auto scalar = pick_from({0.0, 0.3, 1.0});
  auto plane = uniform_box(2, 0.0, 1.0);
  std::size_t identity = 0, symmetry = 0, triangle = 0;
  double worst_symmetry = 0.0, worst_triangle = 0.0;
  for (std::size_t k = 0; k < 200; ++k) {
    auto draw = [&]() {
      auto jumps = random_grid_jumps(rng, uniform_index(rng, 0, 4), 100);
      return k % 2 == 0 ? random_step(rng, jumps, scalar) : random_step(rng, jumps, plane);
    };
    StepFunction x = draw(), y = draw(), z = draw();
    const Pseudometric d = Pseudometric::euclidean();
    if (skorohod_distance(x, x, d).value != 0.0) ++identity;
    double xy = skorohod_distance(x, y, d).value, yx = skorohod_distance(y, x, d).value;
    double yz = skorohod_distance(y, z, d).value, xz = skorohod_distance(x, z, d).value;
    worst_symmetry = std::max(worst_symmetry, std::abs(xy - yx));
    worst_triangle = std::max(worst_triangle, xz - xy - yz);
    if (std::abs(xy - yx) > 1e-9) ++symmetry;
    if (xz > xy + yz + 1e-9) ++triangle;
    ++res.cases;
  }
  res.pass = identity == 0 && symmetry == 0 && triangle == 0;
  res.details = {{"identity_failures", identity},
                 {"symmetry_failures", symmetry},
                 {"triangle_failures", triangle},
                 {"max_asymmetry", worst_symmetry},
                 {"max_triangle_excess", worst_triangle}};
  return res;
}

inline SuiteResult certificates_suite(const SuiteOptions& opt) {
  SuiteResult res{"certificates"};
  std::size_t failures = 0;
  auto run = [&](const std::vector<Instance>& batch) {
    for (const auto& inst : batch) {
      if (!certificate_round_trip(inst, skorohod_distance(inst.x, inst.y, inst.d))) ++failures;
      ++res.cases;
    }
  };
  run(oracle_instances(opt.seed));
  run(indicator_instances());
  res.pass = failures == 0;
  res.details = {{"failures", failures}};
  return res;
}

inline SuiteResult transfer_suite(const SuiteOptions& opt) {
  SuiteResult res{"transfer"};
  Rng rng(opt.seed ^ 0x7f4a7c15ULL);
  const PseudometricFamily euclid = max_close({Pseudometric::euclidean()});
  const PseudometricFamily coords = coordinate_family(2);
  std::size_t modulus_failures = 0, violations = 0, trials = 0;
  json per_direction = json::array();
  for (int direction = 0; direction < 2; ++direction) {
    const PseudometricFamily& coarse = direction == 0 ? euclid : coords;
    const PseudometricFamily& fine = direction == 0 ? coords : euclid;
    for (double eps : opt.transfer_eps) {
      std::size_t dir_violations = 0, dir_modulus_failures = 0;
      double min_delta = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < 50; ++k) {
        std::vector<double> jumps;
        for (std::size_t j = uniform_index(rng, 0, 4); j > 0; --j) jumps.push_back(uniform(rng, 0.0, 1.0));
        std::sort(jumps.begin(), jumps.end());
        jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());
        jumps.erase(std::remove(jumps.begin(), jumps.end(), 0.0), jumps.end());
        StepFunction x = random_step(rng, jumps, uniform_box(2, -2.0, 2.0));
        TransferReport rep = t1_transfer_check(x, coarse, fine, coarse.full(), eps, perturbation_sampler(x),
                                               opt.transfer_trials, rng);
        if (!rep.modulus_failure.empty()) ++dir_modulus_failures;
        if (rep.modulus) min_delta = std::min(min_delta, rep.modulus->delta);
        dir_violations += rep.violations.size();
        trials += rep.trials;
        ++res.cases;
      }
      violations += dir_violations;
      modulus_failures += dir_modulus_failures;
      per_direction.push_back({{"coarse", direction == 0 ? "euclidean" : "coordinate max-closure"},
                               {"fine", direction == 0 ? "coordinate max-closure" : "euclidean"},
                               {"eps", eps},
                               {"violations", dir_violations},
                               {"modulus_failures", dir_modulus_failures},
                               {"min_delta", min_delta}});
    }
  }
  res.pass = violations == 0 && modulus_failures == 0;
  res.details = {{"trials", trials}, {"violations", violations}, {"modulus_failures", modulus_failures}, {"runs", per_direction}};
  return res;
}

/// x_n: every jump shifted by 1/(10n) and every coordinate by 1/(10n).
inline StepFunction shifted(const StepFunction& x, std::size_t n) {
  const double h = 1.0 / (10.0 * static_cast<double>(n));
  std::vector<double> times{0.0};
  for (double a : x.jumps()) times.push_back(a + h);
  std::vector<Value> values;
  for (const auto& v : x.values()) {
    Coords c = v.coords();
    for (double& e : c) e += h;
    values.emplace_back(std::move(c));
  }
  return StepFunction(std::move(times), std::move(values));
}

inline SuiteResult pushforward_suite(const SuiteOptions& opt) {
  SuiteResult res{"pushforward"};
  Rng rng(opt.seed ^ 0x2545f491ULL);
  const PseudometricFamily source = coordinate_family(2);
  struct Case {
    const char* name;
    ValueMap psi;
    PseudometricFamily target;
  };
  std::vector<Case> cases{{"identity", ValueMap::identity(), coordinate_family(2)},
                          {"projection", ValueMap::projection({1}), coordinate_family(1)},
                          {"square", ValueMap::square(), coordinate_family(2)}};
  json per_map = json::array();
  bool pass = true;
  for (const auto& c : cases) {
    std::size_t identity_failures = 0, final_failures = 0;
    double worst_gap = 0.0, worst_final = 0.0;
    for (std::size_t k = 0; k < 20; ++k) {
      // jumps on k/20 up to 0.85, so shifts by at most 0.1 stay inside (0,1)
      std::vector<double> jumps;
      for (double a : random_grid_jumps(rng, uniform_index(rng, 0, 4), 20)) {
        if (a <= 0.85) jumps.push_back(a);
      }
      StepFunction x = random_step(rng, jumps, uniform_box(2, -2.0, 2.0));
      std::vector<StepFunction> seq;
      for (std::size_t n = 1; n <= 20; ++n) seq.push_back(shifted(x, n));
      ContinuityReport rep = t2_continuity_check(c.psi, x, seq, source, c.target, c.target.full(), 1e-2);
      for (const auto& row : rep.rows) worst_gap = std::max(worst_gap, std::abs(row.pulled_back_distance - row.pushed_distance));
      worst_final = std::max(worst_final, rep.rows.back().pushed_distance);
      if (!rep.identity_holds) ++identity_failures;
      if (!rep.final_below) ++final_failures;
      ++res.cases;
    }
    pass = pass && identity_failures == 0 && final_failures == 0;
    per_map.push_back({{"psi", c.name},
                       {"identity_failures", identity_failures},
                       {"max_identity_gap", worst_gap},
                       {"final_above_threshold", final_failures},
                       {"max_final_distance", worst_final}});
  }
  res.pass = pass;
  res.details = {{"threshold_at_n20", 1e-2}, {"maps", per_map}};
  return res;
}

inline json to_json(const kexample::DiscontinuityReport& r) {
  return {{"pass", r.pass()},
          {"truncation", r.truncation},
          {"cadlag_tau0", r.cadlag_tau0},
          {"piece_structure_matches", r.piece_structure_matches},
          {"f_avoids_K", r.f_avoids_k},
          {"grid_points_checked", r.grid_points_checked},
          {"pieces_checked", r.pieces_checked},
          {"right_continuous_at_0_tauK", r.right_continuous_at_0_tauk},
          {"left_limits_are_K", r.left_limits_are_k},
          {"discontinuity_witnessed", r.discontinuity_witnessed},
          {"witness", r.witness},
          {"split_sequence_converges", r.split_sequence_converges},
          {"isolation_witness_ok", r.isolation_witness_ok},
          {"isolation_count", r.isolation_count},
          {"cited_fact", r.cited_fact}};
}

inline SuiteResult example_k_suite(const SuiteOptions&) {
  using namespace kexample;
  SuiteResult res{"example-k"};
  json checks = json::object();
  auto check = [&](const std::string& name, bool ok) {
    checks[name] = ok;
    ++res.cases;
    return ok;
  };
  bool pass = true;
  pass &= check("f(0)=0", f_example(Rational(0)) == 0);
  pass &= check("f(1)=0", f_example(Rational(1)) == 0);
  pass &= check("f(1/3)=5/12", f_example(Rational(1, 3)) == Rational(5, 12));
  pass &= check("f(0.9)=0.95", f_example(Rational(9, 10)) == Rational(19, 20));
  bool left = true;
  for (long n = 1; n <= 100; ++n) left = left && f_left_limit(reciprocal(n)) == reciprocal(n);
  pass &= check("f(1/n-)=1/n for n<=100", left);

  DiscontinuityReport report = split_extension_discontinuity_report(50, 100, 10000);
  pass &= check("f avoids K (grid k/1e4 and pieces n<=100)", report.f_avoids_k);

  ConvergenceVerdict v = converges_tauk(TailSequence::f_left_limits_at_k(), Rational(0));
  bool witness_ok = !v.converges && v.witness && v.witness->describe() == TauKNeighborhood::line_minus_k().describe() &&
                    v.escapes_within_horizon == 10000;
  pass &= check("f(1/n-) does not converge to 0 in tau_K, witness R\\K", witness_ok);

  bool isolation = true;
  auto cover = k_isolation_witness(50);
  for (const auto& nb : cover) isolation = isolation && k_points_inside(nb, 100) == 1;
  pass &= check("k_isolation_witness(50): one K-point each up to 1/100", isolation && cover.size() == 50);
  pass &= check("discontinuity report", report.pass());

  res.pass = pass;
  res.details = {{"checks", checks}, {"report", to_json(report)}};
  return res;
}

inline SuiteResult time_change_suite(const SuiteOptions& opt) {
  SuiteResult res{"time-change"};
  Rng rng(opt.seed ^ 0x9e3779b9ULL);
  std::size_t warp_failures = 0, uniform_failures = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    auto jumps = random_grid_jumps(rng, uniform_index(rng, 0, 5), 100);
    StepFunction x = k % 2 == 0 ? random_step(rng, jumps, pick_from({0.0, 0.3, 1.0}))
                                : random_step(rng, jumps, uniform_box(2, 0.0, 1.0));
    TimeChange lambda = random_time_change(rng, 4);
    double d = skorohod_distance(compose_time_change(x, lambda), x, Pseudometric::euclidean()).value;
    if (d > warp_deviation(lambda) + 1e-9) ++warp_failures;
    ++res.cases;
  }
  for (const auto& inst : oracle_instances(opt.seed)) {
    if (skorohod_distance(inst.x, inst.y, inst.d).value > uniform_distance(inst.x, inst.y, inst.d)) ++uniform_failures;
    ++res.cases;
  }
  res.pass = warp_failures == 0 && uniform_failures == 0;
  res.details = {{"warp_bound_failures", warp_failures}, {"uniform_bound_failures", uniform_failures}};
  return res;
}

struct SuiteEntry {
  const char* name;
  SuiteResult (*run)(const SuiteOptions&);
};

inline const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries{
      {"oracle", oracle_suite},         {"indicator", indicator_suite},     {"axioms", axioms_suite},
      {"certificates", certificates_suite}, {"transfer", transfer_suite}, {"pushforward", pushforward_suite},
      {"example-k", example_k_suite},   {"time-change", time_change_suite},
  };
  return entries;
}

}  // namespace skorohod::suites
