#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "skorohod/cadlag.hpp"
#include "skorohod/distance.hpp"
#include "skorohod/pseudometric.hpp"
#include "skorohod/random.hpp"
#include "skorohod/value_map.hpp"

namespace skorohod {

class ModulusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SamplerStarvation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A family index i and radius delta with: z in K, d_i(z, y) < delta  =>  rho(z, y) < eps.
struct Modulus {
  FamilyIndex index;
  double delta = 0.0;
};

struct ModulusOptions {
  std::size_t samples = 10000;
  int max_depth = 40;
};

namespace detail {

/// Draws y with d(z, y) < radius. Candidates come from a wide range of
/// scales (including far single-axis moves, to expose directions the
/// pseudometric ignores) and are pulled toward z until they land inside.
inline std::optional<Value> sample_in_ball(const Pseudometric& d, const Value& z, double radius, Rng& rng,
                                           std::span<const Value> label_pool) {
  if (z.is_label()) {
    const Value& y = label_pool[uniform_index(rng, 0, label_pool.size() - 1)];
    if (d(z, y) < radius) return y;
    return std::nullopt;
  }
  const Coords& c = z.coords();
  Coords offset(c.size());
  const double scale = uniform(rng, 0.0, 1.0) < 0.75 ? radius * std::pow(10.0, uniform(rng, -1.0, 3.0))
                                                     : std::pow(10.0, uniform(rng, -1.0, 1.0));
  if (uniform(rng, 0.0, 1.0) < 0.5) {
    offset[uniform_index(rng, 0, c.size() - 1)] = uniform(rng, -scale, scale);
  } else {
    for (double& o : offset) o = uniform(rng, -scale, scale);
  }
  for (int shrink = 0; shrink < 80; ++shrink) {
    Coords y(c);
    for (std::size_t k = 0; k < c.size(); ++k) y[k] += offset[k];
    Value candidate(std::move(y));
    if (d(z, candidate) < radius) return candidate;
    for (double& o : offset) o *= 0.5;
  }
  return std::nullopt;
}

/// Rejection-sampling check of ball(d, z, radius) subset of {y : rho(z, y) < bound}.
inline bool ball_inside(const Pseudometric& d, const Value& z, double radius, const Pseudometric& rho, double bound,
                        Rng& rng, std::size_t samples, std::span<const Value> label_pool) {
  if (rho(z, z) >= bound) return false;
  for (std::size_t s = 0; s < samples; ++s) {
    auto y = sample_in_ball(d, z, radius, rng, label_pool);
    if (y && rho(z, *y) >= bound) return false;
  }
  return true;
}

inline bool euclidean_over_coordinates(const PseudometricFamily& family, const Pseudometric& rho, std::size_t dim) {
  if (rho.kind() != Pseudometric::Kind::Euclidean) return false;
  std::vector<bool> seen(dim + 1, false);
  for (const auto& g : family.generators()) {
    if (g.kind() != Pseudometric::Kind::Coordinate) return false;
    if (g.coordinate_index() <= dim) seen[g.coordinate_index()] = true;
  }
  return std::all_of(seen.begin() + 1, seen.end(), [](bool b) { return b; });
}

}  // namespace detail

/// A uniform modulus of rho against a family on a finite compact set K.
///
/// For each z in K this finds an index j_z and delta_z with
/// ball(d_{j_z}, z, delta_z) inside {y : rho(y, z) < eps / 2}, then returns
/// the union of the j_z (the family is max-closed, so the union dominates
/// each d_{j_z}) and the least delta_z. Since K is finite, every point of K
/// is its own cover center. j_z is the full index, which dominates every
/// other index, and delta_z is searched geometrically over eps/2, eps/4, ...
/// with rejection-sampling validation. Euclidean rho over a coordinate
/// family on R^n has the closed form delta_z = eps / (2 sqrt n).
/// The result is validated once more against eps before it is returned.
inline Modulus uniform_modulus(const PseudometricFamily& family, std::span<const Value> compact, const Pseudometric& rho,
                               double eps, Rng& rng, const ModulusOptions& options = {}) {
  if (compact.empty()) throw std::invalid_argument("uniform_modulus: empty compact set");
  if (!(eps > 0.0)) throw std::invalid_argument("uniform_modulus: eps must be positive");
  const ValueSpace space = ValueSpace::of(compact.front());
  for (const auto& z : compact) require_same_space(space, ValueSpace::of(z));

  std::vector<Value> label_pool(compact.begin(), compact.end());
  label_pool.emplace_back(std::string("\x01unseen-label"));

  const FamilyIndex j = family.full();
  const Pseudometric dj = family.metric(j);
  FamilyIndex index;
  double delta = std::numeric_limits<double>::infinity();

  const bool closed_form = !space.labels && detail::euclidean_over_coordinates(family, rho, space.dim);
  for (const auto& z : compact) {
    double delta_z = 0.0;
    if (closed_form) {
      delta_z = eps / (2.0 * std::sqrt(static_cast<double>(space.dim)));
    } else {
      double r = eps;
      for (int depth = 1; depth <= options.max_depth && delta_z == 0.0; ++depth) {
        r *= 0.5;
        if (detail::ball_inside(dj, z, r, rho, eps / 2.0, rng, options.samples, label_pool)) delta_z = r;
      }
      if (delta_z == 0.0) {
        throw ModulusError("uniform_modulus: no radius found; rho is not controlled by the family near a point of K");
      }
    }
    index = index | j;
    delta = std::min(delta, delta_z);
  }

  const Pseudometric di = family.metric(index);
  for (const auto& z : compact) {
    if (!detail::ball_inside(di, z, delta, rho, eps, rng, options.samples, label_pool)) {
      throw ModulusError("uniform_modulus: validation failed for the combined modulus");
    }
  }
  return Modulus{index, delta};
}

/// Draws a step function near x at the given radius.
using StepSampler = std::function<StepFunction(Rng&, double radius)>;

/// Perturbs x: jump times and vector values move by at most ~radius, and
/// sometimes a short extra piece with a nearby value is inserted.
inline StepSampler perturbation_sampler(StepFunction x) {
  return [x = std::move(x)](Rng& rng, double radius) {
    const double r = radius * uniform(rng, 0.0, 1.5);
    auto nudge = [&](const Value& v) {
      if (v.is_label()) return v;
      Coords c = v.coords();
      for (double& e : c) e += uniform(rng, -r, r);
      return Value(std::move(c));
    };

    std::vector<double> times{0.0};
    for (double a : x.jumps()) times.push_back(a + uniform(rng, -r, r));
    bool ordered = true;
    for (std::size_t k = 1; k < times.size(); ++k) {
      ordered = ordered && times[k] > times[k - 1] && times[k] < 1.0;
    }
    if (!ordered) times.assign(x.times().begin(), x.times().end());
    std::vector<Value> values;
    for (const auto& v : x.values()) values.push_back(nudge(v));

    if (uniform(rng, 0.0, 1.0) < 0.25) {
      std::size_t k = uniform_index(rng, 0, values.size() - 1);
      double end = k + 1 < times.size() ? times[k + 1] : 1.0;
      double width = std::min(end - times[k], r);
      double start = uniform(rng, times[k], end);
      double stop = std::min(end, start + width * uniform(rng, 0.0, 1.0));
      if (start > times[k] && stop > start && stop < end) {
        times.insert(times.begin() + static_cast<std::ptrdiff_t>(k) + 1, {start, stop});
        values.insert(values.begin() + static_cast<std::ptrdiff_t>(k) + 1, {nudge(values[k]), values[k]});
      }
    }
    return StepFunction(std::move(times), std::move(values));
  };
}

struct TransferViolation {
  StepFunction y;
  double fine_distance;    // Skorohod distance under the fine index
  double coarse_distance;  // Skorohod distance under the coarse index
};

struct TransferReport {
  std::size_t trials = 0;
  std::size_t rejected = 0;
  std::optional<Modulus> modulus;
  std::string modulus_failure;
  std::vector<TransferViolation> violations;
  bool pass() const { return modulus_failure.empty() && violations.empty(); }
};

inline constexpr double kTransferTol = 1e-9;

/// Transfer of smallness from the fine to the coarse Skorohod pseudometric.
///
/// With K the range of x, (j, delta) = uniform_modulus(fine, K, coarse_i, eps).
/// Every sampled y with fine_j-distance below min(delta, eps) must have
/// coarse_i-distance at most eps: the time change that nearly attains the
/// fine distance keeps x(lambda(t)) in K and fine_j(x(lambda(t)), y(t)) < delta,
/// so coarse_i(x(lambda(t)), y(t)) < eps for all t.
inline TransferReport t1_transfer_check(const StepFunction& x, const PseudometricFamily& coarse,
                                        const PseudometricFamily& fine, FamilyIndex i, double eps,
                                        const StepSampler& sampler, std::size_t trials, Rng& rng,
                                        const ModulusOptions& options = {}) {
  TransferReport report;
  const Pseudometric di = coarse.metric(i);
  const std::vector<Value> range = range_closure(x);
  try {
    report.modulus = uniform_modulus(fine, range, di, eps, rng, options);
  } catch (const ModulusError& e) {
    report.modulus_failure = e.what();
    return report;
  }
  const Pseudometric zj = fine.metric(report.modulus->index);
  const double radius = std::min(report.modulus->delta, eps);

  const std::size_t budget = 100 * trials + 1000;
  std::size_t attempts = 0;
  while (report.trials < trials) {
    if (++attempts > budget) throw SamplerStarvation("t1_transfer_check: sampler cannot reach the fine ball");
    StepFunction y = sampler(rng, radius);
    double fine_d = skorohod_distance(x, y, zj).value;
    if (!(fine_d < radius)) {
      ++report.rejected;
      continue;
    }
    ++report.trials;
    double coarse_d = skorohod_distance(x, y, di).value;
    if (coarse_d > eps + kTransferTol) report.violations.push_back({std::move(y), fine_d, coarse_d});
  }
  return report;
}

/// Psi(x) = psi o x, normalized (psi may merge adjacent pieces).
inline StepFunction pushforward(const ValueMap& psi, const StepFunction& x) {
  std::vector<Value> values;
  for (const auto& v : x.values()) values.push_back(psi(v));
  return normalize(StepFunction(std::vector<double>(x.times().begin(), x.times().end()), std::move(values)));
}

struct ContinuityRow {
  std::size_t n = 0;
  double source_distance = 0.0;       // max over source indices i of d_i~(x_n, x)
  double pulled_back_distance = 0.0;  // Skorohod distance of (x_n, x) under zeta_j(psi(.), psi(.))
  double pushed_distance = 0.0;       // zeta_j~(Psi x_n, Psi x)
  bool identity_holds = false;
};

struct ContinuityReport {
  std::vector<ContinuityRow> rows;
  bool identity_holds = true;
  /// For k = 1, 2, 3: the first n from which every pushed distance is <= 10^-k.
  std::vector<std::optional<std::size_t>> settles_below;
  double final_threshold = 1e-2;
  bool final_below = false;
  bool pass() const { return identity_holds && final_below; }
};

inline constexpr double kIdentityTol = 1e-9;

/// Continuity of the pushforward Psi along a sequence x_n -> x.
///
/// Per row, both sides of zeta_j~(Psi x_n, Psi x) = (zeta_j o psi)~(x_n, x)
/// are computed independently, together with the source-side distance.
inline ContinuityReport t2_continuity_check(const ValueMap& psi, const StepFunction& x,
                                            std::span<const StepFunction> sequence, const PseudometricFamily& source,
                                            const PseudometricFamily& target, FamilyIndex j,
                                            double final_threshold = 1e-2) {
  ContinuityReport report;
  report.final_threshold = final_threshold;
  const Pseudometric zeta = target.metric(j);
  const Pseudometric pulled = Pseudometric::pulled_back(psi, zeta);
  const StepFunction image = pushforward(psi, x);

  for (std::size_t n = 0; n < sequence.size(); ++n) {
    const StepFunction& xn = sequence[n];
    ContinuityRow row;
    row.n = n + 1;
    for (FamilyIndex i : source.indices()) {
      row.source_distance = std::max(row.source_distance, skorohod_distance(xn, x, source.metric(i)).value);
    }
    row.pulled_back_distance = skorohod_distance(xn, x, pulled).value;
    row.pushed_distance = skorohod_distance(pushforward(psi, xn), image, zeta).value;
    row.identity_holds = std::abs(row.pulled_back_distance - row.pushed_distance) <= kIdentityTol;
    report.identity_holds = report.identity_holds && row.identity_holds;
    report.rows.push_back(row);
  }

  for (int k = 1; k <= 3; ++k) {
    const double threshold = std::pow(10.0, -k);
    std::optional<std::size_t> from;
    for (std::size_t r = report.rows.size(); r-- > 0;) {
      if (report.rows[r].pushed_distance > threshold) break;
      from = report.rows[r].n;
    }
    report.settles_below.push_back(from);
  }
  report.final_below = !report.rows.empty() && report.rows.back().pushed_distance <= final_threshold;
  return report;
}

}  // namespace skorohod
