#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "skorohod/cadlag.hpp"
#include "skorohod/time_change.hpp"

namespace skorohod {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// `count` distinct jump times k/grid with 1 <= k < grid, sorted.
inline std::vector<double> random_grid_jumps(Rng& rng, std::size_t count, std::size_t grid) {
  std::vector<std::size_t> ks(grid - 1);
  for (std::size_t k = 0; k < ks.size(); ++k) ks[k] = k + 1;
  std::shuffle(ks.begin(), ks.end(), rng);
  ks.resize(std::min(count, ks.size()));
  std::sort(ks.begin(), ks.end());
  std::vector<double> out;
  for (auto k : ks) out.push_back(static_cast<double>(k) / static_cast<double>(grid));
  return out;
}

/// A step function with the given interior jumps and values drawn by `draw`.
template <typename Draw>
StepFunction random_step(Rng& rng, const std::vector<double>& jumps, Draw&& draw) {
  std::vector<double> times{0.0};
  times.insert(times.end(), jumps.begin(), jumps.end());
  std::vector<Value> values;
  for (std::size_t k = 0; k < times.size(); ++k) values.push_back(draw(rng));
  return StepFunction(std::move(times), std::move(values));
}

/// Values picked from a finite list of reals.
inline auto pick_from(std::vector<double> choices) {
  return [choices = std::move(choices)](Rng& rng) { return Value(choices[uniform_index(rng, 0, choices.size() - 1)]); };
}

/// Values uniform in the box [lo, hi]^dim.
inline auto uniform_box(std::size_t dim, double lo, double hi) {
  return [=](Rng& rng) {
    Coords c(dim);
    for (double& v : c) v = uniform(rng, lo, hi);
    return Value(std::move(c));
  };
}

/// A random piecewise-linear time change with up to `max_knots` interior knots.
inline TimeChange random_time_change(Rng& rng, std::size_t max_knots) {
  std::size_t n = uniform_index(rng, 0, max_knots);
  std::vector<double> ts, ss;
  for (std::size_t k = 0; k < n; ++k) {
    ts.push_back(uniform(rng, 0.0, 1.0));
    ss.push_back(uniform(rng, 0.0, 1.0));
  }
  std::sort(ts.begin(), ts.end());
  std::sort(ss.begin(), ss.end());
  std::vector<TimeChange::Knot> knots{{0.0, 0.0}};
  for (std::size_t k = 0; k < n; ++k) {
    if (ts[k] <= knots.back().first || ss[k] <= knots.back().second || ts[k] >= 1.0 || ss[k] >= 1.0) continue;
    knots.emplace_back(ts[k], ss[k]);
  }
  knots.emplace_back(1.0, 1.0);
  return TimeChange(std::move(knots));
}

}  // namespace skorohod
