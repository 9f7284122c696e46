#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "skorohod/cadlag.hpp"
#include "skorohod/pseudometric.hpp"

namespace skorohod {

class OracleTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Brute-force reference for the Skorohod distance of step functions.
///
/// Enumerates every interleaving of x's jump images u_1 < ... < u_m among
/// y's fixed jumps b_1 < ... < b_p. Each u_i either sits in an open gap
/// (b_g, b_{g+1}) or coincides with some b_j (at most one u per b_j). An
/// interleaving fixes which pieces of x meet which pieces of y, hence the
/// value part of the objective. The time part is the least eps admitting
/// u_i in the closure of its slot, nondecreasing, with |u_i - a_i| <= eps;
/// it is found by bisection over a greedy left-to-right placement. Shares no
/// code with the alignment DP in distance.hpp.
class BruteForceOracle {
 public:
  static constexpr std::size_t kMaxJumps = 10;

  BruteForceOracle(const StepFunction& x, const StepFunction& y, const Pseudometric& d)
      : x_(x), y_(y), d_(d), a_(x.jumps().begin(), x.jumps().end()), b_(y.jumps().begin(), y.jumps().end()) {
    require_same_space(x.space(), y.space());
    if (a_.size() + b_.size() > kMaxJumps) throw OracleTooLarge("oracle: more than 10 interior jumps in total");
    enumerate();
  }

  /// min over interleavings of max(value part, time part).
  double distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : slots_) best = std::min(best, std::max(value_part(s), time_part(s)));
    return best;
  }

  /// Whether some interleaving meets level eps (with the same slack as the DP).
  bool feasible(double eps, double tol = 1e-12) const {
    for (const auto& s : slots_) {
      if (value_part(s) <= eps + tol && placeable(s, eps, tol)) return true;
    }
    return false;
  }

  std::size_t interleavings() const { return slots_.size(); }

 private:
  // Slot 2g: open gap g between b_g and b_{g+1} (b_0 = 0, b_{p+1} = 1).
  // Slot 2j - 1: exactly at b_j.
  void enumerate() {
    std::vector<std::size_t> current;
    const std::size_t top = 2 * b_.size();
    std::function<void(std::size_t)> rec = [&](std::size_t lowest) {
      if (current.size() == a_.size()) {
        slots_.push_back(current);
        return;
      }
      for (std::size_t s = lowest; s <= top; ++s) {
        current.push_back(s);
        // an odd slot holds at most one u
        rec(s % 2 == 1 ? s + 1 : s);
        current.pop_back();
      }
    };
    rec(0);
  }

  double bound(std::size_t k) const {
    if (k == 0) return 0.0;
    if (k > b_.size()) return 1.0;
    return b_[k - 1];
  }

  double value_part(const std::vector<std::size_t>& slots) const {
    const std::size_t m = a_.size();
    double worst = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
      // x piece i runs from u_i (u_0 = 0) to u_{i+1} (u_{m+1} = 1)
      std::size_t first = 0;
      if (i > 0) {
        std::size_t s = slots[i - 1];
        first = s % 2 == 0 ? s / 2 : (s + 1) / 2;
      }
      std::size_t last = b_.size();
      if (i < m) {
        std::size_t s = slots[i];
        last = s % 2 == 0 ? s / 2 : (s - 1) / 2;
      }
      for (std::size_t j = first; j <= last; ++j) {
        worst = std::max(worst, d_(x_.values()[i], y_.values()[j]));
      }
    }
    return worst;
  }

  bool placeable(const std::vector<std::size_t>& slots, double eps, double tol) const {
    double prev = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      std::size_t s = slots[i];
      double lo = s % 2 == 0 ? bound(s / 2) : bound((s + 1) / 2);
      double hi = s % 2 == 0 ? bound(s / 2 + 1) : lo;
      double u = std::max({prev, lo, a_[i] - eps});
      if (u > std::min(hi, a_[i] + eps) + tol) return false;
      prev = u;
    }
    return true;
  }

  double time_part(const std::vector<std::size_t>& slots) const {
    if (placeable(slots, 0.0, 0.0)) return 0.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (placeable(slots, mid, 0.0) ? hi : lo) = mid;
    }
    return hi;
  }

  StepFunction x_;
  StepFunction y_;
  Pseudometric d_;
  std::vector<double> a_, b_;
  std::vector<std::vector<std::size_t>> slots_;
};

inline double oracle_distance(const StepFunction& x, const StepFunction& y, const Pseudometric& d) {
  return BruteForceOracle(x, y, d).distance();
}

}  // namespace skorohod
