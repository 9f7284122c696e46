#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skorohod/time_change.hpp"
#include "skorohod/value.hpp"

namespace skorohod {

/// A cadlag step function on [0,1].
///
/// Piece k holds values[k] on [times[k], times[k+1]); the last piece is
/// closed at 1. Right-continuity and left limits hold by construction.
/// Adjacent equal values are kept as given; see normalize().
class StepFunction {
 public:
  StepFunction(std::vector<double> times, std::vector<Value> values)
      : times_(std::move(times)), values_(std::move(values)) {
    if (times_.empty() || values_.empty()) throw std::invalid_argument("step function: empty input");
    if (times_.size() != values_.size()) {
      throw std::invalid_argument("step function: times and values differ in length");
    }
    if (times_.front() != 0.0) throw std::invalid_argument("step function: first time must be 0");
    for (std::size_t k = 0; k < times_.size(); ++k) {
      double t = times_[k];
      if (!std::isfinite(t) || t < 0.0 || t >= 1.0) {
        throw std::invalid_argument("step function: times must lie in [0,1)");
      }
      if (k > 0 && !(times_[k - 1] < t)) {
        throw std::invalid_argument("step function: times must be strictly increasing");
      }
    }
    space_ = ValueSpace::of(values_.front());
    for (const auto& v : values_) {
      if (!space_.contains(v)) {
        throw ValueSpaceMismatch("step function: values from different value spaces");
      }
    }
  }

  std::span<const double> times() const { return times_; }
  std::span<const Value> values() const { return values_; }
  /// Interior jump times t_1 < ... < t_{n-1}.
  std::span<const double> jumps() const { return std::span<const double>(times_).subspan(1); }
  std::size_t pieces() const { return times_.size(); }
  const ValueSpace& space() const { return space_; }

  /// Index of the piece containing t (right-continuous convention).
  std::size_t piece_at(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::out_of_range("step function: t outside [0,1]");
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    return static_cast<std::size_t>(it - times_.begin()) - 1;
  }

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return a.times_ == b.times_ && a.values_ == b.values_;
  }

 private:
  std::vector<double> times_;
  std::vector<Value> values_;
  ValueSpace space_;
};

inline StepFunction make_step(std::vector<double> times, std::vector<Value> values) {
  return StepFunction(std::move(times), std::move(values));
}

inline Value eval(const StepFunction& f, double t) { return f.values()[f.piece_at(t)]; }

/// f(t-), with the convention f(0-) := f(0).
inline Value left_limit(const StepFunction& f, double t) {
  std::size_t k = f.piece_at(t);
  if (k > 0 && f.times()[k] == t) return f.values()[k - 1];
  return f.values()[k];
}

/// A point t+ or t- of the split interval. 0- is not a point of it.
class SplitPoint {
 public:
  enum class Side { Minus, Plus };

  static SplitPoint plus(double t) { return SplitPoint(t, Side::Plus); }
  static SplitPoint minus(double t) { return SplitPoint(t, Side::Minus); }

  SplitPoint(double t, Side side) : t_(t), side_(side) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::out_of_range("split point: t outside [0,1]");
    if (side == Side::Minus && t == 0.0) throw std::invalid_argument("split point: 0- is not in the split interval");
  }

  double t() const { return t_; }
  Side side() const { return side_; }

  // Order of the split interval: t- < t+, and s± < t± whenever s < t.
  friend std::partial_ordering operator<=>(const SplitPoint& a, const SplitPoint& b) {
    if (auto c = a.t_ <=> b.t_; c != 0) return c;
    return static_cast<int>(a.side_) <=> static_cast<int>(b.side_);
  }
  friend bool operator==(const SplitPoint&, const SplitPoint&) = default;

 private:
  double t_;
  Side side_;
};

/// The continuous extension of f to the split interval.
inline Value eval_split(const StepFunction& f, const SplitPoint& p) {
  return p.side() == SplitPoint::Side::Plus ? eval(f, p.t()) : left_limit(f, p.t());
}

/// f evaluated on the whole split interval: the distinct piece values, sorted.
inline std::vector<Value> range_closure(const StepFunction& f) {
  std::vector<Value> out(f.values().begin(), f.values().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Merges adjacent pieces holding exactly equal values.
inline StepFunction normalize(const StepFunction& f) {
  std::vector<double> times{f.times().front()};
  std::vector<Value> values{f.values().front()};
  for (std::size_t k = 1; k < f.pieces(); ++k) {
    if (f.values()[k] == values.back()) continue;
    times.push_back(f.times()[k]);
    values.push_back(f.values()[k]);
  }
  return StepFunction(std::move(times), std::move(values));
}

/// t -> f(lambda(t)). Jumps move to lambda^{-1}(t_k).
inline StepFunction compose_time_change(const StepFunction& f, const TimeChange& lambda) {
  std::vector<double> times{0.0};
  for (double a : f.jumps()) times.push_back(lambda.inverse(a));
  return StepFunction(std::move(times), std::vector<Value>(f.values().begin(), f.values().end()));
}

}  // namespace skorohod
