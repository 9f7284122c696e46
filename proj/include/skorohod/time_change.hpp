#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace skorohod {

class InvalidTimeChange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A piecewise-linear, strictly increasing bijection of [0,1].
///
/// Knots are (t, lambda(t)) pairs, strictly increasing in both coordinates,
/// from (0,0) to (1,1). Between knots the map is linear, so |lambda(t) - t|
/// attains its supremum at a knot.
class TimeChange {
 public:
  using Knot = std::pair<double, double>;

  TimeChange() : knots_{{0.0, 0.0}, {1.0, 1.0}} {}

  explicit TimeChange(std::vector<Knot> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2) throw InvalidTimeChange("time change needs at least two knots");
    if (knots_.front() != Knot{0.0, 0.0}) throw InvalidTimeChange("time change must start at (0,0)");
    if (knots_.back() != Knot{1.0, 1.0}) throw InvalidTimeChange("time change must end at (1,1)");
    for (std::size_t k = 1; k < knots_.size(); ++k) {
      const auto& [t0, s0] = knots_[k - 1];
      const auto& [t1, s1] = knots_[k];
      if (!std::isfinite(t1) || !std::isfinite(s1) || !(t0 < t1) || !(s0 < s1)) {
        throw InvalidTimeChange("time change knots must be strictly increasing in both coordinates");
      }
    }
  }

  static TimeChange identity() { return TimeChange(); }

  const std::vector<Knot>& knots() const { return knots_; }

  double operator()(double t) const { return interpolate(t, false); }

  /// lambda^{-1}(s); hits knot abscissae exactly when s is a knot ordinate.
  double inverse(double s) const { return interpolate(s, true); }

  friend bool operator==(const TimeChange&, const TimeChange&) = default;

 private:
  double interpolate(double arg, bool inverse) const {
    if (arg < 0.0 || arg > 1.0) throw std::out_of_range("time change argument outside [0,1]");
    auto in = [inverse](const Knot& k) { return inverse ? k.second : k.first; };
    auto out = [inverse](const Knot& k) { return inverse ? k.first : k.second; };
    auto it = std::lower_bound(knots_.begin(), knots_.end(), arg,
                               [&](const Knot& k, double v) { return in(k) < v; });
    if (in(*it) == arg) return out(*it);
    const Knot& hi = *it;
    const Knot& lo = *(it - 1);
    double w = (arg - in(lo)) / (in(hi) - in(lo));
    double r = out(lo) + w * (out(hi) - out(lo));
    return std::clamp(r, out(lo), out(hi));
  }

  std::vector<Knot> knots_;
};

/// sup_t |lambda(t) - t|, exact for piecewise-linear time changes.
inline double warp_deviation(const TimeChange& lambda) {
  double dev = 0.0;
  for (const auto& [t, s] : lambda.knots()) dev = std::max(dev, std::abs(s - t));
  return dev;
}

/// t -> outer(inner(t)).
inline TimeChange compose(const TimeChange& outer, const TimeChange& inner) {
  std::vector<double> ts;
  for (const auto& [t, s] : inner.knots()) ts.push_back(t);
  for (const auto& [t, s] : outer.knots()) ts.push_back(inner.inverse(t));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<TimeChange::Knot> knots;
  for (double t : ts) {
    double s = outer(inner(t));
    if (!knots.empty() && (t <= knots.back().first || s <= knots.back().second)) continue;
    knots.emplace_back(t, s);
  }
  knots.back() = {1.0, 1.0};
  return TimeChange(std::move(knots));
}

/// The inverse time change; knots are mirrored.
inline TimeChange invert(const TimeChange& lambda) {
  std::vector<TimeChange::Knot> knots;
  knots.reserve(lambda.knots().size());
  for (const auto& [t, s] : lambda.knots()) knots.emplace_back(s, t);
  return TimeChange(std::move(knots));
}

}  // namespace skorohod
