#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "skorohod/cadlag.hpp"
#include "skorohod/pseudometric.hpp"
#include "skorohod/time_change.hpp"

namespace skorohod {

/// Absolute slack on every feasibility comparison.
inline constexpr double kFeasibilityTol = 1e-12;
/// Slack allowed between a certificate's recomputed bound and the distance.
inline constexpr double kCertificateTol = 1e-9;

struct DistanceResult {
  double value = 0.0;
  TimeChange certificate;
  double time_sup = 0.0;   // warp_deviation(certificate)
  double value_sup = 0.0;  // sup_t d(x(certificate(t)), y(t))
};

struct Feasibility {
  bool feasible = false;
  std::optional<TimeChange> certificate;
};

/// sup_t d(x(t), y(t)) over the merged jump partition.
inline double uniform_distance(const StepFunction& x, const StepFunction& y, const Pseudometric& d) {
  require_same_space(x.space(), y.space());
  std::vector<double> ts(x.times().begin(), x.times().end());
  ts.insert(ts.end(), y.times().begin(), y.times().end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  double sup = 0.0;
  for (double t : ts) sup = std::max(sup, d(eval(x, t), eval(y, t)));
  return sup;
}

namespace detail {

/// The decision problem behind the Skorohod distance of two step functions.
///
/// A time change is determined, as far as the objective is concerned, by the
/// positions u_i = lambda^{-1}(a_i) of x's jumps a_i; its deviation is then
/// max_i |u_i - a_i|. The pieces of x(lambda(.)) and y overlap along a
/// monotone staircase of cells (i, j) = (x piece, y piece). Feasibility at
/// level eps asks for a staircase whose cells all have cost <= eps together
/// with nondecreasing u_i in [0,1] with |u_i - a_i| <= eps. Steps are: place
/// u_{i+1} (x step), pass y's jump b_{j+1} (y step), or both at once (u_{i+1}
/// = b_{j+1}). Coincident events are allowed; this is the closure of the
/// strict problem, so feasibility at eps means distance <= eps.
class Alignment {
 public:
  Alignment(const StepFunction& x, const StepFunction& y, const Pseudometric& d)
      : a_(x.jumps().begin(), x.jumps().end()), b_(y.jumps().begin(), y.jumps().end()) {
    require_same_space(x.space(), y.space());
    cost_.resize(x.pieces() * y.pieces());
    for (std::size_t i = 0; i < x.pieces(); ++i) {
      for (std::size_t j = 0; j < y.pieces(); ++j) cost_[i * y.pieces() + j] = d(x.values()[i], y.values()[j]);
    }
  }

  std::size_t m() const { return a_.size(); }
  std::size_t p() const { return b_.size(); }
  double cost(std::size_t i, std::size_t j) const { return cost_[i * (p() + 1) + j]; }

  /// Every level at which feasibility can change.
  std::vector<double> thresholds() const {
    std::vector<double> c(cost_.begin(), cost_.end());
    c.push_back(0.0);
    for (double a : a_) {
      c.push_back(a);
      c.push_back(1.0 - a);
      for (double b : b_) c.push_back(std::abs(a - b));
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }

  /// Nondecreasing jump positions u_1..u_m realizing level eps, if any.
  /// Ties with a y jump are resolved in path order for the certificate.
  std::optional<TimeChange> solve(double eps) const {
    const std::size_t m = this->m(), p = this->p();
    const double inf = std::numeric_limits<double>::infinity();
    const double lim = eps + kFeasibilityTol;

    std::vector<Cell> cells((m + 1) * (p + 1));
    auto at = [&](std::size_t i, std::size_t j) -> Cell& { return cells[i * (p + 1) + j]; };
    auto relax = [&](std::size_t i, std::size_t j, double time, Step step, double u) {
      Cell& c = at(i, j);
      if (time < c.time) c = Cell{time, step, u};
    };

    if (cost(0, 0) > lim) return std::nullopt;
    at(0, 0) = Cell{0.0, Step::Start, 0.0};

    for (std::size_t i = 0; i <= m; ++i) {
      for (std::size_t j = 0; j <= p; ++j) {
        const double now = at(i, j).time;
        if (now == inf) continue;
        if (j < p && now <= b_[j] + kFeasibilityTol && cost(i, j + 1) <= lim) {
          relax(i, j + 1, std::max(now, b_[j]), Step::Y, 0.0);
        }
        if (i < m && cost(i + 1, j) <= lim) {
          double u = std::max({now, a_[i] - eps, 0.0});
          if (u <= a_[i] + lim && u <= 1.0) relax(i + 1, j, u, Step::X, u);
        }
        if (i < m && j < p && cost(i + 1, j + 1) <= lim) {
          double u = b_[j];
          if (std::max(now, a_[i] - eps) <= u + kFeasibilityTol && u <= a_[i] + lim) {
            relax(i + 1, j + 1, std::max(now, u), Step::Diagonal, u);
          }
        }
      }
    }
    if (at(m, p).time == inf) return std::nullopt;

    std::vector<Event> path;
    for (std::size_t i = m, j = p; i > 0 || j > 0;) {
      const Cell& c = at(i, j);
      switch (c.step) {
        case Step::X:
          path.push_back({Step::X, c.u, i - 1});
          --i;
          break;
        case Step::Y:
          path.push_back({Step::Y, b_[j - 1], 0});
          --j;
          break;
        case Step::Diagonal:
          path.push_back({Step::Diagonal, c.u, i - 1});
          --i;
          --j;
          break;
        case Step::Start:
          i = j = 0;
          break;
      }
    }
    std::reverse(path.begin(), path.end());
    return certificate(path);
  }

 private:
  enum class Step : std::uint8_t { Start, X, Y, Diagonal };

  struct Cell {
    double time = std::numeric_limits<double>::infinity();
    Step step = Step::Start;
    double u = 0.0;
  };

  struct Event {
    Step step;
    double time;
    std::size_t x_jump;
  };

  // Spreads coincident events so the time change is strictly increasing,
  // keeping every x event on its side of any y jump it ties with. Each event
  // moves by less than kCertificateTol / 4.
  TimeChange certificate(const std::vector<Event>& path) const {
    std::vector<std::vector<Event>> groups;
    for (const Event& e : path) {
      bool fixed = e.step != Step::X;
      bool starts_new = groups.empty() || std::abs(e.time - groups.back().front().time) > kFeasibilityTol;
      if (!starts_new && fixed) {
        for (const Event& g : groups.back()) starts_new |= g.step != Step::X;
      }
      if (starts_new) groups.emplace_back();
      groups.back().push_back(e);
    }

    std::vector<double> anchors{0.0};
    for (const auto& g : groups) anchors.push_back(g.front().time);
    anchors.push_back(1.0);
    double gap = 1.0;
    for (std::size_t k = 1; k < anchors.size(); ++k) {
      double diff = anchors[k] - anchors[k - 1];
      if (diff > kFeasibilityTol) gap = std::min(gap, diff);
    }
    const double step = std::min(kCertificateTol, gap) / (4.0 * static_cast<double>(m() + 2));

    std::vector<double> u(m(), 0.0);
    for (const auto& g : groups) {
      auto fixed = std::find_if(g.begin(), g.end(), [](const Event& e) { return e.step != Step::X; });
      if (fixed != g.end()) {
        const double anchor = fixed->time;
        const auto before = static_cast<double>(fixed - g.begin());
        for (auto it = g.begin(); it != fixed; ++it) u[it->x_jump] = anchor - (before - static_cast<double>(it - g.begin())) * step;
        if (fixed->step == Step::Diagonal) u[fixed->x_jump] = anchor;
        for (auto it = fixed + 1; it != g.end(); ++it) u[it->x_jump] = anchor + static_cast<double>(it - fixed) * step;
        continue;
      }
      const double anchor = g.front().time;
      const auto count = static_cast<double>(g.size());
      for (std::size_t k = 0; k < g.size(); ++k) {
        double offset = static_cast<double>(k);
        if (anchor <= kFeasibilityTol) {
          offset += 1.0;
        } else if (anchor >= 1.0 - kFeasibilityTol) {
          offset -= count;
        }
        u[g[k].x_jump] = anchor + offset * step;
      }
    }

    std::vector<TimeChange::Knot> knots{{0.0, 0.0}};
    for (std::size_t i = 0; i < m(); ++i) knots.emplace_back(u[i], a_[i]);
    knots.emplace_back(1.0, 1.0);
    return TimeChange(std::move(knots));
  }

  std::vector<double> a_, b_;
  std::vector<double> cost_;
};

}  // namespace detail

/// Decides whether the Skorohod distance of x and y under d is at most eps.
inline Feasibility feasible(const StepFunction& x, const StepFunction& y, double eps, const Pseudometric& d) {
  if (!(eps >= 0.0)) throw std::invalid_argument("feasible: eps must be nonnegative");
  detail::Alignment problem(x, y, d);
  auto cert = problem.solve(eps);
  return Feasibility{cert.has_value(), std::move(cert)};
}

/// The candidate levels at which feasibility of (x, y, d) can change.
inline std::vector<double> candidate_levels(const StepFunction& x, const StepFunction& y, const Pseudometric& d) {
  return detail::Alignment(x, y, d).thresholds();
}

/// The Skorohod distance inf_lambda max(sup|lambda(t) - t|, sup d(x(lambda(t)), y(t))),
/// exact up to kFeasibilityTol, with a certificate attaining it within kCertificateTol.
inline DistanceResult skorohod_distance(const StepFunction& x, const StepFunction& y, const Pseudometric& d) {
  detail::Alignment problem(x, y, d);
  const std::vector<double> levels = problem.thresholds();

  // The largest level (max cost) is feasible via the identity.
  std::size_t lo = 0, hi = levels.size() - 1;
  std::optional<TimeChange> best = problem.solve(levels[hi]);
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (auto cert = problem.solve(levels[mid])) {
      hi = mid;
      best = std::move(cert);
    } else {
      lo = mid + 1;
    }
  }
  if (!best) throw std::logic_error("skorohod_distance: largest candidate level infeasible");

  DistanceResult r;
  r.value = levels[hi];
  r.certificate = std::move(*best);
  r.time_sup = warp_deviation(r.certificate);
  r.value_sup = uniform_distance(compose_time_change(x, r.certificate), y, d);
  return r;
}

/// Bisection on feasibility down to `tol`; a cross-check for skorohod_distance.
inline double bisection_distance(const StepFunction& x, const StepFunction& y, const Pseudometric& d, double tol = 1e-12) {
  detail::Alignment problem(x, y, d);
  auto levels = problem.thresholds();
  double lo = 0.0, hi = levels.back();
  if (problem.solve(0.0)) return 0.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (problem.solve(mid) ? hi : lo) = mid;
  }
  return hi;
}

struct CertificateCheck {
  double time_sup = 0.0;
  double value_sup = 0.0;
  double bound() const { return std::max(time_sup, value_sup); }
  bool holds(double claimed) const { return bound() <= claimed + kCertificateTol; }
};

/// Recomputes the bound a certificate witnesses for (x, y).
inline CertificateCheck check_certificate(const StepFunction& x, const StepFunction& y, const Pseudometric& d,
                                          const TimeChange& certificate) {
  require_same_space(x.space(), y.space());
  return CertificateCheck{warp_deviation(certificate), uniform_distance(compose_time_change(x, certificate), y, d)};
}

}  // namespace skorohod
