#pragma once

// The K-topology on the real line, and a function that is cadlag for it but
// whose extension to the split interval is discontinuous. Everything here is
// exact rational arithmetic: membership in K = {1/n : n >= 1} must be crisp.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "skorohod/cadlag.hpp"

namespace skorohod::kexample {

// expression templates off: results of arithmetic are plain values
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// The double's exact value; every finite double is a dyadic rational.
inline Rational exact(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("exact: non-finite value");
  return Rational(v);
}

inline Rational reciprocal(long n) { return Rational(1, n); }

inline Integer ceil(const Rational& q) {
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  Integer fl = num / den;
  if (num < 0 && fl * den != num) fl -= 1;  // floor for negatives
  return fl * den == num ? fl : fl + 1;
}

/// q in K, i.e. q = 1/m for some integer m >= 1.
inline bool in_k(const Rational& q) { return q > 0 && boost::multiprecision::numerator(q) == 1; }
inline bool in_k(double v) { return in_k(exact(v)); }

/// f(0) = f(1) = 0 and f(t) = (t + 1/n) / 2 on [1/(n+1), 1/n).
inline Rational f_example(const Rational& t) {
  if (t < 0 || t > 1) throw std::out_of_range("f_example: t outside [0,1]");
  if (t == 0 || t == 1) return Rational(0);
  // t in [1/(n+1), 1/n)  <=>  1/t in (n, n+1]
  Integer n = ceil(1 / t) - 1;
  return (t + Rational(Integer(1), n)) / 2;
}

/// f(t-): 1/n at t = 1/n, and f(t) elsewhere on (0,1].
inline Rational f_left_limit(const Rational& t) {
  if (t <= 0 || t > 1) throw std::out_of_range("f_left_limit: t outside (0,1]");
  if (in_k(t)) return t;
  return f_example(t);
}

/// (center - radius, center + radius) minus a subset H of K, with center not in H.
/// A missing radius means the whole line.
struct TauKNeighborhood {
  enum class Excluded { None, AllOfK, KMinusCenter };

  Rational center;
  std::optional<Rational> radius;
  Excluded excluded = Excluded::None;

  TauKNeighborhood(Rational c, std::optional<Rational> r, Excluded ex)
      : center(std::move(c)), radius(std::move(r)), excluded(ex) {
    if (radius && *radius <= 0) throw std::invalid_argument("neighborhood radius must be positive");
    if (excluded == Excluded::AllOfK && in_k(center)) {
      throw std::invalid_argument("a neighborhood cannot exclude its own center");
    }
  }

  /// R minus K, a tau_K-open neighborhood of 0.
  static TauKNeighborhood line_minus_k() { return {Rational(0), std::nullopt, Excluded::AllOfK}; }

  std::string describe() const {
    std::string base = radius ? "(" + (center - *radius).str() + ", " + (center + *radius).str() + ")" : "R";
    switch (excluded) {
      case Excluded::None: return base;
      case Excluded::AllOfK: return base + " \\ K";
      case Excluded::KMinusCenter: return base + " \\ (K \\ {" + center.str() + "})";
    }
    return base;
  }
};

inline bool contains(const TauKNeighborhood& nbhd, const Rational& p) {
  if (nbhd.radius && abs(p - nbhd.center) >= *nbhd.radius) return false;
  switch (nbhd.excluded) {
    case TauKNeighborhood::Excluded::None: return true;
    case TauKNeighborhood::Excluded::AllOfK: return !in_k(p);
    case TauKNeighborhood::Excluded::KMinusCenter: return !in_k(p) || p == nbhd.center;
  }
  return true;
}

inline bool contains(const TauKNeighborhood& nbhd, double p) { return contains(nbhd, exact(p)); }

/// A sequence given by a finite prefix and a symbolic tail: either a
/// constant c, or q / n.
struct TailSequence {
  enum class Form { Constant, OverN };

  std::vector<Rational> prefix;
  Form form = Form::Constant;
  Rational coefficient;  // c, or q in q / n
  std::string label;

  static TailSequence constant(Rational c) { return {{}, Form::Constant, std::move(c), "c"}; }
  static TailSequence over_n(Rational q) { return {{}, Form::OverN, std::move(q), "q/n"}; }
  static TailSequence inverse_n() { return {{}, Form::OverN, Rational(1), "1/n"}; }
  static TailSequence negative_inverse_n() { return {{}, Form::OverN, Rational(-1), "-1/n"}; }
  /// n -> f(1/n -), which equals 1/n.
  static TailSequence f_left_limits_at_k() { return {{}, Form::OverN, Rational(1), "f(1/n-)"}; }

  /// Term n >= 1.
  Rational term(long n) const {
    if (n < 1) throw std::out_of_range("sequence terms start at n = 1");
    if (static_cast<std::size_t>(n) <= prefix.size()) return prefix[static_cast<std::size_t>(n) - 1];
    if (form == Form::Constant) return coefficient;
    return coefficient / n;
  }
};

enum class LineTopology { Standard, K };

struct ConvergenceVerdict {
  bool converges = false;
  /// When not convergent: a neighborhood of the limit that the tail keeps leaving.
  std::optional<TauKNeighborhood> witness;
  /// Terms n <= horizon lying outside the witness (exact check).
  std::size_t escapes_within_horizon = 0;
};

namespace detail {

inline bool converges_standard(const TailSequence& s, const Rational& limit) {
  if (s.form == TailSequence::Form::Constant) return s.coefficient == limit;
  return limit == 0;
}

// Whether q / n lies in K for infinitely many n: q = a/b > 0 gives a/(bn),
// which is 1/m whenever a divides bn, e.g. n = a.
inline bool tail_hits_k_infinitely_often(const TailSequence& s) {
  if (s.form == TailSequence::Form::Constant) return in_k(s.coefficient);
  return s.coefficient > 0;
}

}  // namespace detail

/// Decides convergence of s to `limit`, in the standard topology or in tau_K.
///
/// tau_K agrees with the standard topology away from 0, and K is discrete,
/// so only the limit 0 differs: there the tail must also leave K for good.
inline ConvergenceVerdict converges_tauk(const TailSequence& s, const Rational& limit,
                                         LineTopology topology = LineTopology::K, long horizon = 10000) {
  ConvergenceVerdict v;
  const bool standard = detail::converges_standard(s, limit);
  if (topology == LineTopology::Standard || limit != 0) {
    v.converges = standard;
  } else {
    v.converges = standard && !detail::tail_hits_k_infinitely_often(s);
  }
  if (v.converges) return v;

  if (topology == LineTopology::K && limit == 0 && standard) {
    v.witness = TauKNeighborhood::line_minus_k();
  } else {
    Rational far = s.form == TailSequence::Form::Constant ? abs(s.coefficient - limit) : abs(limit);
    v.witness = TauKNeighborhood(limit, far / 2, TauKNeighborhood::Excluded::None);
  }
  for (long n = 1; n <= horizon; ++n) {
    if (!contains(*v.witness, s.term(n))) ++v.escapes_within_horizon;
  }
  return v;
}

/// Neighborhoods (1/n - r_n, 1/n + r_n) minus (K minus {1/n}) for n = 1..N,
/// r_n = (1/n - 1/(n+1)) / 2. Each holds exactly one point of K, so no finite
/// subfamily covers K: K is closed, discrete, infinite, hence not compact.
inline std::vector<TauKNeighborhood> k_isolation_witness(long count) {
  if (count < 2) throw std::invalid_argument("k_isolation_witness: need N >= 2");
  std::vector<TauKNeighborhood> out;
  for (long n = 1; n <= count; ++n) {
    Rational r = (reciprocal(n) - reciprocal(n + 1)) / 2;
    out.emplace_back(reciprocal(n), r, TauKNeighborhood::Excluded::KMinusCenter);
  }
  return out;
}

/// Number of points 1/m, m <= horizon, inside the neighborhood.
inline std::size_t k_points_inside(const TauKNeighborhood& nbhd, long horizon) {
  std::size_t c = 0;
  for (long m = 1; m <= horizon; ++m) c += contains(nbhd, reciprocal(m)) ? 1 : 0;
  return c;
}

struct DiscontinuityReport {
  long truncation = 50;
  bool cadlag_tau0 = false;
  bool piece_structure_matches = false;
  bool f_avoids_k = false;
  std::size_t grid_points_checked = 0;
  long pieces_checked = 0;
  bool right_continuous_at_0_tauk = false;
  bool left_limits_are_k = false;
  bool discontinuity_witnessed = false;
  std::string witness;
  bool split_sequence_converges = false;
  bool isolation_witness_ok = false;
  long isolation_count = 0;
  std::string cited_fact;
  bool pass() const {
    return cadlag_tau0 && piece_structure_matches && f_avoids_k && right_continuous_at_0_tauk && left_limits_are_k &&
           discontinuity_witnessed && split_sequence_converges && isolation_witness_ok;
  }
};

namespace detail {

// No 1/m in f's range on piece n, i.e. in [(1/(n+1) + 1/n)/2, 1/n).
inline bool piece_avoids_k(long n) {
  Rational lo = (reciprocal(n + 1) + reciprocal(n)) / 2;
  Rational hi = reciprocal(n);
  // 1/m in [lo, hi)  <=>  n < m <= 1/lo
  Integer m_max = boost::multiprecision::numerator(1 / lo) / boost::multiprecision::denominator(1 / lo);
  for (Integer m = n + 1; m <= m_max; ++m) {
    Rational q(Integer(1), m);
    if (q >= lo && q < hi) return false;
  }
  return true;
}

}  // namespace detail

/// Runs every claim of the K-topology example, exactly.
inline DiscontinuityReport split_extension_discontinuity_report(long truncation = 50, long pieces = 100,
                                                                long grid = 10000) {
  DiscontinuityReport r;
  r.truncation = truncation;

  // (a) f is cadlag for the standard topology on [1/(N+1), 1]. Within piece n
  // f is affine, so it is continuous there; at t = 1/n the right value comes
  // from piece n-1 and the left limit from piece n. Checked along exact
  // sequences approaching each breakpoint.
  r.cadlag_tau0 = true;
  for (long n = 1; n <= truncation; ++n) {
    Rational t = reciprocal(n);
    // steps small enough to stay inside the adjacent pieces
    Rational h = reciprocal(n) * reciprocal(n + 1);
    for (long k = 1; k <= 6; ++k) {
      h /= 10;
      Rational left = f_example(t - h) - f_left_limit(t);
      if (abs(left) != h / 2) r.cadlag_tau0 = false;  // |f(t - h) - f(t-)| = h/2 -> 0
      if (n > 1) {
        Rational right = f_example(t + h) - f_example(t);
        if (abs(right) != h / 2) r.cadlag_tau0 = false;  // |f(t + h) - f(t)| = h/2 -> 0
      }
    }
  }

  // The jump skeleton agrees with the cadlag representation: the step
  // function "index of the piece containing t" has its left limit at 1/n in
  // piece n and its value at 1/n in piece n-1, like f.
  {
    std::vector<double> times{0.0};
    std::vector<Value> values{Value(static_cast<double>(truncation + 1))};
    for (long n = truncation; n >= 2; --n) {
      times.push_back(1.0 / static_cast<double>(n + 1));
      values.emplace_back(static_cast<double>(n));
    }
    times.push_back(0.5);
    values.emplace_back(1.0);
    StepFunction skeleton(std::move(times), std::move(values));
    r.piece_structure_matches = true;
    for (long n = 2; n <= truncation; ++n) {
      double t = 1.0 / static_cast<double>(n);
      auto piece_left = static_cast<long>(left_limit(skeleton, t)[0]);
      auto piece_right = static_cast<long>(eval(skeleton, t)[0]);
      Rational tq = reciprocal(n);
      bool ok = piece_left == n && piece_right == n - 1 &&
                f_left_limit(tq) == (tq + reciprocal(piece_left)) / 2 &&
                f_example(tq) == (tq + reciprocal(piece_right)) / 2;
      r.piece_structure_matches = r.piece_structure_matches && ok;
    }
  }

  // (b) f(t) is never in K: on the grid k/grid, and per piece analytically.
  r.f_avoids_k = true;
  for (long k = 0; k <= grid; ++k) {
    if (in_k(f_example(Rational(k, grid)))) r.f_avoids_k = false;
    ++r.grid_points_checked;
  }
  for (long n = 1; n <= pieces; ++n) {
    if (!detail::piece_avoids_k(n)) r.f_avoids_k = false;
    ++r.pieces_checked;
  }

  // Right-continuity at 0 in tau_K: for t <= delta, f(t) <= 3t/2 < 2 delta, and
  // f(t) is not in K, so f([0, delta]) lies in (-2 delta, 2 delta) \ K.
  r.right_continuous_at_0_tauk = r.f_avoids_k;
  for (long k : {10L, 100L, 1000L}) {
    Rational delta = reciprocal(k);
    TauKNeighborhood nbhd(Rational(0), 2 * delta, TauKNeighborhood::Excluded::AllOfK);
    for (long g = 0; g <= 1000; ++g) {
      Rational t = delta * Rational(g, 1000);
      if (!contains(nbhd, f_example(t))) r.right_continuous_at_0_tauk = false;
    }
  }

  // (c) f(1/n-) = 1/n: the neighborhood R \ K of f(0) = 0 holds none of them.
  TauKNeighborhood u = TauKNeighborhood::line_minus_k();
  r.witness = u.describe();
  r.left_limits_are_k = true;
  r.discontinuity_witnessed = contains(u, f_example(Rational(0)));
  for (long n = 1; n <= pieces; ++n) {
    Rational v = f_left_limit(reciprocal(n));
    r.left_limits_are_k = r.left_limits_are_k && v == reciprocal(n);
    r.discontinuity_witnessed = r.discontinuity_witnessed && !contains(u, v);
  }

  // ... while 1/n- -> 0+ in the split interval: every basic neighborhood
  // [0+, s+) contains 1/n- as soon as 1/n <= s.
  r.split_sequence_converges = true;
  for (long k : {10L, 100L, 1000L}) {
    const SplitPoint zero = SplitPoint::plus(0.0);
    const SplitPoint edge = SplitPoint::plus(1.0 / static_cast<double>(k));
    for (long n = 2 * k; n <= 4 * k; ++n) {
      SplitPoint p = SplitPoint::minus(1.0 / static_cast<double>(n));
      r.split_sequence_converges = r.split_sequence_converges && zero <= p && p < edge;
    }
  }

  // Non-compactness of K = f({1/n-}), witnessed at truncation N.
  auto cover = k_isolation_witness(truncation);
  r.isolation_count = static_cast<long>(cover.size());
  r.isolation_witness_ok = true;
  for (const auto& nbhd : cover) {
    r.isolation_witness_ok = r.isolation_witness_ok && k_points_inside(nbhd, 2 * truncation) == 1;
  }

  r.cited_fact = "tau_K is not regular: 0 and the closed set K cannot be separated by disjoint open sets (cited, not checked)";
  return r;
}

}  // namespace skorohod::kexample
