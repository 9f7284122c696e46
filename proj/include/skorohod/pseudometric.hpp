#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skorohod/value.hpp"
#include "skorohod/value_map.hpp"

namespace skorohod {

/// A pseudometric on a value space, built from a small set of primitives.
class Pseudometric {
 public:
  enum class Kind { Coordinate, Euclidean, Discrete, Scaled, PulledBack, Max };

  /// |a_k - b_k| for the 1-based coordinate k.
  static Pseudometric coordinate(std::size_t k) {
    if (k == 0) throw std::invalid_argument("coordinate pseudometric: k is 1-based");
    Pseudometric d(Kind::Coordinate);
    d.coord_ = k;
    return d;
  }
  static Pseudometric euclidean() { return Pseudometric(Kind::Euclidean); }
  static Pseudometric discrete() { return Pseudometric(Kind::Discrete); }

  static Pseudometric scaled(double c, Pseudometric inner) {
    if (!std::isfinite(c)) throw std::invalid_argument("scaled pseudometric: non-finite factor");
    Pseudometric d(Kind::Scaled);
    d.scale_ = c;
    d.parts_.push_back(std::move(inner));
    return d;
  }

  /// (a, b) -> inner(psi(a), psi(b)).
  static Pseudometric pulled_back(ValueMap psi, Pseudometric inner) {
    Pseudometric d(Kind::PulledBack);
    d.map_ = std::make_shared<const ValueMap>(std::move(psi));
    d.parts_.push_back(std::move(inner));
    return d;
  }

  static Pseudometric max_of(std::vector<Pseudometric> parts) {
    if (parts.empty()) throw std::invalid_argument("max of an empty list of pseudometrics");
    if (parts.size() == 1) return std::move(parts.front());
    Pseudometric d(Kind::Max);
    d.parts_ = std::move(parts);
    return d;
  }

  Kind kind() const { return kind_; }
  std::size_t coordinate_index() const { return coord_; }
  double scale() const { return scale_; }
  const ValueMap& map() const { return *map_; }
  const std::vector<Pseudometric>& parts() const { return parts_; }

  double operator()(const Value& a, const Value& b) const {
    switch (kind_) {
      case Kind::Coordinate: {
        require_same_space(a, b);
        if (coord_ > a.dim()) throw ValueSpaceMismatch("coordinate pseudometric: k exceeds dimension");
        return std::abs(a[coord_ - 1] - b[coord_ - 1]);
      }
      case Kind::Euclidean: {
        require_same_space(a, b);
        const auto& x = a.coords();
        const auto& y = b.coords();
        double s = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
        return std::sqrt(s);
      }
      case Kind::Discrete:
        require_same_space(a, b);
        return a == b ? 0.0 : 1.0;
      case Kind::Scaled:
        return scale_ * parts_.front()(a, b);
      case Kind::PulledBack:
        require_same_space(a, b);
        return parts_.front()((*map_)(a), (*map_)(b));
      case Kind::Max: {
        double m = parts_.front()(a, b);
        for (std::size_t k = 1; k < parts_.size(); ++k) m = std::max(m, parts_[k](a, b));
        return m;
      }
    }
    return 0.0;
  }

 private:
  explicit Pseudometric(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::size_t coord_ = 0;
  double scale_ = 1.0;
  std::shared_ptr<const ValueMap> map_;
  std::vector<Pseudometric> parts_;
};

inline double evaluate(const Pseudometric& d, const Value& a, const Value& b) { return d(a, b); }

/// An index of a max-closed family: a nonempty subset of generator positions.
///
/// Bit k set means generator k+1 participates; the index names the
/// pseudometric max over those generators.
class FamilyIndex {
 public:
  constexpr FamilyIndex() = default;
  constexpr explicit FamilyIndex(std::uint64_t bits) : bits_(bits) {}

  /// From 1-based generator positions.
  static FamilyIndex of(std::initializer_list<std::size_t> positions) {
    return of(std::vector<std::size_t>(positions));
  }
  static FamilyIndex of(const std::vector<std::size_t>& positions) {
    std::uint64_t bits = 0;
    for (auto p : positions) {
      if (p == 0 || p > 63) throw std::invalid_argument("family index: positions are 1..63");
      bits |= std::uint64_t{1} << (p - 1);
    }
    return FamilyIndex(bits);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t position) const { return (bits_ >> (position - 1)) & 1U; }
  constexpr bool subset_of(FamilyIndex other) const { return (bits_ & ~other.bits_) == 0; }
  int size() const { return std::popcount(bits_); }

  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> out;
    for (std::size_t p = 1; p <= 64; ++p) {
      if ((bits_ >> (p - 1)) & 1U) out.push_back(p);
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    for (auto p : positions()) s += (s.size() > 1 ? "," : "") + std::to_string(p);
    return s + "}";
  }

  friend constexpr FamilyIndex operator|(FamilyIndex a, FamilyIndex b) { return FamilyIndex(a.bits_ | b.bits_); }
  friend constexpr auto operator<=>(FamilyIndex, FamilyIndex) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// A finitely generated family {d_i}, closed under finite maxima.
///
/// Indices are the nonempty subsets of generators, and the index i names
/// max_{k in i} d_k. So for indices i and j, max(d_i, d_j) = d_{i|j} and the
/// family is max-closed by construction. Point separation is not assumed; it
/// is checked with separates_points(). For coordinate generators covering
/// every axis of R^n it holds analytically: a != b differ in some coordinate.
class PseudometricFamily {
 public:
  static constexpr std::size_t kMaxGenerators = 16;

  explicit PseudometricFamily(std::vector<Pseudometric> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw std::invalid_argument("pseudometric family: no generators");
    if (generators_.size() > kMaxGenerators) throw std::invalid_argument("pseudometric family: too many generators");
  }

  const std::vector<Pseudometric>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }

  FamilyIndex full() const { return FamilyIndex((std::uint64_t{1} << generators_.size()) - 1); }

  /// Every index, ordered by size then bit pattern.
  std::vector<FamilyIndex> indices() const {
    std::vector<FamilyIndex> out;
    for (std::uint64_t b = 1; b <= full().bits(); ++b) out.emplace_back(b);
    std::stable_sort(out.begin(), out.end(), [](FamilyIndex a, FamilyIndex b) { return a.size() < b.size(); });
    return out;
  }

  void require_index(FamilyIndex i) const {
    if (i.empty() || !i.subset_of(full())) throw std::invalid_argument("family index " + i.to_string() + " out of range");
  }

  double evaluate(FamilyIndex i, const Value& a, const Value& b) const {
    require_index(i);
    double m = 0.0;
    bool first = true;
    for (auto p : i.positions()) {
      double v = generators_[p - 1](a, b);
      m = first ? v : std::max(m, v);
      first = false;
    }
    return m;
  }

  /// The index's pseudometric as a standalone object.
  Pseudometric metric(FamilyIndex i) const {
    require_index(i);
    std::vector<Pseudometric> parts;
    for (auto p : i.positions()) parts.push_back(generators_[p - 1]);
    return Pseudometric::max_of(std::move(parts));
  }

 private:
  std::vector<Pseudometric> generators_;
};

inline PseudometricFamily max_close(std::vector<Pseudometric> generators) {
  return PseudometricFamily(std::move(generators));
}

/// Coordinate generators |a_k - b_k| for k = 1..dim, max-closed.
inline PseudometricFamily coordinate_family(std::size_t dim) {
  std::vector<Pseudometric> g;
  for (std::size_t k = 1; k <= dim; ++k) g.push_back(Pseudometric::coordinate(k));
  return max_close(std::move(g));
}

struct AxiomViolation {
  enum class Kind { Negativity, Identity, Symmetry, Triangle };
  Kind kind;
  std::size_t sample;
  double amount;
};

struct AxiomReport {
  std::size_t samples = 0;
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

inline const char* to_string(AxiomViolation::Kind k) {
  switch (k) {
    case AxiomViolation::Kind::Negativity: return "negativity";
    case AxiomViolation::Kind::Identity: return "identity";
    case AxiomViolation::Kind::Symmetry: return "symmetry";
    case AxiomViolation::Kind::Triangle: return "triangle";
  }
  return "?";
}

struct ValueTriple {
  Value a, b, c;
};

inline constexpr double kAxiomTolerance = 1e-12;

/// Checks d(a,a)=0, d >= 0, symmetry, and the triangle inequality on samples.
inline AxiomReport check_axioms(const Pseudometric& d, const std::vector<ValueTriple>& samples) {
  AxiomReport report;
  report.samples = samples.size();
  auto flag = [&](AxiomViolation::Kind k, std::size_t s, double amount) { report.violations.push_back({k, s, amount}); };
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& [a, b, c] = samples[s];
    double ab = d(a, b), ba = d(b, a), bc = d(b, c), ac = d(a, c);
    for (const Value* v : {&a, &b, &c}) {
      double self = d(*v, *v);
      if (self != 0.0) flag(AxiomViolation::Kind::Identity, s, self);
    }
    double lowest = std::min({ab, bc, ac});
    if (lowest < 0.0) flag(AxiomViolation::Kind::Negativity, s, lowest);
    if (std::abs(ab - ba) > kAxiomTolerance) flag(AxiomViolation::Kind::Symmetry, s, std::abs(ab - ba));
    if (ac > ab + bc + kAxiomTolerance) flag(AxiomViolation::Kind::Triangle, s, ac - ab - bc);
  }
  return report;
}

/// A singleton generator index witnessing d_i(a,b) > 0, or nullopt when the
/// family fails to separate a from b.
inline std::optional<FamilyIndex> separates_points(const PseudometricFamily& family, const Value& a, const Value& b) {
  if (a == b) throw std::invalid_argument("separates_points: a and b are equal");
  for (std::size_t p = 1; p <= family.size(); ++p) {
    if (family.generators()[p - 1](a, b) > 0.0) return FamilyIndex::of({p});
  }
  return std::nullopt;
}

}  // namespace skorohod
