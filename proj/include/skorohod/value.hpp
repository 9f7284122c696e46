#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace skorohod {

/// Raised whenever two values (or functions) live in incompatible value spaces.
class ValueSpaceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Coords = std::vector<double>;

/// An element of the value space E: either a finite real vector or a label
/// drawn from a finite alphabet.
class Value {
 public:
  Value(Coords coords) : data_(std::move(coords)) {
    const auto& c = std::get<Coords>(data_);
    if (c.empty()) throw std::invalid_argument("Value: empty coordinate vector");
    for (double v : c) {
      if (!std::isfinite(v)) throw std::invalid_argument("Value: non-finite coordinate");
    }
  }
  Value(std::initializer_list<double> coords) : Value(Coords(coords)) {}
  Value(double scalar) : Value(Coords{scalar}) {}
  Value(int scalar) : Value(static_cast<double>(scalar)) {}
  Value(std::string label) : data_(std::move(label)) {}
  Value(const char* label) : Value(std::string(label)) {}

  bool is_label() const { return std::holds_alternative<std::string>(data_); }

  const Coords& coords() const {
    if (is_label()) throw ValueSpaceMismatch("Value: label has no coordinates");
    return std::get<Coords>(data_);
  }
  const std::string& label() const {
    if (!is_label()) throw ValueSpaceMismatch("Value: vector has no label");
    return std::get<std::string>(data_);
  }

  /// Dimension of a vector value; 0 for labels.
  std::size_t dim() const { return is_label() ? 0 : coords().size(); }

  double operator[](std::size_t k) const { return coords().at(k); }

  // Exact, coordinate-wise equality. No tolerance anywhere.
  friend bool operator==(const Value&, const Value&) = default;
  friend bool operator<(const Value& a, const Value& b) { return a.data_ < b.data_; }

 private:
  std::variant<Coords, std::string> data_;
};

/// Shape of a value space: vectors of fixed dimension, or labels.
struct ValueSpace {
  bool labels = false;
  std::size_t dim = 1;

  static ValueSpace of(const Value& v) {
    return v.is_label() ? ValueSpace{true, 0} : ValueSpace{false, v.dim()};
  }
  bool contains(const Value& v) const { return *this == of(v); }

  std::string describe() const {
    return labels ? std::string("labels") : "R^" + std::to_string(dim);
  }

  friend bool operator==(const ValueSpace&, const ValueSpace&) = default;
};

inline void require_same_space(const ValueSpace& a, const ValueSpace& b) {
  if (a != b) {
    throw ValueSpaceMismatch("value-space mismatch: " + a.describe() + " vs " + b.describe());
  }
}

inline void require_same_space(const Value& a, const Value& b) {
  require_same_space(ValueSpace::of(a), ValueSpace::of(b));
}

}  // namespace skorohod
