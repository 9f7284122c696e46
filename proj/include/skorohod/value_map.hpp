#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "skorohod/value.hpp"

namespace skorohod {

/// A continuous map psi: E -> F between value spaces.
///
/// The registered kinds (identity, projection, square, affine, clamp) carry
/// their parameters so they can be serialized; Custom wraps any callable.
class ValueMap {
 public:
  enum class Kind { Identity, Projection, Square, Affine, Clamp, Custom };

  static ValueMap identity() { return ValueMap(Kind::Identity); }

  /// Keeps the listed coordinates (1-based), in order.
  static ValueMap projection(std::vector<std::size_t> coords) {
    if (coords.empty()) throw std::invalid_argument("projection: no coordinates");
    for (auto k : coords) {
      if (k == 0) throw std::invalid_argument("projection: coordinates are 1-based");
    }
    ValueMap m(Kind::Projection);
    m.coords_ = std::move(coords);
    return m;
  }

  static ValueMap square() { return ValueMap(Kind::Square); }

  /// v -> matrix * v + offset.
  static ValueMap affine(std::vector<std::vector<double>> matrix, std::vector<double> offset) {
    if (matrix.empty() || matrix.size() != offset.size()) {
      throw std::invalid_argument("affine: matrix rows and offset length differ");
    }
    for (const auto& row : matrix) {
      if (row.size() != matrix.front().size() || row.empty()) {
        throw std::invalid_argument("affine: ragged matrix");
      }
    }
    ValueMap m(Kind::Affine);
    m.matrix_ = std::move(matrix);
    m.offset_ = std::move(offset);
    return m;
  }

  static ValueMap clamp(double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("clamp: lo > hi");
    ValueMap m(Kind::Clamp);
    m.lo_ = lo;
    m.hi_ = hi;
    return m;
  }

  static ValueMap custom(std::string name, std::function<Value(const Value&)> fn) {
    ValueMap m(Kind::Custom);
    m.name_ = std::move(name);
    m.fn_ = std::move(fn);
    return m;
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<std::size_t>& coords() const { return coords_; }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }
  const std::vector<double>& offset() const { return offset_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  Value operator()(const Value& v) const {
    switch (kind_) {
      case Kind::Identity:
        return v;
      case Kind::Projection: {
        const auto& c = v.coords();
        Coords out;
        for (auto k : coords_) {
          if (k > c.size()) throw ValueSpaceMismatch("projection: coordinate out of range");
          out.push_back(c[k - 1]);
        }
        return Value(std::move(out));
      }
      case Kind::Square: {
        Coords out = v.coords();
        for (double& x : out) x *= x;
        return Value(std::move(out));
      }
      case Kind::Affine: {
        const auto& c = v.coords();
        if (c.size() != matrix_.front().size()) throw ValueSpaceMismatch("affine: dimension mismatch");
        Coords out(offset_);
        for (std::size_t r = 0; r < matrix_.size(); ++r) {
          for (std::size_t k = 0; k < c.size(); ++k) out[r] += matrix_[r][k] * c[k];
        }
        return Value(std::move(out));
      }
      case Kind::Clamp: {
        Coords out = v.coords();
        for (double& x : out) x = std::clamp(x, lo_, hi_);
        return Value(std::move(out));
      }
      case Kind::Custom:
        return fn_(v);
    }
    return v;
  }

 private:
  explicit ValueMap(Kind kind) : kind_(kind), name_(kind_name(kind)) {}

  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::Identity: return "identity";
      case Kind::Projection: return "projection";
      case Kind::Square: return "square";
      case Kind::Affine: return "affine";
      case Kind::Clamp: return "clamp";
      case Kind::Custom: return "custom";
    }
    return "custom";
  }

  Kind kind_;
  std::string name_;
  std::vector<std::size_t> coords_;
  std::vector<std::vector<double>> matrix_;
  std::vector<double> offset_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::function<Value(const Value&)> fn_;
};

}  // namespace skorohod
