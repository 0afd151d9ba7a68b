#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qcdl {

/// Finite point of R^n, n >= 2.
using Vec = std::vector<double>;

// Euclidean helpers. Binary operations throw DimensionMismatch when sizes
// differ.
double norm(std::span<const double> x);
double distance(std::span<const double> x, std::span<const double> y);
double dot(std::span<const double> x, std::span<const double> y);
Vec scaled(std::span<const double> x, double factor);
Vec difference(std::span<const double> x, std::span<const double> y);
Vec basis_vector(std::size_t n, std::size_t index);
void require_same_dimension(std::span<const double> x,
                            std::span<const double> y);

/// A point of the Moebius space: either a finite point of R^n or infinity.
class ExtendedPoint {
 public:
  static ExtendedPoint infinity() { return ExtendedPoint{}; }
  static ExtendedPoint finite(Vec coords);
  static ExtendedPoint finite(std::initializer_list<double> coords) {
    return finite(Vec(coords));
  }

  bool is_infinity() const { return !coords_.has_value(); }
  bool is_finite() const { return coords_.has_value(); }

  /// Coordinates of a finite point; throws DomainError for infinity.
  std::span<const double> coords() const;
  /// Dimension of a finite point; 0 for infinity.
  std::size_t dimension() const { return coords_ ? coords_->size() : 0; }

  std::string to_string() const;

  friend bool operator==(const ExtendedPoint&, const ExtendedPoint&) = default;

 private:
  ExtendedPoint() = default;
  explicit ExtendedPoint(Vec coords) : coords_(std::move(coords)) {}

  std::optional<Vec> coords_;
};

}  // namespace qcdl
