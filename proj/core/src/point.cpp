#include "qcdl/point.hpp"

#include <cmath>
#include <sstream>

#include "qcdl/errors.hpp"

namespace qcdl {

void require_same_dimension(std::span<const double> x,
                            std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(x.size()) +
                            " vs " + std::to_string(y.size()));
  }
}

double norm(std::span<const double> x) {
  // hypot-style scaling keeps |x| finite for coordinates near the overflow
  // threshold.
  double scale = 0.0;
  for (double c : x) scale = std::fmax(scale, std::fabs(c));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (double c : x) {
    const double s = c / scale;
    sum += s * s;
  }
  return scale * std::sqrt(sum);
}

double distance(std::span<const double> x, std::span<const double> y) {
  return norm(difference(x, y));
}

double dot(std::span<const double> x, std::span<const double> y) {
  require_same_dimension(x, y);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

Vec scaled(std::span<const double> x, double factor) {
  Vec out(x.begin(), x.end());
  for (double& c : out) c *= factor;
  return out;
}

Vec difference(std::span<const double> x, std::span<const double> y) {
  require_same_dimension(x, y);
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

Vec basis_vector(std::size_t n, std::size_t index) {
  Vec e(n, 0.0);
  e.at(index) = 1.0;
  return e;
}

ExtendedPoint ExtendedPoint::finite(Vec coords) {
  if (coords.size() < 2) {
    throw DomainError("points need dimension >= 2, got " +
                      std::to_string(coords.size()));
  }
  for (double c : coords) {
    if (!std::isfinite(c)) throw DomainError("non-finite coordinate");
  }
  return ExtendedPoint{std::move(coords)};
}

std::span<const double> ExtendedPoint::coords() const {
  if (!coords_) throw DomainError("the point at infinity has no coordinates");
  return *coords_;
}

std::string ExtendedPoint::to_string() const {
  if (!coords_) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t i = 0; i < coords_->size(); ++i) {
    if (i) out << ", ";
    out << (*coords_)[i];
  }
  out << ')';
  return out.str();
}

}  // namespace qcdl
