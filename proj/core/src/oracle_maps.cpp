#include "qcdl/oracle_maps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "format_util.hpp"
#include "qcdl/errors.hpp"
#include "qcdl/metrics.hpp"

namespace qcdl {

using detail::num;

RadialStretch make_stretch(double exponent, int n) {
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw DomainError("stretch exponent must be a finite p > 0, got " +
                      num(exponent));
  }
  if (n < 2) throw DomainError("stretch dimension must be >= 2");
  return RadialStretch{exponent, n};
}

Vec apply_stretch(const RadialStretch& map, std::span<const double> x,
                  bool fix_origin) {
  if (x.size() != static_cast<std::size_t>(map.n)) {
    throw DimensionMismatch("stretch acts on R^" + std::to_string(map.n) +
                            ", got a point of dimension " +
                            std::to_string(x.size()));
  }
  const double r = norm(x);
  if (r == 0.0) {
    if (fix_origin) return Vec(x.size(), 0.0);
    throw DomainError("apply_stretch is undefined at the origin");
  }
  // |x|^{p-1} through logs so huge or tiny moduli do not overflow early.
  return scaled(x, std::exp((map.exponent - 1.0) * std::log(r)));
}

ExtendedPoint apply_stretch(const RadialStretch& map, const ExtendedPoint& x) {
  if (x.is_infinity()) return x;
  return ExtendedPoint::finite(apply_stretch(map, x.coords(), true));
}

double stretch_dilatation(double p, int n) {
  const RadialStretch map = make_stretch(p, n);
  return std::pow(std::max(map.exponent, 1.0 / map.exponent), n - 1);
}

ExtendedPoint inversion(const ExtendedPoint& x, std::size_t dimension) {
  if (x.is_infinity()) return ExtendedPoint::finite(Vec(dimension, 0.0));
  const double r = norm(x.coords());
  if (r == 0.0) return ExtendedPoint::infinity();
  // x / |x|^2 computed as (x / r) / r to stay finite for tiny r.
  Vec out = scaled(x.coords(), 1.0 / r);
  for (double& c : out) c /= r;
  return ExtendedPoint::finite(std::move(out));
}

RadialStretch conjugate_by_inversion(const RadialStretch& map) {
  // |s(f(s(x)))| = 1 / (1/|x|)^p = |x|^p with the direction kept.
  return make_stretch(map.exponent, map.n);
}

ExtendedPoint apply_conjugated(const RadialStretch& map,
                               const ExtendedPoint& x) {
  if (x.is_infinity()) return x;
  if (norm(x.coords()) == 0.0) return x;
  return inversion(apply_stretch(map, inversion(x, map.n)), map.n);
}

MetricDistortion oracle_metric_distortion(const RadialStretch& map,
                                          std::span<const double> x,
                                          std::span<const double> y) {
  const Vec fx = apply_stretch(map, x);
  const Vec fy = apply_stretch(map, y);
  return MetricDistortion{
      .k_before = k_punctured(x, y),
      .k_after = std::hypot(map.exponent * (std::log(norm(x)) - std::log(norm(y))),
                            angle_at_origin(x, y)),
      .j_before = j_punctured(x, y),
      .j_after = j_punctured(fx, fy),
  };
}

}  // namespace qcdl
