#pragma once

// Radial stretches x -> |x|^{p-1} x and the inversion in the unit sphere:
// exact quasiconformal maps fixing 0, e1 and infinity.

#include <span>

#include "qcdl/point.hpp"

namespace qcdl {

struct RadialStretch {
  double exponent = 1.0;  // p
  int n = 2;
};

/// DomainError unless p > 0 (finite) and n >= 2.
RadialStretch make_stretch(double exponent, int n);

/// |x|^{p-1} x. DomainError at the origin unless `fix_origin` is set, in
/// which case 0 maps to 0.
Vec apply_stretch(const RadialStretch& map, std::span<const double> x,
                  bool fix_origin = false);

/// Extended version: 0 and infinity are fixed.
ExtendedPoint apply_stretch(const RadialStretch& map, const ExtendedPoint& x);

/// max{p, 1/p}^{n-1}.
double stretch_dilatation(double p, int n);

/// x / |x|^2, exchanging 0 and infinity. Infinity maps to the origin of
/// R^n with n = `dimension`.
ExtendedPoint inversion(const ExtendedPoint& x, std::size_t dimension = 2);

/// The stretch equal to s o f o s.
RadialStretch conjugate_by_inversion(const RadialStretch& map);

/// s(f(s(x))) evaluated by explicit composition.
ExtendedPoint apply_conjugated(const RadialStretch& map, const ExtendedPoint& x);

struct MetricDistortion {
  double k_before = 0.0;
  double k_after = 0.0;
  double j_before = 0.0;
  double j_after = 0.0;
};

/// k- and j-distances in the punctured space before and after the stretch;
/// k_after = sqrt(p^2 log^2(|x|/|y|) + theta^2).
MetricDistortion oracle_metric_distortion(const RadialStretch& map,
                                          std::span<const double> x,
                                          std::span<const double> y);

}  // namespace qcdl
