#pragma once

#include <span>
#include <vector>

#include "qcdl/point.hpp"

namespace qcdl {

/// Chordal (spherical) distance on the Moebius space, values in [0, 1].
double chordal(const ExtendedPoint& x, const ExtendedPoint& y);

/// Distance ratio metric of a proper subdomain, with the boundary distances
/// dx = d(x), dy = d(y) supplied by the caller.
double j_general(std::span<const double> x, std::span<const double> y,
                 double dx, double dy);

/// Distance ratio metric of R^n \ {0}.
double j_punctured(std::span<const double> x, std::span<const double> y);

/// Distance ratio metric of the upper half-space {z : z_n > 0}.
double j_half_space(std::span<const double> x, std::span<const double> y);

/// Angle between x and y seen from the origin, 2 arcsin(|x/|x| - y/|y|| / 2),
/// evaluated in an equivalent half-angle form accurate near 0 and pi.
double angle_at_origin(std::span<const double> x, std::span<const double> y);

/// Quasihyperbolic distance of R^n \ {0} (Martin-Osgood closed form):
/// sqrt(log^2(|x|/|y|) + angle^2).
double k_punctured(std::span<const double> x, std::span<const double> y);

struct JkSandwich {
  double j = 0.0;
  double k = 0.0;
  double lower_slack = 0.0;  // k - j
  double upper_slack = 0.0;  // (1 + lambda) j - k
  bool holds = false;
};

/// Evaluates j <= k <= (1 + lambda) j for a pair with |x - y| <= lambda |x|.
/// PreconditionNotMet when the pair is too far apart for lambda.
JkSandwich jk_sandwich_check(std::span<const double> x,
                             std::span<const double> y, double lambda);

/// Points y = x_0, ..., x_{p+1} = x on the quasihyperbolic geodesic of
/// R^n \ {0} such that consecutive distances equal `step`, except the last
/// which is at most `step`. For antiparallel x, y the geodesic plane is the
/// one spanned by x and the lowest-index basis vector not parallel to x.
std::vector<Vec> geodesic_subdivision(std::span<const double> x,
                                      std::span<const double> y, double step);

}  // namespace qcdl
