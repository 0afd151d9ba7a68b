#include "qcdl/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "format_util.hpp"
#include "qcdl/errors.hpp"

namespace qcdl {
namespace {

using detail::num;

constexpr double kRelTol = 1e-12;

void require_nonzero(std::span<const double> x, const char* what) {
  const double m = norm(x);
  if (!(m > 0.0)) {
    throw DomainError(std::string(what) +
                      " is undefined at the origin (domain R^n \\ {0})");
  }
  if (!std::isfinite(m)) throw DomainError(std::string(what) + ": non-finite point");
}

Vec unit(std::span<const double> x) { return scaled(x, 1.0 / norm(x)); }

}  // namespace

double chordal(const ExtendedPoint& x, const ExtendedPoint& y) {
  if (x.is_infinity() && y.is_infinity()) return 0.0;
  if (y.is_infinity()) return 1.0 / std::hypot(1.0, norm(x.coords()));
  if (x.is_infinity()) return 1.0 / std::hypot(1.0, norm(y.coords()));
  const double d = distance(x.coords(), y.coords());
  return d / (std::hypot(1.0, norm(x.coords())) *
              std::hypot(1.0, norm(y.coords())));
}

double j_general(std::span<const double> x, std::span<const double> y,
                 double dx, double dy) {
  if (!(dx > 0.0 && dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy)) {
    throw DomainError("j_general needs positive boundary distances, got " +
                      num(dx) + ", " + num(dy));
  }
  return std::log1p(distance(x, y) / std::min(dx, dy));
}

double j_punctured(std::span<const double> x, std::span<const double> y) {
  require_nonzero(x, "j_punctured");
  require_nonzero(y, "j_punctured");
  return j_general(x, y, norm(x), norm(y));
}

double j_half_space(std::span<const double> x, std::span<const double> y) {
  require_same_dimension(x, y);
  if (x.empty()) throw DomainError("j_half_space needs points of R^n");
  const double dx = x.back();
  const double dy = y.back();
  if (!(dx > 0.0 && dy > 0.0)) {
    throw DomainError("j_half_space needs points with positive last coordinate");
  }
  return j_general(x, y, dx, dy);
}

double angle_at_origin(std::span<const double> x, std::span<const double> y) {
  require_same_dimension(x, y);
  require_nonzero(x, "angle_at_origin");
  require_nonzero(y, "angle_at_origin");
  // 2 arcsin(c / 2) = 2 atan2(c, |ux + uy|), well conditioned at 0 and pi.
  const Vec ux = unit(x);
  const Vec uy = unit(y);
  Vec sum = ux;
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += uy[i];
  return 2.0 * std::atan2(distance(ux, uy), norm(sum));
}

double k_punctured(std::span<const double> x, std::span<const double> y) {
  const double theta = angle_at_origin(x, y);
  const double log_ratio = std::log(norm(x)) - std::log(norm(y));
  return std::hypot(log_ratio, theta);
}

JkSandwich jk_sandwich_check(std::span<const double> x,
                             std::span<const double> y, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw DomainError("jk_sandwich_check needs lambda in (0, 1), got " +
                      num(lambda));
  }
  const double gap = distance(x, y);
  const double reach = lambda * norm(x);
  if (gap > reach * (1.0 + kRelTol)) {
    throw PreconditionNotMet("|x - y| = " + num(gap) + " exceeds lambda |x| = " +
                             num(reach));
  }
  JkSandwich out;
  out.j = j_punctured(x, y);
  out.k = k_punctured(x, y);
  out.lower_slack = out.k - out.j;
  out.upper_slack = (1.0 + lambda) * out.j - out.k;
  const double tol = kRelTol * std::max(out.k, 1e-300);
  out.holds = out.lower_slack >= -tol && out.upper_slack >= -tol;
  return out;
}

std::vector<Vec> geodesic_subdivision(std::span<const double> x,
                                      std::span<const double> y, double step) {
  require_same_dimension(x, y);
  require_nonzero(x, "geodesic_subdivision");
  require_nonzero(y, "geodesic_subdivision");
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw DomainError("geodesic_subdivision needs a finite step > 0, got " +
                      num(step));
  }
  const double total = k_punctured(x, y);
  if (total == 0.0) throw DomainError("geodesic_subdivision needs x != y");

  // Orthonormal frame (u, w) of the plane through 0, y and x.
  const Vec u = unit(y);
  const Vec ux = unit(x);
  const double theta = angle_at_origin(x, y);
  Vec w = difference(ux, scaled(u, dot(ux, u)));
  if (norm(w) <= 1e-12) {
    // Parallel or antiparallel: the plane is not determined by x and y.
    for (std::size_t i = 0; i < u.size(); ++i) {
      const Vec e = basis_vector(u.size(), i);
      Vec candidate = difference(e, scaled(u, dot(e, u)));
      if (norm(candidate) > 1e-6) {
        w = std::move(candidate);
        break;
      }
    }
  }
  w = unit(w);

  const double log_y = std::log(norm(y));
  const double log_x = std::log(norm(x));
  auto point_at = [&](double s) {
    const double radius = std::exp((1.0 - s) * log_y + s * log_x);
    const double phi = s * theta;
    Vec p(u.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = radius * (std::cos(phi) * u[i] + std::sin(phi) * w[i]);
    }
    return p;
  };

  // p full steps followed by one final step of length <= step.
  const double ratio = total / step;
  const auto full_steps =
      static_cast<std::size_t>(std::max(0.0, std::ceil(ratio - 1e-9) - 1.0));
  std::vector<Vec> points;
  points.reserve(full_steps + 2);
  points.emplace_back(y.begin(), y.end());
  for (std::size_t j = 1; j <= full_steps; ++j) {
    points.push_back(point_at(static_cast<double>(j) * step / total));
  }
  points.emplace_back(x.begin(), x.end());
  return points;
}

}  // namespace qcdl
