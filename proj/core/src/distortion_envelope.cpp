#include "qcdl/distortion_envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "format_util.hpp"
#include "qcdl/errors.hpp"
#include "qcdl/special_functions.hpp"

namespace qcdl {
namespace {

using detail::num;
using std::numbers::pi;

struct Moduli {
  double to_origin;  // |x|
  double to_unit;    // |x - e1|
};

Moduli moduli(std::span<const double> x) {
  if (x.size() < 2) throw DomainError("points need dimension >= 2");
  Vec shifted(x.begin(), x.end());
  shifted[0] -= 1.0;
  return {norm(x), norm(shifted)};
}

void require_k_in_unit_interval(double K, const char* what) {
  if (!(K > 1.0 && K <= 2.0)) {
    throw DomainError(std::string(what) + " needs K in (1, 2], got K = " +
                      num(K));
  }
}

// Validates (x, eps) for the two-shell construction and returns the moduli.
Moduli admissible_moduli(std::span<const double> x, double epsilon) {
  const double sup = epsilon_sup(x);
  if (!(epsilon > 0.0 && epsilon < sup)) {
    throw EpsilonOutOfRange("epsilon must lie in (0, " + num(sup) +
                            ") for x = " + ExtendedPoint::finite(Vec(x.begin(), x.end())).to_string() +
                            ", got " + num(epsilon));
  }
  const Moduli m = moduli(x);
  if (!(m.to_origin > epsilon && m.to_unit > epsilon)) {
    throw EpsilonOutOfRange("epsilon must be smaller than |x| and |x - e1|");
  }
  return m;
}

// A boundary circle of the cross-section: center (c, 0), radius rho.
struct Circle {
  double center;
  double radius;
  int id;
};

struct Annulus {
  double center;
  double inner;
  double outer;

  bool contains(double px, double py) const {
    const double d = std::hypot(px - center, py);
    return d >= inner && d <= outer;
  }
};

struct Piece {
  int id;
  std::vector<BoundaryPoint> points;
};

// Angles in [0, pi] where `circle` meets the circle |z - other| = rho.
void crossing_angles(const Circle& circle, double other_center, double rho,
                     std::vector<double>& angles) {
  // |c + R e^{it} - o|^2 = rho^2 with |c - o| = 1.
  const double offset = circle.center - other_center;  // +-1
  const double cos_t =
      (rho * rho - 1.0 - circle.radius * circle.radius) /
      (2.0 * circle.radius * offset);
  if (cos_t >= -1.0 && cos_t <= 1.0) angles.push_back(std::acos(cos_t));
}

std::vector<Piece> boundary_pieces(std::span<const double> x, double epsilon,
                                   std::size_t resolution) {
  if (resolution < 2) throw DomainError("resolution must be at least 2");
  const Moduli m = admissible_moduli(x, epsilon);
  const Annulus around_origin{0.0, m.to_origin - epsilon, m.to_origin + epsilon};
  const Annulus around_unit{1.0, m.to_unit - epsilon, m.to_unit + epsilon};
  const std::array<Circle, 4> circles{{
      {0.0, around_origin.inner, 0},
      {0.0, around_origin.outer, 1},
      {1.0, around_unit.inner, 2},
      {1.0, around_unit.outer, 3},
  }};

  std::vector<Piece> pieces;
  for (const Circle& c : circles) {
    const Annulus& other = c.center == 0.0 ? around_unit : around_origin;
    std::vector<double> angles{0.0, pi};
    crossing_angles(c, other.center, other.inner, angles);
    crossing_angles(c, other.center, other.outer, angles);
    std::sort(angles.begin(), angles.end());
    for (std::size_t k = 0; k + 1 < angles.size(); ++k) {
      const double t0 = angles[k];
      const double t1 = angles[k + 1];
      if (!(t1 > t0)) continue;
      const double mid = 0.5 * (t0 + t1);
      if (!other.contains(c.center + c.radius * std::cos(mid),
                          c.radius * std::sin(mid))) {
        continue;
      }
      Piece piece{c.id, {}};
      piece.points.reserve(resolution);
      for (std::size_t i = 0; i < resolution; ++i) {
        const double t = i + 1 == resolution
                             ? t1
                             : t0 + (t1 - t0) * static_cast<double>(i) /
                                        static_cast<double>(resolution - 1);
        piece.points.push_back({c.center + c.radius * std::cos(t),
                                std::max(0.0, c.radius * std::sin(t)), c.id});
      }
      pieces.push_back(std::move(piece));
    }
  }

  // Segments of the e1-axis inside both annuli.
  const std::array<std::array<double, 2>, 2> axis_origin{{
      {-around_origin.outer, -around_origin.inner},
      {around_origin.inner, around_origin.outer},
  }};
  const std::array<std::array<double, 2>, 2> axis_unit{{
      {1.0 - around_unit.outer, 1.0 - around_unit.inner},
      {1.0 + around_unit.inner, 1.0 + around_unit.outer},
  }};
  for (const auto& p : axis_origin) {
    for (const auto& q : axis_unit) {
      const double lo = std::max(p[0], q[0]);
      const double hi = std::min(p[1], q[1]);
      if (!(hi > lo)) continue;
      Piece piece{4, {}};
      for (std::size_t i = 0; i < resolution; ++i) {
        const double s = i + 1 == resolution
                             ? hi
                             : lo + (hi - lo) * static_cast<double>(i) /
                                        static_cast<double>(resolution - 1);
        piece.points.push_back({s, 0.0, 4});
      }
      pieces.push_back(std::move(piece));
    }
  }
  if (pieces.empty()) {
    throw EmptyIntersection("the cross-section of A is empty at epsilon = " +
                            num(epsilon));
  }
  return pieces;
}

double gap(const BoundaryPoint& a, const BoundaryPoint& b) {
  return std::hypot(a.x1 - b.x1, a.x2 - b.x2);
}

// Chains pieces into closed loops by matching endpoints, each loop oriented
// counterclockwise. Unmatched pieces are appended as they are.
std::vector<BoundaryPoint> chain_counterclockwise(std::vector<Piece> pieces,
                                                  double join_tol) {
  std::vector<BoundaryPoint> out;
  std::vector<bool> used(pieces.size(), false);
  for (std::size_t start = 0; start < pieces.size(); ++start) {
    if (used[start]) continue;
    used[start] = true;
    std::vector<BoundaryPoint> loop = pieces[start].points;
    for (bool extended = true; extended;) {
      extended = false;
      for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (used[k]) continue;
        auto& pts = pieces[k].points;
        if (gap(loop.back(), pts.back()) <= join_tol) {
          std::reverse(pts.begin(), pts.end());
        }
        if (gap(loop.back(), pts.front()) <= join_tol) {
          loop.insert(loop.end(), pts.begin() + 1, pts.end());
          used[k] = true;
          extended = true;
          break;
        }
      }
    }
    double twice_area = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const auto& p = loop[i];
      const auto& q = loop[(i + 1) % loop.size()];
      twice_area += p.x1 * q.x2 - q.x1 * p.x2;
    }
    if (twice_area < 0.0) std::reverse(loop.begin(), loop.end());
    out.insert(out.end(), loop.begin(), loop.end());
  }
  return out;
}

struct P2 {
  double x;
  double y;
};

double cross(const P2& o, const P2& a, const P2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; counterclockwise, no repeated endpoint.
std::vector<P2> convex_hull(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  if (pts.size() < 3) return pts;
  std::vector<P2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const P2& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Rotating calipers over a counterclockwise convex polygon.
double polygon_diameter(const std::vector<P2>& hull) {
  const std::size_t h = hull.size();
  auto dist = [&](std::size_t i, std::size_t j) {
    return std::hypot(hull[i].x - hull[j].x, hull[i].y - hull[j].y);
  };
  if (h == 1) return 0.0;
  if (h == 2) return dist(0, 1);
  double best = 0.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < h; ++i) {
    const std::size_t next = (i + 1) % h;
    while (std::fabs(cross(hull[i], hull[next], hull[(j + 1) % h])) >
           std::fabs(cross(hull[i], hull[next], hull[j]))) {
      j = (j + 1) % h;
    }
    best = std::max({best, dist(i, j), dist(next, j)});
  }
  return best;
}

}  // namespace

bool RingShell::contains(std::span<const double> z, double rel_slack) const {
  const double d = distance(z, center);
  return d >= inner * (1.0 - rel_slack) && d <= outer * (1.0 + rel_slack);
}

double epsilon_sup(std::span<const double> x) {
  const Moduli m = moduli(x);
  if (m.to_origin == 0.0 || m.to_unit == 0.0) {
    throw DegenerateConfiguration("x must differ from 0 and e1");
  }
  const double sup = 0.5 * (1.0 - std::fabs(m.to_origin - m.to_unit));
  if (!(sup > 0.0)) {
    throw DegenerateConfiguration(
        "x = " + ExtendedPoint::finite(Vec(x.begin(), x.end())).to_string() +
        " lies on the e1-axis outside (0, e1); no admissible epsilon");
  }
  return sup;
}

double k_threshold(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("k_threshold needs a finite epsilon > 0, got " +
                      num(epsilon));
  }
  const double root = std::log1p(0.5 * epsilon) / 62.0;
  return std::min(root * root + 1.0, 2.0);
}

double epsilon_from_k(double K) {
  require_k_in_unit_interval(K, "epsilon_from_k");
  return 2.0 * std::expm1(62.0 * std::sqrt(K - 1.0));
}

EnvelopeSet set_a(std::span<const double> x, double epsilon) {
  const Moduli m = admissible_moduli(x, epsilon);
  const std::size_t n = x.size();
  return EnvelopeSet{
      .origin_shell = {Vec(n, 0.0), m.to_origin - epsilon,
                       m.to_origin + epsilon},
      .unit_shell = {basis_vector(n, 0), m.to_unit - epsilon,
                     m.to_unit + epsilon},
      .plane_dims = 2,
  };
}

double heron_im_y(double r, double epsilon) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("heron_im_y needs r > 0, got " + num(r));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("heron_im_y needs epsilon in (0, 1), got " +
                      num(epsilon));
  }
  return 2.0 * std::sqrt((r + 1.0) * r * (1.0 - epsilon) * epsilon);
}

double diam_a_upper(std::span<const double> x, double epsilon) {
  const Moduli m = admissible_moduli(x, epsilon);
  return 4.0 * std::sqrt(epsilon) * (std::min(m.to_origin, m.to_unit) + 1.0);
}

std::vector<BoundaryPoint> cross_section_boundary(std::span<const double> x,
                                                  double epsilon,
                                                  std::size_t resolution) {
  auto pieces = boundary_pieces(x, epsilon, resolution);
  const Moduli m = moduli(x);
  return chain_counterclockwise(std::move(pieces),
                                1e-9 * (1.0 + m.to_origin));
}

double diam_a_bruteforce(std::span<const double> x, double epsilon,
                         std::size_t resolution) {
  if (resolution < 1000) {
    throw DomainError("diam_a_bruteforce needs resolution >= 1000");
  }
  const auto pieces = boundary_pieces(x, epsilon, resolution);
  std::vector<P2> pts;
  for (const auto& piece : pieces) {
    for (const auto& p : piece.points) pts.push_back({p.x1, p.x2});
  }
  return polygon_diameter(convex_hull(std::move(pts)));
}

double theta(std::span<const double> x) {
  const Moduli m = moduli(x);
  if (m.to_origin == 0.0 || m.to_unit == 0.0) {
    throw DomainError("theta is undefined at 0 and e1");
  }
  const double slack = std::max(0.0, 1.0 - std::fabs(m.to_origin - m.to_unit));
  const double root = std::log1p(0.25 * slack) / 62.0;
  return root * root;
}

double chordal_a_bound(double K) {
  require_k_in_unit_interval(K, "chordal_a_bound");
  return 60.0 * std::sqrt(std::expm1(62.0 * std::sqrt(K - 1.0)));
}

Vec meridian_projection(std::span<const double> x) {
  if (x.size() != 3) {
    throw DimensionMismatch("meridian_projection needs a point of R^3, got "
                            "dimension " + std::to_string(x.size()));
  }
  return {x[0], std::hypot(x[1], x[2]), 0.0};
}

Main1Bounds main1_bounds(std::span<const double> x, double r, double epsilon,
                         double K) {
  if (x.size() != 3) {
    throw DimensionMismatch("main1_bounds needs a point of R^3");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw PreconditionNotMet("radius r must be positive, got " + num(r));
  }
  if (!(norm(x) < r)) {
    throw PreconditionNotMet("x is not in the ball B^3(r) with r = " + num(r));
  }
  double sup = 0.0;
  try {
    sup = epsilon_sup(x);
  } catch (const DegenerateConfiguration& e) {
    throw PreconditionNotMet(std::string("x is not admissible: ") + e.what());
  }
  if (!(epsilon > 0.0 && epsilon < sup)) {
    throw PreconditionNotMet("epsilon must lie in (0, " + num(sup) +
                             "), got " + num(epsilon));
  }
  if (!(K > 1.0 && K <= k_threshold(epsilon))) {
    throw PreconditionNotMet("K must lie in (1, k_threshold(epsilon)] = (1, " +
                             num(k_threshold(epsilon)) + "], got " + num(K));
  }
  const double root = std::sqrt(K - 1.0);
  return Main1Bounds{
      .euclidean = 4.0 * (r + 1.0) * std::sqrt(epsilon),
      .chordal = 12.0 * std::numbers::sqrt2 * std::sqrt(std::expm1(62.0 * root)),
      .coupled_epsilon = std::expm1(60.0 * root),
  };
}

double c_main2(double K, int n) {
  require_k_in_unit_interval(K, "c_main2");
  const DistortionParams p = make_params(K, n);
  return p.c3 / p.alpha;
}

double j_distortion_bound(double K, int n, double jxy) {
  if (!(jxy >= 0.0) || !std::isfinite(jxy)) {
    throw DomainError("j_distortion_bound needs a finite j >= 0, got " +
                      num(jxy));
  }
  const DistortionParams p = make_params(K, n);
  return c_main2(K, n) * std::max(std::pow(jxy, p.alpha), jxy);
}

double mu_step(double lambda, double c, double beta) {
  if (!(lambda > 0.0) || !(c >= 1.0) || !(beta >= 1.0)) {
    throw DomainError("mu_step needs lambda > 0, c >= 1 and beta >= 1");
  }
  return std::pow(std::log1p(lambda), beta) / c;
}

double omega_main3(double K, int n, std::optional<double> lambda_choice) {
  require_k_in_unit_interval(K, "omega_main3");
  const DistortionParams p = make_params(K, n);
  // beta - 1 without cancellation; exact in the plane where beta = K.
  const double lambda =
      lambda_choice.value_or(n == 2 ? K - 1.0
                                    : std::expm1(std::log1p(K - 1.0) / (n - 1)));
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw LambdaOutOfRange(
        "omega_main3 needs lambda in (0, 1), got " + num(lambda) +
        (lambda_choice ? "" : " (default lambda = beta - 1; pass an override)"));
  }
  const double c = p.c3 / p.alpha;
  const double step = mu_step(lambda, c, p.beta);
  return c * (1.0 + lambda) * std::pow(step, p.alpha - 1.0) *
         std::exp2(1.0 - p.alpha);
}

double k_distortion_bound(double K, int n, double kxy) {
  if (!(kxy >= 0.0) || !std::isfinite(kxy)) {
    throw DomainError("k_distortion_bound needs a finite k >= 0, got " +
                      num(kxy));
  }
  const DistortionParams p = make_params(K, n);
  return omega_main3(K, n) * std::max(std::pow(kxy, p.alpha), kxy);
}

double angle_bound(double K, int n, double phi) {
  if (!(phi >= 0.0 && phi <= pi)) {
    throw DomainError("angle_bound needs phi in [0, pi], got " + num(phi));
  }
  const DistortionParams p = make_params(K, n);
  return omega_main3(K, n) * std::max(std::pow(phi, p.alpha), phi);
}

double c_lower_bound(double K, int n) {
  require_k_in_unit_interval(K, "c_lower_bound");
  const DistortionParams p = make_params(K, n);
  const double k_plane = p.beta;  // K^{1/(n-1)}
  const double lambda = linear_distortion(k_plane);
  const double floor_value = std::exp(pi * (k_plane - 1.0));
  if (lambda < floor_value * (1.0 - 1e-12)) {
    throw Error("linear distortion lambda(" + num(k_plane) + ") = " +
                num(lambda) + " is below exp(pi (K - 1)) = " +
                num(floor_value));
  }
  return std::log(2.0 + lambda) / std::log(3.0);
}

EnvelopeBound envelope_bound(std::span<const double> x, double epsilon) {
  const EnvelopeSet set = set_a(x, epsilon);
  // With K = k_threshold(eps): exp(62 sqrt(K - 1)) - 1 = eps / 2 below the
  // cap at K = 2.
  const double excess = std::min(0.5 * epsilon, std::expm1(62.0));
  return EnvelopeBound{
      .epsilon = epsilon,
      .diam_bound = diam_a_upper(x, epsilon),
      .chordal_bound = std::min(1.0, 60.0 * std::sqrt(excess)),
      .shells = {set.origin_shell, set.unit_shell},
  };
}

}  // namespace qcdl
