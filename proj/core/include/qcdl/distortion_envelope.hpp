#pragma once

// Outer bounds for f(x) over normalized K-quasiconformal maps f (fixing 0,
// e1 and infinity), and the constants of the j-, k- and angle-distortion
// theorems.
//
// Geometry is done in the meridian half-plane: a point x is represented by
// (x1, sqrt(x2^2 + ... + xn^2)), which is legitimate because every object
// here is invariant under rotations about the e1-axis. The cross-section of
// the envelope set is the part of the two-shell intersection lying in the
// closed upper half-plane, i.e. the component that contains p(x).

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qcdl/point.hpp"

namespace qcdl {

/// Open spherical ring B(center, outer) \ closed B(center, inner).
struct RingShell {
  Vec center;
  double inner = 0.0;
  double outer = 1.0;

  /// Closed-shell membership with a relative slack for boundary points.
  bool contains(std::span<const double> z, double rel_slack = 0.0) const;
};

/// Two shells centered at 0 and e1, intersected with the plane spanned by
/// e1 and e2 (coordinates beyond the second are zero).
struct EnvelopeSet {
  RingShell origin_shell;
  RingShell unit_shell;
  std::size_t plane_dims = 2;
};

struct EnvelopeBound {
  double epsilon = 0.0;
  double diam_bound = 0.0;
  double chordal_bound = 0.0;
  std::array<RingShell, 2> shells;
};

/// (1 - | |x| - |x - e1| |) / 2, the supremum of admissible epsilon.
/// DegenerateConfiguration when it is not positive (x on the e1-axis outside
/// the open segment (0, e1)) or x in {0, e1}.
double epsilon_sup(std::span<const double> x);

/// min{ (log(eps/2 + 1) / 62)^2 + 1, 2 }.
double k_threshold(double epsilon);

/// 2 (exp(62 sqrt(K - 1)) - 1), the inverse of k_threshold below the cap.
double epsilon_from_k(double K);

/// The shells A(0, |x| +- eps) and A(e1, |x - e1| +- eps).
/// DegenerateConfiguration, EpsilonOutOfRange.
EnvelopeSet set_a(std::span<const double> x, double epsilon);

/// Height of the intersection point of S(0, r + eps) and S(e1, r + 1 - eps),
/// the collinear worst case x = -r e1: 2 sqrt((r + 1) r (1 - eps) eps).
double heron_im_y(double r, double epsilon);

/// 4 sqrt(eps) (min{|x|, |x - e1|} + 1).
double diam_a_upper(std::span<const double> x, double epsilon);

/// One sampled boundary point of the planar cross-section.
struct BoundaryPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  int arc_id = 0;
};

/// Boundary of the meridian cross-section: arcs of the four boundary
/// circles (arc ids 0..3 = inner/outer around 0, inner/outer around e1) and
/// axis segments (arc id 4), each sampled with `resolution` points. Arcs are
/// ordered counterclockwise around the region. EmptyIntersection when the
/// cross-section is empty.
std::vector<BoundaryPoint> cross_section_boundary(std::span<const double> x,
                                                  double epsilon,
                                                  std::size_t resolution);

/// Diameter of the meridian cross-section by exact circle-circle
/// intersections plus arc sampling; a lower estimate that converges as
/// `resolution` (>= 1000) grows.
double diam_a_bruteforce(std::span<const double> x, double epsilon,
                         std::size_t resolution = 1000);

/// ((1/62) log(1 + (1 - | |x| - |x - e1| |) / 4))^2; zero on the degenerate
/// axis rays.
double theta(std::span<const double> x);

/// 60 sqrt(exp(62 sqrt(K - 1)) - 1), K in (1, 2].
double chordal_a_bound(double K);

/// (x1, sqrt(x2^2 + x3^2), 0) for x in R^3.
Vec meridian_projection(std::span<const double> x);

struct Main1Bounds {
  double euclidean = 0.0;  // bound on |p(f(x)) - p(x)|
  double chordal = 0.0;    // bound on q(p(f(x)), p(x))
  /// exp(60 sqrt(K - 1)) - 1, the epsilon the chordal part is derived with.
  double coupled_epsilon = 0.0;
};

/// Bounds for x in B^3(r) \ {0, e1}, admissible epsilon and
/// 1 < K <= k_threshold(epsilon). PreconditionNotMet names the failed
/// hypothesis.
Main1Bounds main1_bounds(std::span<const double> x, double r, double epsilon,
                         double K);

/// c(K) = c3 / alpha.
double c_main2(double K, int n);

/// c(K) max{j^alpha, j}.
double j_distortion_bound(double K, int n, double jxy);

/// Geodesic step length log^beta(1 + lambda) / c.
double mu_step(double lambda, double c, double beta);

/// omega(K, n) = c (1 + lambda) mu_step^{alpha - 1} 2^{1 - alpha} with
/// lambda = beta - 1 unless overridden. LambdaOutOfRange when the chosen
/// lambda is outside (0, 1).
double omega_main3(double K, int n,
                   std::optional<double> lambda_choice = std::nullopt);

/// omega(K, n) max{k^alpha, k}.
double k_distortion_bound(double K, int n, double kxy);

/// omega(K, n) max{phi^alpha, phi} for an angle phi in [0, pi].
double angle_bound(double K, int n, double phi);

/// log(2 + lambda(K^{1/(n-1)})) / log 3; also checks the linear distortion
/// against exp(pi (K' - 1)).
double c_lower_bound(double K, int n);

/// epsilon, both bounds and the shells for an admissible (x, epsilon).
EnvelopeBound envelope_bound(std::span<const double> x, double epsilon);

}  // namespace qcdl
