#include "qcdl/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "format_util.hpp"
#include "qcdl/errors.hpp"

namespace qcdl {
namespace {

using detail::num;
using std::numbers::pi;

constexpr double kMuLowerLimit = 1e-15;
constexpr double kMuUpperLimit = 1.0 - 1e-15;
constexpr int kMaxAgmIterations = 64;

// Beyond |z| = kAsymptoticLogit the complementary modulus is below 1e-17 and
// mu(r) = log(4/r) + O(r^2) is exact in double precision.
constexpr double kAsymptoticLogit = 40.0;
constexpr double kLogitBisectionWidth = 1e-14;
constexpr int kMaxBisectionIterations = 200;

// (r, sqrt(1 - r^2)) from the logit coordinate z = log(r / r').
struct ModulusPair {
  double r;
  double rp;
};

ModulusPair pair_from_logit(double z) {
  // The modulus near 1 is formed as 1 - e^2 / (s (s + 1)) so it rounds once.
  const double e = std::exp(-std::fabs(z));
  const double s = std::sqrt(1.0 + e * e);
  const double small = e / s;
  const double large = 1.0 - e * e / (s * (s + 1.0));
  return z < 0.0 ? ModulusPair{small, large} : ModulusPair{large, small};
}

// mu from both moduli; avoids recomputing r' = sqrt(1 - r^2).
double mu_from_pair(double r, double rp) {
  return 0.5 * pi * agm(1.0, rp) / agm(1.0, r);
}

double mu_from_logit(double z) {
  constexpr double log4 = 2.0 * std::numbers::ln2;
  if (z < -kAsymptoticLogit) return log4 - z;
  if (z > kAsymptoticLogit) return pi * pi / (4.0 * (log4 + z));
  const ModulusPair p = pair_from_logit(z);
  return mu_from_pair(p.r, p.rp);
}

// K(r) expressed through the logit coordinate.
double elliptic_k_from_logit(double z) {
  const ModulusPair p = pair_from_logit(z);
  return 0.5 * pi / agm(1.0, p.rp);
}

void require_params_k_at_most_two(const DistortionParams& params,
                                  const char* what) {
  if (!(params.K >= 1.0 && params.K <= 2.0)) {
    throw DomainError(std::string(what) + " requires K in [1, 2], got K = " +
                      num(params.K));
  }
}

}  // namespace

double agm(double a, double b) {
  if (!(a >= 0.0 && b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("agm needs finite nonnegative arguments");
  }
  if (a == 0.0 || b == 0.0) return 0.0;
  for (int i = 0; i < kMaxAgmIterations; ++i) {
    if (std::fabs(a - b) <= 1e-15 * std::fmax(a, b)) return 0.5 * (a + b);
    const double next_a = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next_a;
  }
  throw ConvergenceError("agm did not converge");
}

double complete_elliptic_k(double r) {
  if (!(r >= 0.0 && r < kEllipticUpperLimit)) {
    throw DomainError("complete_elliptic_k needs 0 <= r < 1 - 1e-12 "
                      "(near-singular at r = 1), got r = " + num(r));
  }
  const double rp = std::sqrt((1.0 - r) * (1.0 + r));
  return 0.5 * pi / agm(1.0, rp);
}

double mu(double r) {
  if (!(r > kMuLowerLimit && r < kMuUpperLimit)) {
    throw DomainError("mu needs 1e-15 < r < 1 - 1e-15, got r = " + num(r));
  }
  return mu_from_pair(r, std::sqrt((1.0 - r) * (1.0 + r)));
}

double mu_derivative(double r) {
  if (!(r > kMuLowerLimit && r < kMuUpperLimit)) {
    throw DomainError("mu_derivative needs 1e-15 < r < 1 - 1e-15, got r = " +
                      num(r));
  }
  const double k = complete_elliptic_k(r);
  return -pi * pi / (4.0 * r * (1.0 - r) * (1.0 + r) * k * k);
}

double mu_inverse_logit(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw DomainError("mu_inverse needs finite y > 0, got y = " + num(y));
  }
  constexpr double log4 = 2.0 * std::numbers::ln2;
  // Outside the bracket mu is its own closed-form asymptote.
  if (y >= mu_from_logit(-kAsymptoticLogit)) return log4 - y;
  if (y <= mu_from_logit(kAsymptoticLogit)) return pi * pi / (4.0 * y) - log4;

  // mu is strictly decreasing in z.
  double lo = -kAsymptoticLogit;
  double hi = kAsymptoticLogit;
  int iterations = 0;
  while (hi - lo > kLogitBisectionWidth) {
    if (++iterations > kMaxBisectionIterations) {
      throw ConvergenceError("mu_inverse bisection did not converge for y = " +
                             num(y));
    }
    const double mid = 0.5 * (lo + hi);
    if (mu_from_logit(mid) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double z = 0.5 * (lo + hi);
  // Newton polish. dmu/dz = dmu/dr * dr/dz = -pi^2 / (4 K(r)^2) since
  // dr/dz = r (1 - r^2).
  const double k = elliptic_k_from_logit(z);
  const double step = (mu_from_logit(z) - y) * 4.0 * k * k / (pi * pi);
  if (std::isfinite(step) && std::fabs(step) <= kLogitBisectionWidth) z += step;
  return z;
}

double mu_inverse(double y) {
  const double z = mu_inverse_logit(y);
  const double r = pair_from_logit(z).r;
  constexpr double smallest = std::numeric_limits<double>::denorm_min();
  const double largest = std::nextafter(1.0, 0.0);
  if (r < smallest) return smallest;
  if (r > largest) return largest;
  return r;
}

double gamma2(double s) {
  if (!(s > 1.0 + 1e-12) || !std::isfinite(s)) {
    throw DomainError("gamma2 needs finite s > 1, got s = " + num(s));
  }
  const double r = 1.0 / s;
  return 2.0 * pi / mu_from_pair(r, std::sqrt((1.0 - r) * (1.0 + r)));
}

double grotzsch_capacity(double s, int n) {
  if (n == 2) return gamma2(s);
  throw UnsupportedDimension(
      "the Groetzsch capacity is only computed in the plane (n = 2), got n = " +
      std::to_string(n));
}

double phi_k2(double K, double r) {
  if (!(K > 0.0) || !std::isfinite(K)) {
    throw DomainError("phi_K2 needs finite K > 0, got K = " + num(K));
  }
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("phi_K2 needs r in (0, 1), got r = " + num(r));
  }
  return mu_inverse(mu(r) / K);
}

double linear_distortion(double K) {
  if (!(K > 0.0) || !std::isfinite(K)) {
    throw DomainError("linear_distortion needs finite K > 0, got K = " +
                      num(K));
  }
  // phi^2 / (1 - phi^2) = (r / r')^2 = exp(2z), and mu(1/sqrt2) = pi/2.
  return std::exp(2.0 * mu_inverse_logit(0.5 * pi / K));
}

DistortionParams make_params(double K, int n) {
  if (!(K >= 1.0) || !std::isfinite(K)) {
    throw DomainError("K must be a finite real >= 1, got K = " + num(K));
  }
  if (n < 2) {
    throw DomainError("dimension n must be >= 2, got n = " + std::to_string(n));
  }
  const double log_k = std::log(K) / static_cast<double>(n - 1);
  return DistortionParams{
      .K = K,
      .n = n,
      .alpha = n == 2 ? 1.0 / K : std::exp(-log_k),
      .beta = n == 2 ? K : std::exp(log_k),
      .c3 = std::exp(60.0 * std::sqrt(K - 1.0)),
  };
}

EtaStarBound eta_star_coefficients(const DistortionParams& params) {
  require_params_k_at_most_two(params, "eta_star_upper");
  const double K = params.K;
  return EtaStarBound{
      .at_one = std::exp(4.0 * K * (K + 1.0) * std::sqrt(K - 1.0)),
      .low_coeff = std::exp2(1.0 - 1.0 / K) * K,
      .high_coeff = std::exp2(K - 1.0) * std::pow(K, K),
  };
}

double eta_star_upper(const DistortionParams& params, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("eta_star_upper needs finite t > 0, got t = " + num(t));
  }
  const EtaStarBound c = eta_star_coefficients(params);
  if (t <= 1.0) return c.at_one * c.low_coeff * std::pow(t, params.alpha);
  return c.at_one * c.high_coeff * std::pow(t, params.beta);
}

RadialBounds qc_radial_bounds(const DistortionParams& params, double r) {
  require_params_k_at_most_two(params, "qc_radial_bounds");
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("qc_radial_bounds needs finite r > 0, got r = " +
                      num(r));
  }
  const double slow = std::pow(r, r <= 1.0 ? params.beta : params.alpha);
  const double fast = std::pow(r, r <= 1.0 ? params.alpha : params.beta);
  return RadialBounds{.lower = slow / params.c3, .upper = params.c3 * fast};
}

}  // namespace qcdl
