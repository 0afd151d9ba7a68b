#pragma once

// Conformal special functions of the plane and the simplified distortion
// bounds built from them for normalized K-quasiconformal maps of R^n.
//
// Plane quantities are exact (to double precision): the complete elliptic
// integral K(r), the Groetzsch modulus mu(r), its inverse, the plane capacity
// gamma_2 and the distortion function phi_{K,2}. For n >= 3 only the
// simplified eta* bound is available; the exact capacity is not computed.

namespace qcdl {

/// Dilatation K, dimension n and the exponents every bound is built from:
/// alpha = K^{1/(1-n)}, beta = 1/alpha, c3 = exp(60 sqrt(K-1)).
struct DistortionParams {
  double K = 1.0;
  int n = 2;
  double alpha = 1.0;
  double beta = 1.0;
  double c3 = 1.0;
};

/// Coefficients of the piecewise power bound on eta*_{K,n}.
struct EtaStarBound {
  double at_one = 1.0;      // exp(4K(K+1) sqrt(K-1)) >= eta*(1)
  double low_coeff = 1.0;   // 2^{1-1/K} K >= lambda_n^{1-alpha}
  double high_coeff = 1.0;  // 2^{K-1} K^K >= lambda_n^{beta-1}
};

struct RadialBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Largest admissible argument of complete_elliptic_k.
inline constexpr double kEllipticUpperLimit = 1.0 - 1e-12;

/// K(r) = int_0^1 dx / sqrt((1-x^2)(1-r^2 x^2)), by the arithmetic-geometric
/// mean. Domain 0 <= r < 1 - 1e-12; DomainError otherwise.
double complete_elliptic_k(double r);

/// Arithmetic-geometric mean of two positive numbers.
double agm(double a, double b);

/// Modulus of the plane Groetzsch ring, (pi/2) K(sqrt(1-r^2)) / K(r).
/// Domain 1e-15 < r < 1 - 1e-15.
double mu(double r);

/// d mu / dr = -pi^2 / (4 r (1-r^2) K(r)^2).
double mu_derivative(double r);

/// Inverse of mu. Accepts any finite y > 0. Where the root is not
/// representable in (0, 1) the result saturates to the nearest double in
/// (0, 1), so round trips are exact only for y in [mu(1-1e-15), mu(1e-15)].
double mu_inverse(double y);

/// mu^{-1}(y) in logit coordinates: z = log(r / sqrt(1-r^2)). Finite and
/// accurate for every y in [1e-300, 1e300] because it never forms r or
/// sqrt(1-r^2) explicitly.
double mu_inverse_logit(double y);

/// Plane Groetzsch capacity 2 pi / mu(1/s), s > 1.
double gamma2(double s);

/// Groetzsch capacity gamma_n(s). Only n = 2 is supported; larger n raise
/// UnsupportedDimension.
double grotzsch_capacity(double s, int n);

/// phi_{K,2}(r) = mu^{-1}(mu(r) / K), K > 0, r in (0, 1).
double phi_k2(double K, double r);

/// lambda(K) = phi_K(1/sqrt2)^2 / (1 - phi_K(1/sqrt2)^2), computed without
/// cancellation.
double linear_distortion(double K);

/// Validated constructor; DomainError for K < 1, non-finite K or n < 2.
DistortionParams make_params(double K, int n);

/// Coefficients of eta_star_upper. Requires K in [1, 2].
EtaStarBound eta_star_coefficients(const DistortionParams& params);

/// Upper bound of eta*_{K,n}(t): A C_low t^alpha for t <= 1 and
/// A C_high t^beta for t > 1. The branches need not meet at t = 1.
double eta_star_upper(const DistortionParams& params, double t);

/// Bounds on |f(x)| for |x| = r and f a K-qc map fixing 0 and e1.
/// K in [1, 2]; at K = 1 both bounds equal r.
RadialBounds qc_radial_bounds(const DistortionParams& params, double r);

}  // namespace qcdl
