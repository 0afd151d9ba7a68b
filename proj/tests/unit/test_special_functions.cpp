#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "qcdl/errors.hpp"
#include "qcdl/special_functions.hpp"
#include "test_support.hpp"

using namespace qcdl;
using qcdl::test::rel_err;
using std::numbers::pi;

namespace {

// K(r) by adaptive Gauss-Kronrod after x = sin(theta), which removes the
// endpoint singularity: K(r) = int_0^{pi/2} dtheta / sqrt(1 - r^2 sin^2).
double quadrature_k(double r) {
  auto f = [r](double th) {
    const double s = std::sin(th);
    return 1.0 / std::sqrt(1.0 - r * r * s * s);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, pi / 2, 15, 1e-15);
}

// Root of mu(r) = y by plain bisection on (0, 1).
double bisection_mu_inverse(double y) {
  double lo = 1e-15;
  double hi = 1.0 - 1e-15;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mu(mid) > y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("complete elliptic K") {
  CHECK(complete_elliptic_k(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(rel_err(complete_elliptic_k(1.0 / std::sqrt(2.0)), 1.8540746773013719) < 1e-14);
  CHECK(complete_elliptic_k(0.3) < complete_elliptic_k(0.6));
  for (int i = 1; i <= 19; ++i) {
    const double r = 0.05 * i;
    CHECK(std::fabs(complete_elliptic_k(r) - quadrature_k(r)) <= 1e-10);
  }
  CHECK_THROWS_AS(complete_elliptic_k(-0.1), DomainError);
  CHECK_THROWS_AS(complete_elliptic_k(1.0 - 1e-13), DomainError);
  CHECK_NOTHROW(complete_elliptic_k(1.0 - 1e-11));
  CHECK(agm(1.0, 1.0) == 1.0);
}

TEST_CASE("modulus mu") {
  CHECK(std::fabs(mu(1.0 / std::sqrt(2.0)) - pi / 2) <= 1e-12);
  // Oracle: composed quadrature values of K.
  const double r = 0.5;
  const double oracle = pi / 2 * quadrature_k(std::sqrt(1 - r * r)) / quadrature_k(r);
  CHECK(rel_err(mu(0.5), oracle) < 1e-12);
  CHECK(rel_err(mu(0.5), 2.0094593770052852) < 1e-14);
  for (int i = 1; i <= 19; ++i) {
    const double s = 0.05 * i;
    CHECK(std::fabs(mu(s) * mu(std::sqrt(1 - s * s)) - pi * pi / 4) <= 1e-10);
  }
  CHECK(mu(0.2) > mu(0.4));
  CHECK_THROWS_AS(mu(1e-16), DomainError);
  CHECK_THROWS_AS(mu(1.0), DomainError);
}

TEST_CASE("mu derivative matches central differences") {
  for (double r : {0.05, 0.2, 0.5, 0.8, 0.95}) {
    const double h = 1e-6;
    const double fd = (mu(r + h) - mu(r - h)) / (2 * h);
    CHECK(rel_err(mu_derivative(r), fd) < 1e-5);
  }
}

TEST_CASE("mu inverse") {
  CHECK(std::fabs(mu_inverse(pi / 2) - 1 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::fabs(mu_inverse(mu(0.123)) - 0.123) <= 1e-12);
  CHECK(std::fabs(mu_inverse(3.0) - bisection_mu_inverse(3.0)) <= 1e-12);
  CHECK(rel_err(mu_inverse(3.0), 0.19719072657000561) < 1e-12);
  for (int i = 1; i < 1000; ++i) {
    const double r = i / 1000.0;
    REQUIRE(rel_err(mu_inverse(mu(r)), r) <= 1e-12);
  }
  // Round trips in y over the representable range.
  const double y_lo = mu(1.0 - 2e-15);
  const double y_hi = mu(2e-15);
  for (int i = 0; i <= 1000; ++i) {
    const double y = y_lo * std::pow(y_hi / y_lo, i / 1000.0);
    const double r = mu_inverse(y);
    if (r <= 1e-15 || r >= 1.0 - 1e-15) continue;
    if (rel_err(mu(r), y) <= 1e-12) continue;
    // Near r = 1 adjacent doubles are too coarse; r must then bracket y.
    const double below = std::nextafter(r, 0.0);
    const double above = std::nextafter(r, 1.0);
    REQUIRE(above < 1.0 - 1e-15);
    REQUIRE(mu(below) >= y * (1 - 1e-12));
    REQUIRE(mu(above) <= y * (1 + 1e-12));
  }
  // Saturation outside the representable range, no failures.
  for (double y : {1e-8, 1e-6, 0.01, 40.0, 1e3, 1e4}) {
    const double r = mu_inverse(y);
    CHECK(r > 0.0);
    CHECK(r < 1.0);
  }
  CHECK(mu_inverse(1e4) < 1e-300);
  CHECK(std::isfinite(mu_inverse_logit(1e4)));
  CHECK(mu_inverse_logit(1e4) < -1e3);
  CHECK_THROWS_AS(mu_inverse(0.0), DomainError);
  CHECK_THROWS_AS(mu_inverse(NAN), DomainError);
}

TEST_CASE("plane capacity") {
  CHECK(std::fabs(gamma2(std::sqrt(2.0)) - 4.0) <= 1e-12);
  CHECK(rel_err(gamma2(2.0), 2 * pi / mu(0.5)) < 1e-15);
  CHECK(rel_err(gamma2(2.0), 3.1268038453922230) < 1e-13);
  CHECK(gamma2(1.5) > gamma2(3.0));
  CHECK_THROWS_AS(gamma2(1.0), DomainError);
  CHECK(grotzsch_capacity(2.0, 2) == gamma2(2.0));
  CHECK_THROWS_AS(grotzsch_capacity(2.0, 3), UnsupportedDimension);
}

TEST_CASE("plane distortion function") {
  CHECK(std::fabs(phi_k2(1.0, 0.37) - 0.37) <= 1e-12);
  CHECK(std::fabs(phi_k2(2.0, phi_k2(0.5, 0.6)) - 0.6) <= 1e-10);
  for (double K : {1.1, 1.5, 2.0}) {
    for (int i = 1; i < 20; ++i) {
      const double r = 0.05 * i;
      CHECK(std::fabs(phi_k2(K, phi_k2(1.0 / K, r)) - r) <= 1e-10);
    }
  }
  CHECK(phi_k2(1.5, 0.3) < phi_k2(1.5, 0.4));
  const double v = phi_k2(2.0, 1 / std::sqrt(2.0));
  CHECK(rel_err(v, 0.98517143100941604) < 1e-13);
  CHECK(rel_err(linear_distortion(2.0), 32.970562748477141) < 1e-11);
  CHECK(linear_distortion(2.0) >= std::exp(pi));
  CHECK(linear_distortion(1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("distortion parameters") {
  const auto p1 = make_params(1.0, 3);
  CHECK(p1.alpha == 1.0);
  CHECK(p1.beta == 1.0);
  CHECK(p1.c3 == 1.0);
  const auto p2 = make_params(2.0, 2);
  CHECK(p2.alpha == 0.5);
  CHECK(p2.beta == 2.0);
  CHECK(rel_err(p2.c3, std::exp(60.0)) < 1e-15);
  const auto p3 = make_params(1.21, 3);
  CHECK(rel_err(p3.alpha, 1 / 1.1) < 1e-15);
  CHECK(rel_err(p3.alpha, std::pow(1.21, -0.5)) < 1e-15);
  CHECK(rel_err(p3.c3, std::exp(60 * std::sqrt(0.21))) < 1e-14);
  for (double K : {1.01, 1.5, 2.0}) {
    for (int n : {2, 3, 5}) {
      const auto p = make_params(K, n);
      CHECK(std::fabs(p.alpha * p.beta - 1.0) <= 1e-15);
      CHECK(p.c3 >= std::sqrt(p.beta));
    }
  }
  CHECK_THROWS_AS(make_params(0.9, 2), DomainError);
  CHECK_THROWS_AS(make_params(1.5, 1), DomainError);
}

TEST_CASE("eta star upper bound") {
  const auto p1 = make_params(1.0, 2);
  CHECK(eta_star_upper(p1, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(eta_star_upper(p1, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eta_star_upper(p1, 5.0) == doctest::Approx(5.0).epsilon(1e-15));

  const auto p = make_params(1.1, 2);
  // Second evaluation path: the product written out by hand.
  const double hand = std::exp(4 * 1.1 * 2.1 * std::sqrt(0.1)) *
                      std::pow(2.0, 1 - 1 / 1.1) * 1.1 * std::pow(0.5, 1 / 1.1);
  CHECK(rel_err(eta_star_upper(p, 0.5), hand) < 1e-14);
  CHECK(rel_err(eta_star_upper(p, 0.5), 11.589903339688449) < 1e-13);

  const auto c = eta_star_coefficients(p);
  CHECK(c.at_one >= 1.0);
  CHECK(c.low_coeff >= 1.0);
  CHECK(c.high_coeff >= 1.0);
  // The t = 1 point belongs to the low branch; the jump across t = 1 is
  // the ratio of the two coefficients.
  CHECK(eta_star_upper(p, 1.0) == doctest::Approx(c.at_one * c.low_coeff));
  const double after = eta_star_upper(p, std::nextafter(1.0, 2.0));
  CHECK(after / eta_star_upper(p, 1.0) == doctest::Approx(c.high_coeff / c.low_coeff));
  CHECK(eta_star_upper(p, 1.0) >= 1.0 / c.at_one);
  CHECK(after >= 1.0 / c.at_one);

  CHECK_THROWS_AS(eta_star_upper(p, 0.0), DomainError);
  CHECK_THROWS_AS(eta_star_upper(make_params(2.5, 2), 1.0), DomainError);
}

TEST_CASE("radial modulus bounds") {
  const auto p = make_params(1.01, 3);
  const auto b = qc_radial_bounds(p, 1.0);
  CHECK(rel_err(b.lower, std::exp(-6.0)) < 1e-14);
  CHECK(rel_err(b.upper, std::exp(6.0)) < 1e-14);
  for (double r : {1e-3, 0.5, 1.0, 7.0, 1e3}) {
    const auto q = qc_radial_bounds(make_params(1.0, 3), r);
    CHECK(q.lower == doctest::Approx(r).epsilon(1e-15));
    CHECK(q.upper == doctest::Approx(r).epsilon(1e-15));
    const auto s = qc_radial_bounds(make_params(1.5, 2), r);
    CHECK(s.lower < s.upper);
  }
  CHECK_THROWS_AS(qc_radial_bounds(p, 0.0), DomainError);
}
