#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcdl/errors.hpp"
#include "qcdl/inequality_lab.hpp"
#include "test_support.hpp"

using namespace qcdl;
using std::numbers::ln2;

TEST_CASE("exponent pair") {
  const ExponentPair e = make_exponents(0.5, 2.0);
  CHECK(e.u == doctest::Approx(std::sqrt(ln2)));
  CHECK(e.v == doctest::Approx(1 / ln2));
  CHECK(e.u <= 1.0);
  CHECK(e.v >= 1.0);
  CHECK_THROWS_AS(make_exponents(0.0, 2.0), DomainError);
  CHECK_THROWS_AS(make_exponents(0.5, 0.9), DomainError);
}

TEST_CASE("quasisymmetry lemma") {
  const double m = 1.7;
  CHECK(vesna_check(0.3, 4.0, m, 1.0, false).slack == doctest::Approx(m + 1 / m - 2));
  // q = sqrt((2-1)/(1-0.5)) = sqrt(2).
  CHECK(vesna_threshold(0.5, 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(vesna_check(0.5, 2.0, std::sqrt(2.0), 0.25).slack >= 0.0);
  // Direct evaluation: sqrt(2)*0.5 - 0.25 - (0.25 - 0.0625/sqrt(2)).
  CHECK(vesna_check(0.5, 2.0, std::sqrt(2.0), 0.25).slack ==
        doctest::Approx(std::sqrt(2.0) * 0.5 - 0.25 - 0.25 + 0.0625 / std::sqrt(2.0)));
  // Below threshold: refused, or negative when forced.
  CHECK_THROWS_AS(vesna_check(0.5, 2.0, 0.5, 0.25), PreconditionNotMet);
  CHECK(vesna_check(0.5, 2.0, 0.5, 0.25, false).slack == doctest::Approx(-0.125));
  // Equality case t = 1, m = 1.
  CHECK(std::fabs(vesna_check(0.5, 2.0, 1.0, 1.0, false).slack) <= 1e-12);
  // Small perturbations move the margin by a bounded amount.
  const double h = 1e-9;
  const double m0 = vesna_check(0.4, 3.0, 3.0, 0.7).slack;
  CHECK(std::fabs(vesna_check(0.4, 3.0, 3.0, 0.7 + h).slack - m0) <= 20 * h);
}

TEST_CASE("c3 estimate") {
  const auto p = make_params(1.0, 2);
  CHECK(c3_check(p, 1.0, 2.0).slack == doctest::Approx(2 + 0.5 - 2));
  const auto q = make_params(1.5, 2);
  const double c3 = std::exp(60 * std::sqrt(0.5));
  CHECK(c3_check(q, 0.1, c3).slack >= 0.0);
  CHECK(c3_check(q, 0.1, 2 * c3).slack >= c3_check(q, 0.1, c3).slack);
  CHECK(c3_check(q, 0.3, 3.0).slack >= c3_check(q, 0.3, 2.0).slack);
  CHECK_THROWS_AS(c3_check(q, 0.5, 1.0), PreconditionNotMet);
}

TEST_CASE("Bernoulli ratio functions") {
  CHECK(bernoulli_f(2, 0.5, 1.0, 1.0) == doctest::Approx(std::sqrt(ln2)).epsilon(1e-15));
  CHECK(bernoulli_f(3, 1.0, 2.0, 1.0) == doctest::Approx(1 / ln2).epsilon(1e-15));
  CHECK(std::fabs(bernoulli_f(1, 0.5, 2.0, 1e8) - 2.0) < 1e-3);
  CHECK(bernoulli_f(1, 0.5, 2.0, 1e8) < 2.0);
  // Hand-evaluated ratios.
  CHECK(bernoulli_f(1, 0.5, 2.0, 3.0) ==
        doctest::Approx(std::log(4.0) / std::log(1 + std::sqrt(3.0))));
  CHECK(bernoulli_f(4, 0.5, 2.0, 3.0) == doctest::Approx(std::log(10.0) / std::log(4.0)));
  // Log form survives where the plain ratio overflows.
  CHECK(std::isfinite(log_bernoulli_f(3, 0.5, 100.0, 1e6)));
  CHECK(std::isfinite(log_bernoulli_f(4, 0.5, 100.0, 1e-6)));
  CHECK_THROWS_AS(bernoulli_f(5, 0.5, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(bernoulli_f(1, 0.5, 2.0, 0.0), DomainError);
  CHECK(phi_max(0.5, 2.0, 1.0) == 1.0);
  CHECK(phi_max(0.5, 2.0, 0.5) == doctest::Approx(std::sqrt(0.5)));
  CHECK(phi_max(0.5, 2.0, 4.0) == doctest::Approx(16.0));
}

TEST_CASE("f2 upper range against a high-precision oracle") {
  // Oracle (mpmath, 30 digits): f2 crosses 1 at t = 27.2625 for a = 0.5.
  CHECK(log_bernoulli_f(2, 0.5, 1.0, 27.0) < 0.0);
  CHECK(log_bernoulli_f(2, 0.5, 1.0, 27.6) > 0.0);
  CHECK(log_bernoulli_f(2, 0.5, 1.0, 1e6) > 0.0);
}

TEST_CASE("generalized Bernoulli part 5") {
  // Margins are natural-log differences; oracle values from mpmath.
  const auto m = genbernoulli5(0.9, 1.2, std::numbers::e - 1);
  CHECK(m.lower.slack == doctest::Approx(-0.030807210916313549).epsilon(1e-12));
  CHECK(m.upper.slack == doctest::Approx(0.10410979503264641).epsilon(1e-12));
  const auto small = genbernoulli5(0.5, 2.0, 0.3);
  CHECK(small.lower.slack >= 0.0);
  CHECK(small.upper.slack >= 0.0);
  CHECK_THROWS_AS(genbernoulli5(0.5, 2.0, 1.8), PreconditionNotMet);
}

TEST_CASE("generalized Bernoulli part 6") {
  const auto m = genbernoulli6(0.5, 2.0, 1e-4);
  CHECK(m.c5 == doctest::Approx(1.4426950408889634).epsilon(1e-14));
  CHECK(m.lower.slack == doctest::Approx(0.37146721242495244).epsilon(1e-12));
  CHECK(m.upper.slack == doctest::Approx(-4.2485908480513991).epsilon(1e-12));
  const auto n = genbernoulli6(0.9, 1.1, 0.5);
  CHECK(n.lower.slack == doctest::Approx(0.070249783275981078).epsilon(1e-12));
  CHECK(n.upper.slack == doctest::Approx(-0.081551889296038876).epsilon(1e-12));
  CHECK(c5_constant(0.5, 2.0) == m.c5);

  // c5 -> 1 monotonically as max{b, 1/a} -> 1.
  double previous = INFINITY;
  for (int j = 1; j <= 20; ++j) {
    const double s = 1 + std::ldexp(1.0, -j);
    const double c5 = c5_constant(1 / s, s);
    REQUIRE(c5 < previous);
    REQUIRE(c5 >= 1.0);
    previous = c5;
  }
  CHECK(previous - 1 < 1e-6);
}

TEST_CASE("generalized Bernoulli part 7") {
  // t = 1 branch: log(1 + 2) <= 2 b log 2 = 4 log 2.
  const Margin m = genbernoulli7(0.5, 2.0, 2.0, 1.0);
  CHECK(m.slack == doctest::Approx(std::log(4 * ln2) - std::log(std::log(3.0))));
  CHECK(genbernoulli7(0.5, 2.0, 3.0, 0.2).slack >= 0.0);
  CHECK_THROWS_AS(genbernoulli7(0.5, 2.0, 1.0, 0.2), PreconditionNotMet);
}

TEST_CASE("generalized Bernoulli part 8") {
  for (double s : {0.1, 1.0, 7.0}) {
    const auto m = genbernoulli8(1.0, 1.0, s, 2.5);
    CHECK(std::fabs(m.lower.slack) <= 1e-12);
    CHECK(std::fabs(m.upper.slack) <= 1e-12);
  }
  // s = t <= 1/2: (2 t^a) / (2t)^a = 2^{1-a}, the upper equality.
  const auto eq = genbernoulli8(0.3, 2.0, 0.25, 0.25);
  CHECK(std::fabs(eq.upper.slack) <= 1e-12);
  const auto m = genbernoulli8(0.3, 2.0, 0.4, 5.0);
  CHECK(m.lower.slack >= 0.0);
  CHECK(m.upper.slack >= 0.0);
  CHECK(genbernoulli_check(8, 0.3, 2.0, std::vector<double>{0.4, 5.0}).size() == 2);
  CHECK_THROWS_AS(genbernoulli_check(8, 0.3, 2.0, std::vector<double>{0.4}), DomainError);
  CHECK_THROWS_AS(genbernoulli_check(4, 0.3, 2.0, std::vector<double>{0.4}), DomainError);
}

TEST_CASE("monotone families") {
  CHECK(f5(0.2, 0.8, 1.0) == doctest::Approx(0.6));
  CHECK(f5(0.2, 0.8, 2.0) == doctest::Approx(0.3));
  CHECK(f5_f6_check(MonotoneFamily::f5, 0.2, 0.8, 1.0, 2.0).slack == doctest::Approx(0.3));
  // Small t limit log(b/a) and finite values at large t.
  CHECK(f5(0.2, 0.8, 1e-12) == doctest::Approx(std::log(4.0)).epsilon(1e-9));
  CHECK(f5(0.2, 0.8, 1e6) == 0.0);
  CHECK(std::fabs(f6(0.3, 0.3e6) - 0.6) < 1e-5);
  CHECK(f6(0.3, 1.001 * 0.3) > f6(0.3, 0.6));
  CHECK(f5_f6_check(MonotoneFamily::f6, 0.3, 0.0, 0.5, 0.9).slack > 0.0);
  CHECK_THROWS_AS(f5(0.8, 0.2, 1.0), PreconditionNotMet);
  CHECK_THROWS_AS(f6(0.3, 0.3), PreconditionNotMet);
  CHECK_THROWS_AS(f5_f6_check(MonotoneFamily::f5, 0.2, 0.8, 2.0, 1.0), PreconditionNotMet);
}
