#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcdl/errors.hpp"
#include "qcdl/metrics.hpp"
#include "qcdl/sampling.hpp"
#include "test_support.hpp"

using namespace qcdl;
using std::numbers::pi;

namespace {
ExtendedPoint P(std::initializer_list<double> c) { return ExtendedPoint::finite(c); }
}  // namespace

TEST_CASE("chordal metric") {
  CHECK(chordal(P({0, 0}), ExtendedPoint::infinity()) == doctest::Approx(1.0));
  CHECK(chordal(P({0, 0}), P({1, 0})) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(chordal(P({1, 0}), P({-1, 0})) == doctest::Approx(1.0));
  CHECK(chordal(ExtendedPoint::infinity(), ExtendedPoint::infinity()) == 0.0);
  CHECK(chordal(P({3, 4}), P({3, 4})) == 0.0);
  CHECK(chordal(P({1, 2}), P({-3, 0.5})) == chordal(P({-3, 0.5}), P({1, 2})));
  CHECK_THROWS_AS(chordal(P({1, 2}), P({1, 2, 3})), DimensionMismatch);
  // Points far out stay within [0, 1].
  CHECK(chordal(P({1e300, 0}), P({-1e300, 0})) <= 1.0);
}

TEST_CASE("distance ratio metric") {
  const Vec e1{1, 0, 0};
  CHECK(j_punctured(e1, Vec{2, 0, 0}) == doctest::Approx(std::log(2.0)));
  CHECK(j_punctured(e1, e1) == 0.0);
  CHECK_THROWS_AS(j_punctured(Vec{0, 0}, Vec{1, 0}), DomainError);
  CHECK(j_general(Vec{0, 0}, Vec{1, 0}, 1.0, 1.0) == doctest::Approx(std::log(2.0)));
  CHECK(j_general(Vec{0, 0}, Vec{0, 0}, 1.0, 2.0) == 0.0);
  CHECK_THROWS_AS(j_general(Vec{0, 0}, Vec{1, 0}, 0.0, 1.0), DomainError);
  // Upper half-space, hand oracle: d(e_n) = 1, d(2 e_n) = 2, |x - y| = 1.
  CHECK(j_half_space(Vec{0, 0, 1}, Vec{0, 0, 2}) == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(j_half_space(Vec{0, 0, -1}, Vec{0, 0, 2}), DomainError);
}

TEST_CASE("quasihyperbolic metric of the punctured space") {
  CHECK(k_punctured(Vec{1, 0}, Vec{2, 0}) == doctest::Approx(std::log(2.0)));
  CHECK(k_punctured(Vec{1, 0}, Vec{-1, 0}) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(k_punctured(Vec{1, 0}, Vec{0, 2}) ==
        doctest::Approx(std::hypot(std::log(2.0), pi / 2)));
  CHECK(angle_at_origin(Vec{1, 0}, Vec{-1, 1e-30}) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(angle_at_origin(Vec{1, 0}, Vec{1, 1e-10}) == doctest::Approx(1e-10).epsilon(1e-12));
  CHECK_THROWS_AS(k_punctured(Vec{0, 0}, Vec{1, 0}), DomainError);

  // Inversion invariance: k(x, y) = k(x/|x|^2, y/|y|^2).
  for (std::uint64_t i = 0; i < 1000; ++i) {
    SampleRng rng(7, 1, i);
    const Vec x = scaled(rng.direction(3), rng.log_uniform(1e-3, 1e3));
    const Vec y = scaled(rng.direction(3), rng.log_uniform(1e-3, 1e3));
    const Vec sx = scaled(x, 1 / dot(x, x));
    const Vec sy = scaled(y, 1 / dot(y, y));
    const double k = k_punctured(x, y);
    REQUIRE(std::fabs(k - k_punctured(sx, sy)) <= 1e-12 * std::max(1.0, k));
    REQUIRE(j_punctured(x, y) <= k * (1 + 1e-12));
  }
}

TEST_CASE("j-k sandwich") {
  const auto s = jk_sandwich_check(Vec{1, 0}, Vec{1.1, 0}, 0.5);
  CHECK(s.j == doctest::Approx(std::log(1.1)));
  CHECK(s.k == doctest::Approx(std::log(1.1)));
  CHECK(s.holds);
  const Vec rotated{std::cos(0.05), std::sin(0.05)};
  const auto r = jk_sandwich_check(Vec{1, 0}, rotated, 0.1);
  CHECK(r.holds);
  CHECK(r.k == doctest::Approx(0.05));
  // On the boundary |x - y| = lambda |x|.
  const auto b = jk_sandwich_check(Vec{2, 0}, Vec{2, 1.8}, 0.9);
  CHECK(b.holds);
  CHECK_THROWS_AS(jk_sandwich_check(Vec{1, 0}, Vec{2, 0}, 0.5), PreconditionNotMet);
  CHECK_THROWS_AS(jk_sandwich_check(Vec{1, 0}, Vec{1.1, 0}, 1.0), DomainError);
}

TEST_CASE("geodesic subdivision") {
  auto pts = geodesic_subdivision(Vec{2, 0}, Vec{1, 0}, std::log(2.0));
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == Vec{1, 0});
  CHECK(pts[1] == Vec{2, 0});

  pts = geodesic_subdivision(Vec{4, 0}, Vec{1, 0}, std::log(2.0));
  REQUIRE(pts.size() == 3);
  CHECK(pts[1][0] == doctest::Approx(2.0));
  CHECK(pts[1][1] == doctest::Approx(0.0));

  pts = geodesic_subdivision(Vec{0, 1}, Vec{1, 0}, pi / 4);
  REQUIRE(pts.size() == 3);
  CHECK(pts[1][0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(pts[1][1] == doctest::Approx(1 / std::sqrt(2.0)));

  // Antiparallel: the tie-break plane contains the first usable basis vector.
  pts = geodesic_subdivision(Vec{-1, 0, 0}, Vec{1, 0, 0}, pi / 2);
  REQUIRE(pts.size() == 3);
  CHECK(std::fabs(pts[1][0]) < 1e-15);
  CHECK(std::fabs(pts[1][1]) == doctest::Approx(1.0));
  CHECK(pts[1][2] == 0.0);

  for (std::uint64_t i = 0; i < 1000; ++i) {
    SampleRng rng(11, 2, i);
    const Vec x = scaled(rng.direction(3), rng.log_uniform(1e-3, 1e3));
    const Vec y = i % 50 == 0 ? scaled(x, -2.0) : scaled(rng.direction(3), rng.log_uniform(1e-3, 1e3));
    const double total = k_punctured(x, y);
    const double step = total / rng.uniform(1.0, 30.0);
    const auto path = geodesic_subdivision(x, y, step);
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      const double piece = k_punctured(path[j], path[j + 1]);
      REQUIRE(piece <= step * (1 + 1e-9));
      if (j + 2 < path.size()) REQUIRE(std::fabs(piece - step) <= 1e-9 * std::max(1.0, step));
      sum += piece;
    }
    REQUIRE(std::fabs(sum - total) <= 1e-9);
  }
  CHECK_THROWS_AS(geodesic_subdivision(Vec{1, 0}, Vec{1, 0}, 0.1), DomainError);
  CHECK_THROWS_AS(geodesic_subdivision(Vec{1, 0}, Vec{2, 0}, 0.0), DomainError);
}
