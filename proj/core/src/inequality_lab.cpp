#include "qcdl/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "format_util.hpp"
#include "qcdl/errors.hpp"

namespace qcdl {
namespace {

using detail::num;
using std::numbers::ln2;

void require_positive(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(what) + " needs a finite t > 0, got " +
                      num(t));
  }
}

// log(1 + e^x) without overflow.
double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// log(log(1 + e^x)); for very negative x, log(1 + e^x) = e^x to full
// precision.
double log_softplus(double x) {
  if (x < -700.0) return x;
  return std::log(softplus(x));
}

double log_add_exp(double x, double y) {
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  return hi + std::log1p(std::exp(lo - hi));
}

// log(max{t^a, t^b}).
double log_phi(const ExponentPair& e, double t) {
  return (t <= 1.0 ? e.a : e.b) * std::log(t);
}

// The quasisymmetry-lemma margin shared by vesna_check and c3_check.
Margin two_branch_margin(double a, double b, double m, double t) {
  const double slow = std::pow(t, t <= 1.0 ? a : b);  // m * slow dominates
  const double fast = std::pow(t, t <= 1.0 ? b : a);
  const double lead = m * slow;
  const double tail = fast / m;
  const double slack = (lead - t) - (t - tail);
  if (std::isinf(lead)) return Margin{lead, 1.0};
  return Margin{slack, std::max({lead, 2.0 * t, tail})};
}

}  // namespace

ExponentPair make_exponents(double a, double b) {
  if (!(a > 0.0 && a <= 1.0 && b >= 1.0) || !std::isfinite(b)) {
    throw DomainError("exponents need 0 < a <= 1 <= b, got a = " + num(a) +
                      ", b = " + num(b));
  }
  return ExponentPair{a, b, std::pow(ln2, 1.0 - a), std::pow(ln2, 1.0 - b)};
}

double vesna_threshold(double a, double b) {
  if (!(a > 0.0 && a < 1.0 && b > 1.0) || !std::isfinite(b)) {
    throw DomainError("vesna_check needs 0 < a < 1 < b, got a = " + num(a) +
                      ", b = " + num(b));
  }
  const double q = std::sqrt((b - 1.0) / (1.0 - a));
  return std::max(q, 1.0 / q);
}

Margin vesna_check(double a, double b, double m, double t,
                   bool enforce_threshold) {
  const double threshold = vesna_threshold(a, b);
  require_positive(t, "vesna_check");
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw DomainError("vesna_check needs a finite m > 0, got " + num(m));
  }
  if (enforce_threshold && m < threshold) {
    throw PreconditionNotMet("vesna_check needs m >= max{q, 1/q} = " +
                             num(threshold) + ", got m = " + num(m));
  }
  return two_branch_margin(a, b, m, t);
}

Margin c3_check(const DistortionParams& params, double t, double c) {
  require_positive(t, "c3_check");
  const double floor_c = std::sqrt(params.beta);
  if (!(c >= floor_c) || !std::isfinite(c)) {
    throw PreconditionNotMet("c3_check needs c >= sqrt(beta) = " +
                             num(floor_c) + ", got c = " + num(c));
  }
  return two_branch_margin(params.alpha, params.beta, c, t);
}

double log_bernoulli_f(int k, double a, double b, double t) {
  const ExponentPair e = make_exponents(a, b);
  require_positive(t, "bernoulli_f");
  const double lt = std::log(t);
  const double ll = std::log(std::log1p(t));  // log log(1 + t)
  switch (k) {
    case 1:
      return ll - log_softplus(e.a * lt);
    case 2:
      return log_softplus(e.a * lt) - e.a * ll;
    case 3:
      return log_softplus(e.b * lt) - e.b * ll;
    case 4:
      return log_softplus(e.b * lt) - ll;
    default:
      throw DomainError("bernoulli_f selector must be 1..4, got " +
                        std::to_string(k));
  }
}

double bernoulli_f(int k, double a, double b, double t) {
  return std::exp(log_bernoulli_f(k, a, b, t));
}

double phi_max(double a, double b, double t) {
  const ExponentPair e = make_exponents(a, b);
  if (!(t >= 0.0)) throw DomainError("phi_max needs t >= 0, got " + num(t));
  return std::pow(t, t <= 1.0 ? e.a : e.b);
}

TwoSidedMargin genbernoulli5(double a, double b, double t) {
  const ExponentPair e = make_exponents(a, b);
  require_positive(t, "genbernoulli part 5");
  if (t > std::numbers::e - 1.0) {
    throw PreconditionNotMet("genbernoulli part 5 needs t in (0, e-1], got " +
                             num(t));
  }
  const double log_lhs = log_softplus(log_phi(e, t));  // log log(1 + phi(t))
  const double log_mid = log_phi(e, std::log1p(t));    // log phi(log(1 + t))
  const double log_u = std::log(e.u);
  return TwoSidedMargin{
      .lower = margin_log_le(log_u + log_lhs, log_mid),
      .upper = margin_log_le(log_mid, log_lhs - log_u),
  };
}

double c5_constant(double a, double b) {
  const ExponentPair e = make_exponents(a, b);
  return std::max(1.0 / e.u, e.v);
}

Part6Margin genbernoulli6(double a, double b, double t) {
  const ExponentPair e = make_exponents(a, b);
  require_positive(t, "genbernoulli part 6");
  const double c5 = std::max(1.0 / e.u, e.v);
  const double log_c5 = std::log(c5);
  const double log_outer = log_softplus(log_phi(e, t));
  const double log_mid = log_phi(e, std::log1p(t));
  return Part6Margin{
      .lower = margin_log_le(log_outer - log_c5, log_mid),
      .upper = margin_log_le(log_mid, log_c5 + e.b * log_outer),
      .c5 = c5,
  };
}

Margin genbernoulli7(double a, double b, double c, double t) {
  const ExponentPair e = make_exponents(a, b);
  require_positive(t, "genbernoulli part 7");
  if (!(c > 1.0) || !std::isfinite(c)) {
    throw PreconditionNotMet("genbernoulli part 7 needs c > 1, got " + num(c));
  }
  const double log_c = std::log(c);
  const double log_lhs = log_softplus(log_c + log_phi(e, t));
  const double ll = std::log(std::log1p(t));
  const double log_rhs =
      t < 1.0 ? log_c + e.a * ll : log_c + std::log(e.b) + ll;
  return margin_log_le(log_lhs, log_rhs);
}

TwoSidedMargin genbernoulli8(double a, double b, double s, double t) {
  const ExponentPair e = make_exponents(a, b);
  require_positive(s, "genbernoulli part 8");
  require_positive(t, "genbernoulli part 8");
  const double log_ratio =
      log_add_exp(log_phi(e, s), log_phi(e, t)) - log_phi(e, s + t);
  return TwoSidedMargin{
      .lower = margin_log_le((1.0 - e.b) * ln2, log_ratio),
      .upper = margin_log_le(log_ratio, (1.0 - e.a) * ln2),
  };
}

std::vector<Margin> genbernoulli_check(int part, double a, double b,
                                       std::span<const double> inputs) {
  auto need = [&](std::size_t count) {
    if (inputs.size() != count) {
      throw DomainError("genbernoulli part " + std::to_string(part) +
                        " takes " + std::to_string(count) + " input(s)");
    }
  };
  switch (part) {
    case 5: {
      need(1);
      const auto m = genbernoulli5(a, b, inputs[0]);
      return {m.lower, m.upper};
    }
    case 6: {
      need(1);
      const auto m = genbernoulli6(a, b, inputs[0]);
      return {m.lower, m.upper};
    }
    case 7:
      need(2);
      return {genbernoulli7(a, b, inputs[0], inputs[1])};
    case 8: {
      need(2);
      const auto m = genbernoulli8(a, b, inputs[0], inputs[1]);
      return {m.lower, m.upper};
    }
    default:
      throw DomainError("genbernoulli_check part must be 5..8, got " +
                        std::to_string(part));
  }
}

double f5(double a, double b, double t) {
  if (!(a > 0.0 && a < b && b < 1.0)) {
    throw PreconditionNotMet("f5 needs 0 < a < b < 1, got a = " + num(a) +
                             ", b = " + num(b));
  }
  require_positive(t, "f5");
  // b^t - a^t = -b^t expm1(t log(a/b)): no cancellation for small t and no
  // overflow for large t.
  const double lb = std::log(b);
  return -std::exp(t * lb) * std::expm1(t * (std::log(a) - lb)) / t;
}

double f6(double a, double t) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw PreconditionNotMet("f6 needs a > 0, got a = " + num(a));
  }
  if (!(t > a) || !std::isfinite(t)) {
    throw PreconditionNotMet("f6 needs t > a, got t = " + num(t));
  }
  return 2.0 * t * std::atanh(a / t);
}

Margin f5_f6_check(MonotoneFamily family, double a, double b, double t1,
                   double t2) {
  if (!(t1 < t2)) {
    throw PreconditionNotMet("monotonicity check needs t1 < t2, got " +
                             num(t1) + ", " + num(t2));
  }
  auto f = [&](double t) {
    return family == MonotoneFamily::f5 ? f5(a, b, t) : f6(a, t);
  };
  return margin_le(f(t2), f(t1));
}

}  // namespace qcdl
