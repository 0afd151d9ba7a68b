#pragma once

// Executable predicates for the quasisymmetry and Bernoulli-type inequalities.
// Every check returns Margin(s) whose slack is nonnegative exactly when the
// inequality holds; use Tolerance to classify roundoff near equality.

#include <span>
#include <vector>

#include "qcdl/sampling.hpp"
#include "qcdl/special_functions.hpp"

namespace qcdl {

/// Exponents 0 < a <= 1 <= b with u = log(2)^{1-a} and v = log(2)^{1-b}.
struct ExponentPair {
  double a = 1.0;
  double b = 1.0;
  double u = 1.0;
  double v = 1.0;
};

/// DomainError unless 0 < a <= 1 <= b (finite).
ExponentPair make_exponents(double a, double b);

/// max{q, 1/q} with q = sqrt((b-1)/(1-a)), the smallest admissible m.
double vesna_threshold(double a, double b);

/// (m t^a - t) - (t - t^b/m) for t <= 1 and (m t^b - t) - (t - t^a/m) for
/// t >= 1. With enforce_threshold = false an m below vesna_threshold is
/// evaluated anyway (counterexample probes); otherwise PreconditionNotMet.
Margin vesna_check(double a, double b, double m, double t,
                   bool enforce_threshold = true);

/// The same two-branch margin with exponents alpha, beta of params and a
/// constant c >= sqrt(beta).
Margin c3_check(const DistortionParams& params, double t, double c);

/// f_1 ... f_4 of the generalized Bernoulli lemma:
///   f1 = log(1+t) / log(1+t^a)        f2 = log(1+t^a) / log^a(1+t)
///   f3 = log(1+t^b) / log^b(1+t)      f4 = log(1+t^b) / log(1+t)
double bernoulli_f(int k, double a, double b, double t);

/// Natural logarithm of bernoulli_f, finite wherever the ratio is positive
/// and representable in log form (no overflow for large b or t).
double log_bernoulli_f(int k, double a, double b, double t);

/// max{t^a, t^b}.
double phi_max(double a, double b, double t);

struct TwoSidedMargin {
  Margin lower;
  Margin upper;
};

/// Part 5, t in (0, e-1]:
///   u log(1 + phi(t)) <= phi(log(1+t)) <= u^{-1} log(1 + phi(t)).
TwoSidedMargin genbernoulli5(double a, double b, double t);

struct Part6Margin {
  Margin lower;
  Margin upper;
  double c5 = 1.0;
};

/// max{1/u, v}.
double c5_constant(double a, double b);

/// Part 6, t > 0:
///   log(1 + phi(t)) / c5 <= phi(log(1+t)) <= c5 log^b(1 + phi(t)).
Part6Margin genbernoulli6(double a, double b, double t);

/// Part 7, c > 1:
///   log(1 + c phi(t)) <= c log^a(1+t) for t < 1 and <= c b log(1+t) for
///   t >= 1.
Margin genbernoulli7(double a, double b, double c, double t);

/// Part 8, s, t > 0:
///   2^{1-b} <= (phi(s) + phi(t)) / phi(s+t) <= 2^{1-a}.
TwoSidedMargin genbernoulli8(double a, double b, double s, double t);

/// Dispatcher over parts 5..8. inputs: {t} for 5 and 6, {c, t} for 7,
/// {s, t} for 8. Returns every margin of the selected part.
std::vector<Margin> genbernoulli_check(int part, double a, double b,
                                       std::span<const double> inputs);

/// f5(t) = (b^t - a^t) / t for 0 < a < b < 1.
double f5(double a, double b, double t);
/// f6(t) = t log((1 + a/t) / (1 - a/t)) for t > a > 0.
double f6(double a, double t);

enum class MonotoneFamily { f5, f6 };

/// Margin of f(t1) >= f(t2) for t1 < t2 (the claimed decrease). `b` is
/// ignored for f6.
Margin f5_f6_check(MonotoneFamily family, double a, double b, double t1,
                   double t2);

}  // namespace qcdl
