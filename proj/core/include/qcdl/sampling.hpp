#pragma once

// Deterministic sampling engine behind every verification suite.
//
// A suite is a per-sample callback that draws its inputs from a SampleRng and
// records one or more margins (nonnegative slack means the checked inequality
// holds). The random stream of sample i depends only on (seed, suite name, i),
// so reports are identical whatever the evaluation order or thread count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <string_view>

#include "qcdl/point.hpp"

namespace qcdl {

/// Slack of one inequality together with the magnitude of the compared
/// quantities. slack >= 0 means the inequality holds.
struct Margin {
  double slack = 0.0;
  double scale = 1.0;
};

/// Margin of lhs <= rhs.
Margin margin_le(double lhs, double rhs);

/// Margin of lhs <= rhs for positive quantities given by their logarithms.
/// The slack is log(rhs / lhs), a relative measure immune to overflow.
Margin margin_log_le(double log_lhs, double log_rhs);

/// Relative tolerance with an absolute floor. A margin passes when
/// slack >= -max(relative * scale, absolute_floor).
struct Tolerance {
  double relative = 1e-12;
  double absolute_floor = 1e-15;

  /// slack / max(scale, absolute_floor / relative): passes iff >= -relative.
  double normalized(const Margin& m) const;
  bool passes(const Margin& m) const;
};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

struct SamplingPlan {
  std::uint64_t seed = 0x5EED;
  std::size_t samples = 100000;
  Range t{1e-6, 1e6};
  Range a{0.01, 1.0};
  Range b{1.0, 100.0};
  Tolerance tolerance{};
  unsigned threads = 0;  // 0: hardware concurrency
};

class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform on the open interval (lo, hi).
  double uniform_open(double lo, double hi);
  /// Log-uniform on [lo, hi), lo > 0.
  double log_uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  bool bernoulli(double p);
  /// Uniformly distributed unit vector of R^n.
  Vec direction(std::size_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Per-suite accumulator; each sample reports its margins here.
class MarginSink {
 public:
  explicit MarginSink(const Tolerance& tolerance) : tolerance_(&tolerance) {}

  void record(const Margin& m);
  void record(double slack, double scale) { record(Margin{slack, scale}); }

  /// Marks the end of one sample; a sample with any failing margin counts as
  /// one violation.
  void finish_sample();
  void merge(const MarginSink& other);

  std::size_t samples() const { return samples_; }
  std::size_t violations() const { return violations_; }
  double worst_margin() const { return worst_; }

 private:
  const Tolerance* tolerance_;
  std::size_t samples_ = 0;
  std::size_t violations_ = 0;
  double worst_ = std::numeric_limits<double>::infinity();
  bool current_failed_ = false;
};

struct CheckReport {
  std::string suite_name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  /// Most negative normalized slack observed (see Tolerance::normalized).
  double worst_margin = 0.0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double elapsed = 0.0;  // seconds, informational only
};

struct Suite {
  std::string name;
  std::string description;
  std::function<void(SampleRng&, const SamplingPlan&, MarginSink&)> sample;
  /// Upper bound on samples for expensive suites; 0 means no cap.
  std::size_t max_samples = 0;
  /// Deliberate counterexample probes are excluded from "all".
  bool in_default_set = true;
};

/// Stable 64-bit identifier of a suite name (FNV-1a).
std::uint64_t stream_id(std::string_view name);

/// Runs a suite over plan.samples indexed samples. Deterministic given the
/// seed; violations are data, never errors.
CheckReport run_suite(const Suite& suite, const SamplingPlan& plan);

}  // namespace qcdl
