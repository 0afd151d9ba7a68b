#include "qcdl/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>
#include <vector>

#include "qcdl/errors.hpp"

namespace qcdl {
namespace {

// SplitMix64 finalizer; spreads (seed, stream, index) over the engine seed.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Margin margin_le(double lhs, double rhs) {
  return Margin{rhs - lhs, std::max(std::fabs(lhs), std::fabs(rhs))};
}

Margin margin_log_le(double log_lhs, double log_rhs) {
  // Both sides zero (log = -inf) is equality.
  if (log_lhs == log_rhs) return Margin{0.0, 1.0};
  return Margin{log_rhs - log_lhs, 1.0};
}

double Tolerance::normalized(const Margin& m) const {
  if (std::isinf(m.slack)) return m.slack;
  const double floor_scale = absolute_floor / relative;
  return m.slack / std::max(m.scale, floor_scale);
}

bool Tolerance::passes(const Margin& m) const {
  // NaN slack fails.
  return normalized(m) >= -relative;
}

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t stream,
                     std::uint64_t index)
    : engine_(mix(mix(seed) ^ mix(stream + 0x632BE59BD9B4E019ull) ^
                  mix(index + 0x8CB92BA72F3D8DD7ull))) {}

double SampleRng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double SampleRng::uniform_open(double lo, double hi) {
  double v = lo;
  while (v <= lo || v >= hi) v = uniform(lo, hi);
  return v;
}

double SampleRng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

int SampleRng::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

bool SampleRng::bernoulli(double p) {
  return std::bernoulli_distribution(p)(engine_);
}

Vec SampleRng::direction(std::size_t n) {
  std::normal_distribution<double> gauss;
  Vec v(n);
  double len = 0.0;
  while (len < 1e-8) {
    for (double& c : v) c = gauss(engine_);
    len = norm(v);
  }
  for (double& c : v) c /= len;
  return v;
}

void MarginSink::record(const Margin& m) {
  const double normalized = tolerance_->normalized(m);
  if (!tolerance_->passes(m)) current_failed_ = true;
  if (std::isnan(normalized)) {
    worst_ = -std::numeric_limits<double>::infinity();
  } else {
    worst_ = std::min(worst_, normalized);
  }
}

void MarginSink::finish_sample() {
  ++samples_;
  if (current_failed_) ++violations_;
  current_failed_ = false;
}

void MarginSink::merge(const MarginSink& other) {
  samples_ += other.samples_;
  violations_ += other.violations_;
  worst_ = std::min(worst_, other.worst_);
}

std::uint64_t stream_id(std::string_view name) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

CheckReport run_suite(const Suite& suite, const SamplingPlan& plan) {
  if (!suite.sample) throw DomainError("suite '" + suite.name + "' has no checks");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t total =
      suite.max_samples ? std::min(plan.samples, suite.max_samples)
                        : plan.samples;
  const std::uint64_t stream = stream_id(suite.name);

  unsigned workers = plan.threads ? plan.threads
                                  : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(1, total / 256)));

  std::vector<MarginSink> partial(workers, MarginSink(plan.tolerance));
  auto work = [&](unsigned w) {
    const std::size_t begin = total * w / workers;
    const std::size_t end = total * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) {
      SampleRng rng(plan.seed, stream, i);
      try {
        suite.sample(rng, plan, partial[w]);
      } catch (const std::exception&) {
        // A check that cannot be evaluated counts against the suite.
        partial[w].record(std::numeric_limits<double>::quiet_NaN(), 1.0);
      }
      partial[w].finish_sample();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  MarginSink merged(plan.tolerance);
  for (const auto& p : partial) merged.merge(p);

  CheckReport report;
  report.suite_name = suite.name;
  report.samples = merged.samples();
  report.violations = merged.violations();
  report.worst_margin = merged.worst_margin();
  report.seed = plan.seed;
  report.tolerance = plan.tolerance.relative;
  report.elapsed = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

}  // namespace qcdl
