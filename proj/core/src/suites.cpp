#include "qcdl/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qcdl/distortion_envelope.hpp"
#include "qcdl/inequality_lab.hpp"
#include "qcdl/metrics.hpp"
#include "qcdl/oracle_maps.hpp"
#include "qcdl/special_functions.hpp"

namespace qcdl {
namespace {

using std::numbers::pi;

// Exponent pair from the plan: a in (a.lo, a.hi], b in [b.lo, b.hi].
struct Exponents {
  double a;
  double b;
};

Exponents draw_exponents(SampleRng& rng, const SamplingPlan& plan) {
  const double a = rng.bernoulli(0.05) ? 1.0 : rng.uniform_open(plan.a.lo, plan.a.hi);
  const double b = rng.bernoulli(0.05) ? 1.0 : rng.uniform(plan.b.lo, plan.b.hi);
  return {a, b};
}

double draw_t(SampleRng& rng, const SamplingPlan& plan) {
  if (rng.bernoulli(0.02)) return 1.0;
  return rng.log_uniform(plan.t.lo, plan.t.hi);
}

std::pair<double, double> draw_sorted_pair(SampleRng& rng, double lo, double hi) {
  double t1 = rng.log_uniform(lo, hi);
  double t2 = rng.bernoulli(0.5) ? t1 * (1.0 + rng.log_uniform(1e-9, 1.0))
                                 : rng.log_uniform(lo, hi);
  if (t1 > t2) std::swap(t1, t2);
  if (t1 == t2) t2 = std::nextafter(t1, INFINITY);
  return {t1, t2};
}

// Point of R^n with log-uniform modulus.
Vec draw_point(SampleRng& rng, std::size_t n, double lo, double hi) {
  return scaled(rng.direction(n), rng.log_uniform(lo, hi));
}

struct OracleConfig {
  double K;
  int n;
};

constexpr std::array<OracleConfig, 8> kOracleConfigs{{
    {1.01, 2}, {1.1, 2}, {1.5, 2}, {2.0, 2},
    {1.01, 3}, {1.1, 3}, {1.5, 3}, {2.0, 3},
}};

// A stretch with exponent alpha or beta of K; `with_lambda` drops the one
// configuration where the default lambda = beta - 1 leaves (0, 1).
struct OracleDraw {
  OracleConfig config;
  DistortionParams params;
  RadialStretch map;
  bool conjugated;
};

OracleDraw draw_oracle(SampleRng& rng, bool with_lambda) {
  OracleConfig config{};
  do {
    config = kOracleConfigs[static_cast<std::size_t>(rng.uniform_int(0, 7))];
  } while (with_lambda && config.n == 2 && config.K == 2.0);
  const DistortionParams params = make_params(config.K, config.n);
  const double p = rng.bernoulli(0.5) ? params.alpha : params.beta;
  return {config, params, make_stretch(p, config.n), rng.bernoulli(0.5)};
}

Vec image(const OracleDraw& d, std::span<const double> x) {
  const ExtendedPoint fx = d.conjugated
                               ? apply_conjugated(d.map, ExtendedPoint::finite(Vec(x.begin(), x.end())))
                               : apply_stretch(d.map, ExtendedPoint::finite(Vec(x.begin(), x.end())));
  const auto c = fx.coords();
  return Vec(c.begin(), c.end());
}

// Two-sided f-range check in log form: log lo <= log f <= log hi.
void record_log_range(MarginSink& sink, double log_f, double log_lo,
                      double log_hi) {
  sink.record(margin_log_le(log_lo, log_f));
  sink.record(margin_log_le(log_f, log_hi));
}

std::vector<Suite> build_suites() {
  std::vector<Suite> suites;

  suites.push_back({"vesna", "quasisymmetry lemma with m at or above threshold",
                    [](SampleRng& rng, const SamplingPlan& plan, MarginSink& sink) {
                      const double a = rng.uniform_open(plan.a.lo, std::min(plan.a.hi, 1.0));
                      const double b = rng.uniform_open(std::max(plan.b.lo, 1.0), plan.b.hi);
                      const double threshold = vesna_threshold(a, b);
                      const double m = rng.bernoulli(0.2)
                                           ? threshold
                                           : threshold * rng.log_uniform(1.0, 100.0);
                      sink.record(vesna_check(a, b, m, draw_t(rng, plan)));
                    }});

  suites.push_back({"c3estimate", "two-branch estimate with c >= sqrt(beta)",
                    [](SampleRng& rng, const SamplingPlan& plan, MarginSink& sink) {
                      const double K = rng.uniform(1.0, 2.0);
                      const DistortionParams params = make_params(K, rng.uniform_int(2, 4));
                      const double floor_c = std::sqrt(params.beta);
                      const int pick = rng.uniform_int(0, 2);
                      const double c = pick == 0   ? floor_c
                                       : pick == 1 ? params.c3
                                                   : params.c3 * rng.log_uniform(1.0, 10.0);
                      sink.record(c3_check(params, draw_t(rng, plan), std::max(c, floor_c)));
                    }});

  suites.push_back({"genbernoulli.1", "f1 increasing with range (0, 1/a)",
                    [](SampleRng& rng, const SamplingPlan& plan, MarginSink& sink) {
                      const auto [a, b] = draw_exponents(rng, plan);
                      const auto [t1, t2] = draw_sorted_pair(rng, plan.t.lo, plan.t.hi);
                      const double l1 = log_bernoulli_f(1, a, b, t1);
                      const double l2 = log_bernoulli_f(1, a, b, t2);
                      sink.record(margin_log_le(l1, l2));
                      sink.record(margin_log_le(l2, -std::log(a)));
                    }});

  suites.push_back({"genbernoulli.2", "u <= f2 < 1 with minimum u at t = 1",
                    [](SampleRng& rng, const SamplingPlan& plan, MarginSink& sink) {
                      const auto [a, b] = draw_exponents(rng, plan);
                      const ExponentPair e = make_exponents(a, b);
                      const double lf = log_bernoulli_f(2, a, b, draw_t(rng, plan));
                      record_log_range(sink, lf, std::log(e.u), 0.0);
                      sink.record(margin_log_le(log_bernoulli_f(2, a, b, 1.0), lf));
                    }});

  suites.push_back({"genbernoulli.3", "f3 <= v with maximum v at t = 1",
                    [](SampleRng& rng, const SamplingPlan& plan, MarginSink& sink) {
                      const auto [a, b] = draw_exponents(rng, plan);
                      const ExponentPair e = make_exponents(a, b);
                      const double lf = log_bernoulli_f(3, a, b, draw_t(rng, plan));
                      sink.record(margin_log_le(lf, std::log(e.v)));
                      sink.record(margin_log_le(lf, log_bernoulli_f(3, a, b, 1.0)));
                    }});

  suites.push_back({"genbernoulli.4", "f4 increasing with range (0, b)",
                    [](SampleRng& rng, const SamplingPlan& plan, MarginSink& sink) {
                      const auto [a, b] = draw_exponents(rng, plan);
                      const auto [t1, t2] = draw_sorted_pair(rng, plan.t.lo, plan.t.hi);
                      const double l1 = log_bernoulli_f(4, a, b, t1);
                      const double l2 = log_bernoulli_f(4, a, b, t2);
                      sink.record(margin_log_le(l1, l2));
                      sink.record(margin_log_le(l2, std::log(b)));
                    }});

  suites.push_back({"genbernoulli.5", "u log(1+phi(t)) <= phi(log(1+t)) <= log(1+phi(t))/u on (0, e-1]",
                    [](SampleRng& rng, const SamplingPlan& plan, MarginSink& sink) {
                      const auto [a, b] = draw_exponents(rng, plan);
                      const double hi = std::min(plan.t.hi, std::numbers::e - 1.0);
                      const double t = rng.bernoulli(0.02) ? hi : rng.log_uniform(plan.t.lo, hi);
                      const TwoSidedMargin m = genbernoulli5(a, b, t);
                      sink.record(m.lower);
                      sink.record(m.upper);
                    }});

  suites.push_back({"genbernoulli.6", "two-sided estimate with c5 = max{1/u, v}",
                    [](SampleRng& rng, const SamplingPlan& plan, MarginSink& sink) {
                      const auto [a, b] = draw_exponents(rng, plan);
                      const Part6Margin m = genbernoulli6(a, b, draw_t(rng, plan));
                      sink.record(m.lower);
                      sink.record(m.upper);
                    }});

  suites.push_back({"genbernoulli.7", "log(1 + c phi(t)) against the two-branch right side",
                    [](SampleRng& rng, const SamplingPlan& plan, MarginSink& sink) {
                      const auto [a, b] = draw_exponents(rng, plan);
                      const double c = 1.0 + rng.log_uniform(1e-6, 100.0);
                      sink.record(genbernoulli7(a, b, c, draw_t(rng, plan)));
                    }});

  suites.push_back({"genbernoulli.8", "2^{1-b} <= (phi(s)+phi(t))/phi(s+t) <= 2^{1-a}",
                    [](SampleRng& rng, const SamplingPlan& plan, MarginSink& sink) {
                      const auto [a, b] = draw_exponents(rng, plan);
                      const double s = draw_t(rng, plan);
                      const double t = rng.bernoulli(0.05) ? s : draw_t(rng, plan);
                      const TwoSidedMargin m = genbernoulli8(a, b, s, t);
                      sink.record(m.lower);
                      sink.record(m.upper);
                    }});

  suites.push_back({"f5", "(b^t - a^t)/t decreasing for 0 < a < b < 1",
                    [](SampleRng& rng, const SamplingPlan& plan, MarginSink& sink) {
                      const double a = rng.uniform_open(0.0, 1.0);
                      const double b = rng.uniform_open(a, 1.0);
                      const auto [t1, t2] = draw_sorted_pair(rng, plan.t.lo, plan.t.hi);
                      sink.record(f5_f6_check(MonotoneFamily::f5, a, b, t1, t2));
                    }});

  suites.push_back({"f6", "t log((1+a/t)/(1-a/t)) decreasing on (a, inf)",
                    [](SampleRng& rng, const SamplingPlan& plan, MarginSink& sink) {
                      const double a = rng.log_uniform(plan.a.lo, plan.a.hi);
                      const auto [s1, s2] = draw_sorted_pair(rng, plan.t.lo, plan.t.hi);
                      const double t1 = a * (1.0 + s1);
                      const double t2 = a * (1.0 + s2);
                      if (!(t1 < t2)) return;
                      sink.record(f5_f6_check(MonotoneFamily::f6, a, 0.0, t1, t2));
                    }});

  suites.push_back({"metrics.triangle", "triangle inequality for q, j and k",
                    [](SampleRng& rng, const SamplingPlan&, MarginSink& sink) {
                      const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 3));
                      std::array<Vec, 3> p{draw_point(rng, n, 1e-3, 1e3),
                                           draw_point(rng, n, 1e-3, 1e3),
                                           draw_point(rng, n, 1e-3, 1e3)};
                      auto q = [&](int i, int j) {
                        return chordal(ExtendedPoint::finite(p[i]), ExtendedPoint::finite(p[j]));
                      };
                      auto jj = [&](int i, int j) { return j_punctured(p[i], p[j]); };
                      auto kk = [&](int i, int j) { return k_punctured(p[i], p[j]); };
                      sink.record(margin_le(q(0, 2), q(0, 1) + q(1, 2)));
                      sink.record(margin_le(jj(0, 2), jj(0, 1) + jj(1, 2)));
                      sink.record(margin_le(kk(0, 2), kk(0, 1) + kk(1, 2)));
                      // With infinity as the middle point.
                      const ExtendedPoint inf = ExtendedPoint::infinity();
                      const ExtendedPoint x = ExtendedPoint::finite(p[0]);
                      const ExtendedPoint z = ExtendedPoint::finite(p[2]);
                      sink.record(margin_le(chordal(x, z), chordal(x, inf) + chordal(inf, z)));
                    }});

  suites.push_back({"metrics.jk", "j <= k everywhere and k <= (1 + lambda) j near the diagonal",
                    [](SampleRng& rng, const SamplingPlan&, MarginSink& sink) {
                      const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 3));
                      const Vec x = draw_point(rng, n, 1e-3, 1e3);
                      const Vec y = draw_point(rng, n, 1e-3, 1e3);
                      sink.record(margin_le(j_punctured(x, y), k_punctured(x, y)));
                      constexpr std::array<double, 3> lambdas{0.1, 0.5, 0.9};
                      const double lambda = lambdas[static_cast<std::size_t>(rng.uniform_int(0, 2))];
                      const double reach = rng.bernoulli(0.1) ? 1.0 : rng.uniform(0.0, 1.0);
                      Vec near = x;
                      const Vec dir = rng.direction(n);
                      for (std::size_t i = 0; i < n; ++i) near[i] += lambda * norm(x) * reach * dir[i];
                      if (norm(near) == 0.0) return;
                      const JkSandwich s = jk_sandwich_check(x, near, lambda);
                      sink.record(s.lower_slack, s.k);
                      sink.record(s.upper_slack, std::max(s.k, (1.0 + lambda) * s.j));
                    }});

  suites.push_back({"metrics.subdivision", "geodesic subdivision is additive in k",
                    [](SampleRng& rng, const SamplingPlan&, MarginSink& sink) {
                      const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 3));
                      const Vec x = draw_point(rng, n, 1e-3, 1e3);
                      const Vec y = rng.bernoulli(0.05) ? scaled(x, -rng.log_uniform(0.1, 10.0))
                                                        : draw_point(rng, n, 1e-3, 1e3);
                      const double total = k_punctured(x, y);
                      const double step = total / rng.uniform(1.0, 40.0);
                      const auto pts = geodesic_subdivision(x, y, step);
                      double sum = 0.0;
                      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                        const double piece = k_punctured(pts[i], pts[i + 1]);
                        sink.record(margin_le(piece, step * (1.0 + 1e-9)));
                        sum += piece;
                      }
                      const double scale = std::max(1.0, total);
                      sink.record(1e-9 * scale - std::fabs(sum - total), scale);
                    }});

  suites.push_back({"oracle.qcestimate", "radial stretches inside the modulus bounds",
                    [](SampleRng& rng, const SamplingPlan&, MarginSink& sink) {
                      const OracleDraw d = draw_oracle(rng, false);
                      const Vec x = draw_point(rng, static_cast<std::size_t>(d.config.n), 1e-3, 1e3);
                      const double r = norm(x);
                      const double fr = norm(image(d, x));
                      const RadialBounds bounds = qc_radial_bounds(d.params, r);
                      sink.record(margin_le(bounds.lower, fr));
                      sink.record(margin_le(fr, bounds.upper));
                    }});

  suites.push_back({"oracle.main2", "j-distortion of radial stretches",
                    [](SampleRng& rng, const SamplingPlan&, MarginSink& sink) {
                      const OracleDraw d = draw_oracle(rng, false);
                      const auto n = static_cast<std::size_t>(d.config.n);
                      const Vec x = draw_point(rng, n, 1e-3, 1e3);
                      const Vec y = rng.bernoulli(0.3) ? scaled(x, rng.log_uniform(0.5, 2.0))
                                                       : draw_point(rng, n, 1e-3, 1e3);
                      const double after = j_punctured(image(d, x), image(d, y));
                      sink.record(margin_le(after, j_distortion_bound(d.config.K, d.config.n,
                                                                      j_punctured(x, y))));
                    }});

  suites.push_back({"oracle.main3", "k-distortion of radial stretches",
                    [](SampleRng& rng, const SamplingPlan&, MarginSink& sink) {
                      const OracleDraw d = draw_oracle(rng, true);
                      const auto n = static_cast<std::size_t>(d.config.n);
                      const Vec x = draw_point(rng, n, 1e-3, 1e3);
                      const Vec y = rng.bernoulli(0.3) ? scaled(x, rng.log_uniform(0.5, 2.0))
                                                       : draw_point(rng, n, 1e-3, 1e3);
                      const MetricDistortion md = oracle_metric_distortion(d.map, x, y);
                      const double bound = k_distortion_bound(d.config.K, d.config.n, md.k_before);
                      sink.record(margin_le(md.k_after, bound));
                      sink.record(margin_le(k_punctured(image(d, x), image(d, y)), bound));
                    }});

  suites.push_back({"oracle.angle", "angles at the origin under radial stretches",
                    [](SampleRng& rng, const SamplingPlan&, MarginSink& sink) {
                      const OracleDraw d = draw_oracle(rng, true);
                      const double phi = rng.uniform_open(0.0, pi);
                      const auto n = static_cast<std::size_t>(d.config.n);
                      Vec x(n, 0.0);
                      Vec y(n, 0.0);
                      const double rx = rng.log_uniform(1e-3, 1e3);
                      const double ry = rng.log_uniform(1e-3, 1e3);
                      x[0] = rx;
                      y[0] = ry * std::cos(phi);
                      y[1] = ry * std::sin(phi);
                      const double psi = angle_at_origin(image(d, x), image(d, y));
                      sink.record(margin_le(psi, angle_bound(d.config.K, d.config.n, phi)));
                    }});

  suites.push_back({"envelope.soundness", "oracle images inside both shells and the main bounds",
                    [](SampleRng& rng, const SamplingPlan&, MarginSink& sink) {
                      const Vec x = scaled(rng.direction(3), rng.uniform_open(0.0, 2.0));
                      const double sup = epsilon_sup(x);
                      const double eps = sup * rng.log_uniform(1e-8, 1.0 - 1e-9);
                      const double k_max = k_threshold(eps);
                      const double K = rng.bernoulli(0.2) ? k_max
                                                          : 1.0 + (k_max - 1.0) * rng.uniform(0.0, 1.0);
                      const DistortionParams params = make_params(K, 3);
                      OracleDraw d{{K, 3}, params,
                                   make_stretch(rng.bernoulli(0.5) ? params.alpha : params.beta, 3),
                                   rng.bernoulli(0.5)};
                      const Vec fx = image(d, x);
                      const EnvelopeSet shells = set_a(x, eps);
                      for (const RingShell* s : {&shells.origin_shell, &shells.unit_shell}) {
                        const double mid = 0.5 * (s->inner + s->outer);
                        const double d_image = distance(fx, s->center);
                        sink.record(margin_le(std::fabs(d_image - mid), eps));
                      }
                      if (K > 1.0) {
                        const Main1Bounds b = main1_bounds(x, 2.0, eps, K);
                        const Vec pfx = meridian_projection(fx);
                        const Vec px = meridian_projection(x);
                        sink.record(margin_le(distance(pfx, px), b.euclidean));
                        sink.record(margin_le(chordal(ExtendedPoint::finite(pfx),
                                                      ExtendedPoint::finite(px)),
                                              b.chordal));
                      }
                    }});

  suites.push_back({"envelope.diameter", "brute-force diameter below the closed-form bound",
                    [](SampleRng& rng, const SamplingPlan&, MarginSink& sink) {
                      const double angle = rng.uniform_open(0.0, pi);
                      const double r = rng.log_uniform(1e-2, 1e2);
                      const Vec x{r * std::cos(angle), r * std::sin(angle)};
                      const double eps = epsilon_sup(x) * rng.uniform_open(0.0, 1.0);
                      sink.record(margin_le(diam_a_bruteforce(x, eps), diam_a_upper(x, eps)));
                    },
                    1000});

  suites.push_back({"envelope.heron", "collinear intersection height against the exact circles",
                    [](SampleRng& rng, const SamplingPlan&, MarginSink& sink) {
                      const double r = rng.log_uniform(1e-2, 1e2);
                      const double eps = rng.uniform(0.005, 0.995);
                      const double r0 = r + eps;
                      const double r1 = r + 1.0 - eps;
                      const double foot = 0.5 * (r0 * r0 - r1 * r1 + 1.0);
                      const double exact = std::sqrt((r0 - foot) * (r0 + foot));
                      const double h = heron_im_y(r, eps);
                      const double scale = std::max(1.0, exact);
                      sink.record(1e-8 * scale - std::fabs(h - exact), scale);
                      sink.record(margin_le(h, 2.0 * std::sqrt(eps) * (r + 1.0)));
                    }});

  Suite probe{"probe.vesna_below_threshold",
              "quasisymmetry lemma with m = 0.5 below threshold (expected to fail)",
              [](SampleRng& rng, const SamplingPlan&, MarginSink& sink) {
                sink.record(vesna_check(0.5, 2.0, 0.5, rng.uniform(0.05, 1.0), false));
              }};
  probe.in_default_set = false;
  suites.push_back(std::move(probe));

  std::sort(suites.begin(), suites.end(),
            [](const Suite& l, const Suite& r) { return l.name < r.name; });
  return suites;
}

}  // namespace

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = build_suites();
  return suites;
}

const Suite* find_suite(std::string_view name) {
  for (const Suite& s : all_suites()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<std::string> default_suite_names() {
  std::vector<std::string> names;
  for (const Suite& s : all_suites()) {
    if (s.in_default_set) names.push_back(s.name);
  }
  return names;
}

}  // namespace qcdl
