#include "qcdl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "qcdl/distortion_envelope.hpp"
#include "qcdl/errors.hpp"
#include "qcdl/metrics.hpp"
#include "qcdl/oracle_maps.hpp"
#include "qcdl/special_functions.hpp"
#include "qcdl/suites.hpp"

namespace qcdl::cli {
namespace {

using nlohmann::ordered_json;

struct RunConfig {
  double K = std::numeric_limits<double>::quiet_NaN();
  int n = 3;
  std::optional<std::string> seed_text;
  std::size_t samples = 100000;
  double tolerance = 1e-12;
  std::string format = "json";
  std::string out_path;
  bool timing = false;
  unsigned threads = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t parse_seed(const std::string& text, const char* source) {
  std::size_t used = 0;
  std::uint64_t seed = 0;
  try {
    seed = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw UsageError(std::string(source) + " is not a 64-bit integer: '" +
                     text + "'");
  }
  return seed;
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed_text) return parse_seed(*cfg.seed_text, "--seed");
  if (const char* env = std::getenv("QCDL_SEED"); env && *env) {
    return parse_seed(env, "QCDL_SEED");
  }
  return 0x5EED;
}

double require_k(const RunConfig& cfg) {
  if (std::isnan(cfg.K)) throw UsageError("--K is required");
  return cfg.K;
}

// Writes to --out when given, otherwise to `out`.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& out) : out_(&out) {
    if (!cfg.out_path.empty()) {
      file_.open(cfg.out_path);
      if (!file_) throw UsageError("cannot open --out file '" + cfg.out_path + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--K", cfg.K, "Maximal dilatation K");
  sub->add_option("--n", cfg.n, "Dimension n (default 3)")->check(CLI::Range(2, 64));
  sub->add_option("--seed", cfg.seed_text, "64-bit seed (default 0x5EED or $QCDL_SEED)");
  sub->add_option("--samples", cfg.samples, "Samples per suite (default 100000)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--tolerance", cfg.tolerance, "Relative tolerance (default 1e-12)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", cfg.out_path, "Output file (default stdout)");
  sub->add_flag("--timing", cfg.timing, "Include elapsed seconds in reports");
  sub->add_option("--threads", cfg.threads, "Worker threads (default: all cores)");
}

// ---- sf -----------------------------------------------------------------

int cmd_sf(const std::string& name, const std::vector<double>& a,
           const RunConfig& cfg, std::ostream& out) {
  auto need = [&](std::size_t count, const char* usage) {
    if (a.size() != count) throw UsageError(std::string("usage: sf ") + usage);
  };
  double value = 0.0;
  if (name == "K") {
    need(1, "K <r>");
    value = complete_elliptic_k(a[0]);
  } else if (name == "mu") {
    need(1, "mu <r>");
    value = mu(a[0]);
  } else if (name == "mu_inv") {
    need(1, "mu_inv <y>");
    value = mu_inverse(a[0]);
  } else if (name == "gamma2") {
    need(1, "gamma2 <s>");
    value = gamma2(a[0]);
  } else if (name == "phi_K2") {
    need(2, "phi_K2 <K> <r>");
    value = phi_k2(a[0], a[1]);
  } else if (name == "eta_star_upper") {
    need(2, "eta_star_upper <K> <t>");
    value = eta_star_upper(make_params(a[0], cfg.n), a[1]);
  } else {
    throw UsageError("unknown function '" + name +
                     "'; expected K, mu, mu_inv, gamma2, phi_K2 or eta_star_upper");
  }
  out << fmt17(value) << '\n';
  return kPass;
}

// ---- metric -------------------------------------------------------------

int cmd_metric(const std::string& name, const std::vector<double>& x,
               const std::vector<double>& y, std::ostream& out) {
  double value = 0.0;
  if (name == "q") {
    value = chordal(ExtendedPoint::finite(x), ExtendedPoint::finite(y));
  } else if (name == "j") {
    value = j_punctured(x, y);
  } else if (name == "k") {
    value = k_punctured(x, y);
  } else if (name == "j_half_space") {
    value = j_half_space(x, y);
  } else {
    throw UsageError("unknown metric '" + name + "'; expected q, j, k or j_half_space");
  }
  out << fmt17(value) << '\n';
  return kPass;
}

// ---- bounds -------------------------------------------------------------

template <class F>
ordered_json value_or_error(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return ordered_json{{"error", e.what()}};
  }
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  const double K = require_k(cfg);
  const DistortionParams p = make_params(K, cfg.n);
  if (!(K > 1.0 && K <= 2.0)) {
    throw DomainError("bounds needs K in (1, 2], got K = " + fmt17(K));
  }
  ordered_json doc;
  doc["K"] = K;
  doc["n"] = cfg.n;
  doc["alpha"] = p.alpha;
  doc["beta"] = p.beta;
  doc["c3"] = p.c3;
  doc["c_main2"] = c_main2(K, cfg.n);
  doc["omega_main3"] = value_or_error([&] { return ordered_json(omega_main3(K, cfg.n)); });
  doc["c_lower_bound"] = c_lower_bound(K, cfg.n);
  doc["chordal_A_bound"] = chordal_a_bound(K);
  doc["epsilon_from_K"] = epsilon_from_k(K);
  out << doc.dump(2) << '\n';
  return kPass;
}

// ---- envelope -----------------------------------------------------------

ordered_json shell_json(const RingShell& s) {
  return ordered_json{{"center", s.center}, {"inner", s.inner}, {"outer", s.outer}};
}

int cmd_envelope(const std::vector<double>& x, std::size_t resolution,
                 const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double K = require_k(cfg);
  const double sup = epsilon_sup(x);
  if (!(K > 1.0 && K <= 2.0)) {
    throw KTooLarge("envelope needs K in (1, 2], got K = " + fmt17(K));
  }
  const double eps = epsilon_from_k(K);
  if (!(eps < sup)) {
    throw KTooLarge("K = " + fmt17(K) + " gives epsilon = " + fmt17(eps) +
                    ", not below epsilon_sup(x) = " + fmt17(sup) +
                    "; need K < " + fmt17(k_threshold(sup)));
  }
  const EnvelopeBound bound = envelope_bound(x, eps);
  const auto boundary = cross_section_boundary(x, eps, resolution);

  ordered_json summary;
  summary["x"] = x;
  summary["K"] = K;
  summary["epsilon"] = eps;
  summary["epsilon_sup"] = sup;
  summary["diam_bound"] = bound.diam_bound;
  summary["chordal_bound"] = bound.chordal_bound;
  summary["shells"] = {shell_json(bound.shells[0]), shell_json(bound.shells[1])};
  summary["boundary_points"] = boundary.size();
  summary["symmetry"] = "solid of revolution about the e1-axis; rotate (x1, x2) to plot";

  Sink sink(cfg, out);
  if (cfg.format == "csv") {
    std::ostream& s = sink.stream();
    s << "x1,x2,arc_id\n";
    for (const auto& p : boundary) s << fmt17(p.x1) << ',' << fmt17(p.x2) << ',' << p.arc_id << '\n';
    (cfg.out_path.empty() ? err : out) << summary.dump(2) << '\n';
  } else {
    ordered_json pts = ordered_json::array();
    for (const auto& p : boundary) pts.push_back({p.x1, p.x2, p.arc_id});
    summary["boundary"] = std::move(pts);
    sink.stream() << summary.dump() << '\n';
  }
  return kPass;
}

// ---- oracle -------------------------------------------------------------

int cmd_oracle(const std::string& which, const std::vector<double>& x,
               const std::vector<double>& y, const RunConfig& cfg,
               std::ostream& out) {
  const double K = require_k(cfg);
  if (!(K > 1.0 && K <= 2.0)) {
    throw DomainError("oracle needs K in (1, 2], got K = " + fmt17(K));
  }
  const DistortionParams params = make_params(K, cfg.n);
  const RadialStretch map =
      make_stretch(which == "alpha" ? params.alpha : params.beta, cfg.n);
  const MetricDistortion md = oracle_metric_distortion(map, x, y);
  const double j_bound = j_distortion_bound(K, cfg.n, md.j_before);

  ordered_json doc;
  doc["K"] = K;
  doc["n"] = cfg.n;
  doc["exponent"] = map.exponent;
  doc["dilatation"] = stretch_dilatation(map.exponent, cfg.n);
  doc["f_x"] = apply_stretch(map, x);
  doc["f_y"] = apply_stretch(map, y);
  doc["k_before"] = md.k_before;
  doc["k_after"] = md.k_after;
  doc["j_before"] = md.j_before;
  doc["j_after"] = md.j_after;
  doc["j_bound"] = j_bound;
  bool holds = md.j_after <= j_bound;
  try {
    const double k_bound = k_distortion_bound(K, cfg.n, md.k_before);
    doc["k_bound"] = k_bound;
    holds = holds && md.k_after <= k_bound;
  } catch (const LambdaOutOfRange& e) {
    doc["k_bound"] = nullptr;
    doc["k_bound_note"] = e.what();
  }
  doc["holds"] = holds;
  Sink(cfg, out).stream() << doc.dump(2) << '\n';
  return holds ? kPass : kViolation;
}

// ---- verify -------------------------------------------------------------

ordered_json report_json(const CheckReport& r, bool timing) {
  ordered_json j;
  j["suite"] = r.suite_name;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["violations"] = r.violations;
  j["worst_margin"] = r.worst_margin;
  j["tolerance"] = r.tolerance;
  if (timing) j["elapsed"] = r.elapsed;
  return j;
}

int cmd_verify(const std::vector<std::string>& requested, const RunConfig& cfg,
               std::ostream& out) {
  std::vector<std::string> names;
  for (const auto& name : requested) {
    if (name == "all") {
      const auto defaults = default_suite_names();
      names.insert(names.end(), defaults.begin(), defaults.end());
    } else if (find_suite(name) == nullptr) {
      std::string known;
      for (const auto& s : all_suites()) known += (known.empty() ? "" : ", ") + s.name;
      throw UsageError("unknown suite '" + name + "'; known suites: all, " + known);
    } else {
      names.push_back(name);
    }
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  SamplingPlan plan;
  plan.seed = resolve_seed(cfg);
  plan.samples = cfg.samples;
  plan.tolerance.relative = cfg.tolerance;
  plan.threads = cfg.threads;

  Sink sink(cfg, out);
  std::ostream& s = sink.stream();
  if (cfg.format == "csv") {
    s << "suite,seed,samples,violations,worst_margin,tolerance" << (cfg.timing ? ",elapsed" : "")
      << '\n';
  }
  bool any_violation = false;
  for (const auto& name : names) {
    const CheckReport r = run_suite(*find_suite(name), plan);
    any_violation = any_violation || r.violations > 0;
    if (cfg.format == "csv") {
      s << r.suite_name << ',' << r.seed << ',' << r.samples << ',' << r.violations << ','
        << fmt17(r.worst_margin) << ',' << fmt17(r.tolerance);
      if (cfg.timing) s << ',' << fmt17(r.elapsed);
      s << '\n';
    } else {
      s << report_json(r, cfg.timing).dump() << '\n';
    }
    s.flush();
  }
  return any_violation ? kViolation : kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"qcdl: quasiconformal distortion lab"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string sf_name;
  std::vector<double> sf_args;
  auto* sf = app.add_subcommand("sf", "Evaluate a special function");
  sf->add_option("name", sf_name, "K, mu, mu_inv, gamma2, phi_K2 or eta_star_upper")->required();
  sf->add_option("args", sf_args, "Arguments");
  add_common(sf, cfg);

  std::string metric_name;
  std::vector<double> px;
  std::vector<double> py;
  auto* metric = app.add_subcommand("metric", "Distance between two points");
  metric->add_option("name", metric_name, "q, j, k or j_half_space")->required();
  metric->add_option("--x", px, "First point, comma separated")->delimiter(',')->required();
  metric->add_option("--y", py, "Second point, comma separated")->delimiter(',')->required();
  add_common(metric, cfg);

  auto* bounds = app.add_subcommand("bounds", "Distortion constants for K and n");
  add_common(bounds, cfg);

  std::size_t resolution = 200;
  auto* envelope = app.add_subcommand("envelope", "Cross-section of the envelope set");
  envelope->add_option("--x", px, "Point x, comma separated")->delimiter(',')->required();
  envelope->add_option("--resolution", resolution, "Samples per boundary arc")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  add_common(envelope, cfg);

  std::string exponent = "beta";
  auto* oracle = app.add_subcommand("oracle", "Radial-stretch oracle for a pair of points");
  oracle->add_option("--x", px, "First point, comma separated")->delimiter(',')->required();
  oracle->add_option("--y", py, "Second point, comma separated")->delimiter(',')->required();
  oracle->add_option("--exponent", exponent, "alpha (contraction) or beta (expansion)")
      ->check(CLI::IsMember({"alpha", "beta"}));
  add_common(oracle, cfg);

  std::vector<std::string> suites;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("suites", suites, "Suite names or 'all'")->required();
  add_common(verify, cfg);

  auto* list = app.add_subcommand("list", "List verification suites");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (sf->parsed()) return cmd_sf(sf_name, sf_args, cfg, out);
    if (metric->parsed()) return cmd_metric(metric_name, px, py, out);
    if (bounds->parsed()) return cmd_bounds(cfg, out);
    if (envelope->parsed()) return cmd_envelope(px, resolution, cfg, out, err);
    if (oracle->parsed()) return cmd_oracle(exponent, px, py, cfg, out);
    if (verify->parsed()) return cmd_verify(suites, cfg, out);
    if (list->parsed()) {
      for (const auto& s : all_suites()) {
        out << s.name << (s.in_default_set ? "" : " (probe)") << "  " << s.description << '\n';
      }
      return kPass;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace qcdl::cli
