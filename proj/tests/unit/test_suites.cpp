#include <doctest.h>

#include <algorithm>

#include "qcdl/suites.hpp"
#include "test_support.hpp"

using namespace qcdl;

TEST_CASE("registry") {
  const auto& suites = all_suites();
  REQUIRE(suites.size() > 10);
  CHECK(std::is_sorted(suites.begin(), suites.end(),
                       [](const Suite& a, const Suite& b) { return a.name < b.name; }));
  const auto names = default_suite_names();
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(std::find(names.begin(), names.end(), "probe.vesna_below_threshold") == names.end());
  CHECK(std::find(names.begin(), names.end(), "genbernoulli.8") != names.end());
  CHECK(find_suite("vesna") != nullptr);
  CHECK(find_suite("nosuch") == nullptr);
  for (const auto& s : suites) CHECK(!s.description.empty());
}

TEST_CASE("every suite runs deterministically") {
  for (const auto& s : all_suites()) {
    CAPTURE(s.name);
    const auto plan = test::small_plan(50);
    const CheckReport a = run_suite(s, plan);
    const CheckReport b = run_suite(s, plan);
    CHECK(a.samples == b.samples);
    CHECK(a.violations == b.violations);
    CHECK(a.worst_margin == b.worst_margin);
  }
}

TEST_CASE("counterexample probe finds violations") {
  const auto r = run_suite(*find_suite("probe.vesna_below_threshold"), test::small_plan(1000));
  CHECK(r.violations > 0);
  CHECK(r.worst_margin < 0.0);
}

TEST_CASE("suites that hold stay clean") {
  for (const char* name : {"vesna", "c3estimate", "genbernoulli.7", "genbernoulli.8", "f5", "f6",
                           "metrics.triangle", "metrics.jk", "oracle.main2", "envelope.heron"}) {
    CAPTURE(name);
    const Suite* s = find_suite(name);
    REQUIRE(s != nullptr);
    CHECK(run_suite(*s, test::small_plan(2000)).violations == 0);
  }
}
