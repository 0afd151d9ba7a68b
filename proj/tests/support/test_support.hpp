#pragma once

#include <algorithm>
#include <cmath>

#include "qcdl/sampling.hpp"

namespace qcdl::test {

inline double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

inline SamplingPlan small_plan(std::size_t samples) {
  SamplingPlan plan;
  plan.samples = samples;
  plan.threads = 1;
  return plan;
}

}  // namespace qcdl::test
