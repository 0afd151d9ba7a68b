#pragma once

// Registry of the named verification suites run by `qcdl verify`.

#include <string>
#include <string_view>
#include <vector>

#include "qcdl/sampling.hpp"

namespace qcdl {

/// Every registered suite, sorted by name.
const std::vector<Suite>& all_suites();

/// nullptr when no suite has this name.
const Suite* find_suite(std::string_view name);

/// Names run by `verify all` (probes excluded), sorted.
std::vector<std::string> default_suite_names();

}  // namespace qcdl
