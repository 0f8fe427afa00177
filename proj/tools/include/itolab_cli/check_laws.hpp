#pragma once

// Exhaustive law suites over generated instances, as driven by `itolab check-laws`.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "itolab/scalar.hpp"
#include "itolab/serialize.hpp"
#include "itolab/simulate.hpp"

namespace itolab::cli {

struct CheckConfig {
  ScalarMode mode = ScalarMode::kRational;
  std::uint64_t seed = 42;
  /// Instances per grid size (and per h for h-dependent laws).
  std::size_t instances = 100;
  std::vector<std::size_t> intervals{4, 16, 64};
  std::vector<std::string> h{"0", "1/3", "1/2", "2/3", "1"};
  /// Empty selects every law.
  std::vector<std::string> laws;
  /// Numerator/denominator bound of rational inputs.
  long bound = 8;
  /// Test fixture: "succ-backward" replaces X > Y by the backward sum.
  std::string fault;
  /// Float-mode input generator; zero_start is always forced on.
  GeneratorSpec generator;
};

/// Reads the keys of CheckConfig (plus "generator" as a generator spec) on top
/// of the defaults. Unknown keys and malformed values throw parse-error.
CheckConfig check_config_from_json(const Json& j);

/// Validates the law names, the h values and the sizes. Throws itolab::Error.
void validate(const CheckConfig& config);

const std::vector<std::string>& check_law_names();

struct LawOutcome {
  std::string law;
  bool passed = true;
  std::size_t checked = 0;
  Json report;
};

struct CheckOutcome {
  std::vector<LawOutcome> laws;
  bool passed = true;
  Json summary;
};

CheckOutcome run_check_laws(const CheckConfig& config);

}  // namespace itolab::cli
