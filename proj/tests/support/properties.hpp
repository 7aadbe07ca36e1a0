#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "factpow/comparator.hpp"

namespace factpow::testing {

struct PropertyOutcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// Cases the property does not apply to (e.g. AmbiguousSign at every rung).
  std::size_t skipped = 0;
  std::vector<std::string> details;

  bool ok() const noexcept { return cases > 0 && failures == 0; }
  void fail(std::string what);
  std::string summary() const;
};

/// Random pairs from SampleGenerator: comparator verdict against the
/// generator's values, plus antisymmetry and the no-Equal-by-logs rule.
PropertyOutcome check_comparator_against_oracle(std::size_t pairs, std::uint64_t seed, const ComparePolicy& policy);

/// Every (k, n) in [1, range]^2 of the four equations whose sides fit in
/// max_bits, compared against oracle_eval.
PropertyOutcome check_equation_instances(std::uint64_t range, const ComparePolicy& policy,
                                         std::uint64_t max_bits = 100'000);

/// Both sides of the same random pairs: bound_expr at each rung must enclose
/// the true log2 with the right sign, and widths must not grow along the
/// ladder.
PropertyOutcome check_interval_soundness(std::size_t pairs, std::uint64_t seed,
                                         const std::vector<std::uint32_t>& ladder);

}  // namespace factpow::testing
