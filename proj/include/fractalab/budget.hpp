#pragma once

#include <cstdint>

namespace fractalab {

inline constexpr std::uint64_t kDefaultWordBudget = 10'000'000;

/// Word-enumeration cap: FRACTALAB_BUDGET if set to a positive integer,
/// otherwise kDefaultWordBudget.
std::uint64_t default_word_budget();

/// m^k, saturating at UINT64_MAX.
std::uint64_t word_count(int m, int k);

/// Largest k with m^k <= budget.
int max_depth_within(int m, std::uint64_t budget);

}  // namespace fractalab
