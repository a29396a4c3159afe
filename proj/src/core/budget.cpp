#include "fractalab/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace fractalab {

std::uint64_t default_word_budget() {
    if (const char* env = std::getenv("FRACTALAB_BUDGET")) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
        if (ec == std::errc{} && *ptr == '\0' && v > 0) return v;
    }
    return kDefaultWordBudget;
}

std::uint64_t word_count(int m, int k) {
    std::uint64_t n = 1;
    for (int i = 0; i < k; ++i) {
        if (n > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(m))
            return std::numeric_limits<std::uint64_t>::max();
        n *= static_cast<std::uint64_t>(m);
    }
    return n;
}

int max_depth_within(int m, std::uint64_t budget) {
    int k = 0;
    while (word_count(m, k + 1) <= budget) ++k;
    return k;
}

}  // namespace fractalab
