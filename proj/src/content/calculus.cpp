#include <cmath>

#include "fractalab/content.hpp"
#include "fractalab/text.hpp"

namespace fractalab {

namespace {

double power_sum(const std::vector<double>& d, double s) {
    double sum = 0.0;
    for (double x : d) sum += std::pow(x, s);
    return sum;
}

}  // namespace

CalculusReport content_calculus_check(std::span<const CoverCase> cases, std::span<const double> s_grid,
                                      std::span<const double> deltas) {
    CalculusReport rep;
    auto fail = [&](std::size_t i, const std::string& what) {
        rep.failures.push_back("cover " + std::to_string(i) + ": " + what);
    };
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const CoverCase& c = cases[i];
        bool small = true;
        for (double x : c.diameters) small = small && x <= 1.0;

        if (small) {
            double prev = std::numeric_limits<double>::infinity();
            for (double s : s_grid) {
                const double v = power_sum(c.diameters, s);
                ++rep.checks;
                if (v > prev) fail(i, "sum |L|^s increases at s = " + format_number(s));
                prev = v;
            }
        }

        ++rep.checks;
        const double cap = std::min(std::pow(c.set_diameter, c.s), c.plain_value);
        if (c.value > cap + 1e-12) fail(i, "value " + format_number(c.value) + " exceeds " + format_number(cap));

        if (small) {
            for (double s : s_grid) {
                for (double delta : deltas) {
                    ++rep.checks;
                    const double lhs = power_sum(c.diameters, s / delta);
                    const double rhs = std::pow(power_sum(c.diameters, s), 1.0 / delta);
                    // One-term covers are the equality case; allow for rounding there.
                    if (delta == 1.0 ? lhs != rhs : lhs < rhs * (1.0 - 1e-14))
                        fail(i, "x^(1/delta) subadditivity fails at s = " + format_number(s) + ", delta = " + format_number(delta));
                }
            }
        }
    }
    return rep;
}

}  // namespace fractalab
