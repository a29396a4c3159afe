#include <algorithm>

#include "fractalab/errors.hpp"
#include "fractalab/targets.hpp"
#include "fractalab/thermo.hpp"

namespace fractalab {

SeriesBound series_upper_bound(const IfsSystem& system, double delta, double epsilon, std::uint64_t word_budget) {
    if (!(delta > 0.0)) throw InvalidArgumentError("series_upper_bound: delta must be positive");
    if (!(epsilon > 0.0)) throw InvalidArgumentError("series_upper_bound: epsilon must be positive");
    DimensionOptions dopts;
    dopts.word_budget = word_budget;
    const DimensionResult dim = conformality_dimension(system, 1e-10, dopts);

    SeriesBound out;
    out.delta = delta;
    out.dim = dim.value;
    out.value = dim.value / delta;
    out.epsilon = epsilon;

    // The series over cut-sets with exponent delta*s behaves like sum_k e^{k P(delta s)}.
    const int kmax = std::max(2, dim.depth);
    const PressureOptions popts{word_budget, false};
    const PressureEstimate above = pressure(system, dim.value + epsilon, kmax, popts);
    const PressureEstimate below = pressure(system, std::max(0.0, dim.value - epsilon), kmax, popts);
    out.pressure_above_hi = above.hi;
    out.pressure_below_lo = below.lo;
    if (!(above.hi < 0.0) || !(below.lo > 0.0))
        throw InconclusiveError("series_upper_bound: pressure sign not certified at dim +/- epsilon", above.gk);
    return out;
}

}  // namespace fractalab
