#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fractalab/content.hpp"

namespace fractalab::detail {

/// Integer cell coordinates; unused axes stay 0.
using Cell = std::array<std::int64_t, 3>;

Cell cell_of(std::span<const double> p, const Vec& origin, double floor);

/// Bottom-up dyadic merge of occupied floor cells, then the single cube of
/// side set_diameter around bbox_center if that is cheaper.
ContentEstimate content_from_cells(std::vector<Cell> cells, int dim, const Vec& origin, double floor, double s,
                                   const Vec& bbox_center, double set_diameter);

}  // namespace fractalab::detail
