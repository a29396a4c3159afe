#pragma once

#include <string>

namespace fractalab {

/// Shortest round-trip decimal form of x ("nan", "inf", "-inf" otherwise).
std::string format_number(double x);

}  // namespace fractalab
