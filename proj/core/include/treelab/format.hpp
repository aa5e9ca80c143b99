#pragma once

#include <string>

namespace treelab {

/// Shortest "%.17g"-style text that round-trips the double exactly.
std::string format_number(double value);

/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

}  // namespace treelab
