#pragma once

#include <string>

namespace seiswait {

// Shortest %g rendering with `digits` significant digits.
[[nodiscard]] std::string format_sig(double value, int digits = 12);

// Value rounded to `digits` significant digits, for JSON output.
[[nodiscard]] double round_sig(double value, int digits = 12);

}  // namespace seiswait
