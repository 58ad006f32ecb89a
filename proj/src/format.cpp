#include "seiswait/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace seiswait {

std::string format_sig(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

double round_sig(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) {
    return value;
  }
  return std::strtod(format_sig(value, digits).c_str(), nullptr);
}

}  // namespace seiswait
