#pragma once

#include <string>

#include "seiswait/inference.hpp"

namespace seiswait {

// Standalone SVG: lower and upper band curves plus the point-estimate curve
// 1 - exp(-m_hat h), on h in [0, grid.back()] and probability in [0, 1].
[[nodiscard]] std::string render_band_svg(const BandCurve& bands, double m_hat,
                                          const std::string& title);

}  // namespace seiswait
