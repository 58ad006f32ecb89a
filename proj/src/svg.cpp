#include "seiswait/svg.hpp"

#include <sstream>
#include <stdexcept>

#include "seiswait/format.hpp"

namespace seiswait {

namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

struct Frame {
  double h_max;
  [[nodiscard]] double x(double h) const { return kLeft + (kWidth - kLeft - kRight) * h / h_max; }
  [[nodiscard]] double y(double p) const { return kTop + (kHeight - kTop - kBottom) * (1.0 - p); }
};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void polyline(std::ostringstream& svg, const Frame& f, const std::vector<double>& grid,
              const std::vector<double>& values, const char* stroke, const char* dash) {
  svg << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\"";
  if (dash != nullptr) {
    svg << " stroke-dasharray=\"" << dash << "\"";
  }
  svg << " points=\"";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    svg << (i ? " " : "") << format_sig(f.x(grid[i]), 6) << ',' << format_sig(f.y(values[i]), 6);
  }
  svg << "\"/>\n";
}

}  // namespace

std::string render_band_svg(const BandCurve& bands, double m_hat, const std::string& title) {
  if (bands.grid.size() < 2 || !(bands.grid.back() > 0.0)) {
    throw std::domain_error("band figure needs at least two grid points on h > 0");
  }
  const Frame f{bands.grid.back()};
  std::vector<double> estimate;
  estimate.reserve(bands.grid.size());
  for (double h : bands.grid) {
    estimate.push_back(random_cdf(m_hat, h));
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << escape(title) << "</text>\n";

  // axes and ticks
  svg << "  <g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "    <line x1=\"" << f.x(0) << "\" y1=\"" << f.y(0) << "\" x2=\"" << f.x(f.h_max)
      << "\" y2=\"" << f.y(0) << "\"/>\n";
  svg << "    <line x1=\"" << f.x(0) << "\" y1=\"" << f.y(0) << "\" x2=\"" << f.x(0)
      << "\" y2=\"" << f.y(1) << "\"/>\n";
  svg << "  </g>\n";
  svg << "  <g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double p = i / 5.0;
    svg << "    <text x=\"" << f.x(0) - 6 << "\" y=\"" << format_sig(f.y(p) + 4, 6)
        << "\" text-anchor=\"end\">" << format_sig(p, 2) << "</text>\n";
    const double h = f.h_max * i / 5.0;
    svg << "    <text x=\"" << format_sig(f.x(h), 6) << "\" y=\"" << f.y(0) + 16
        << "\" text-anchor=\"middle\">" << format_sig(h, 4) << "</text>\n";
  }
  svg << "    <text x=\"" << (f.x(0) + f.x(f.h_max)) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">h</text>\n";
  svg << "  </g>\n";

  polyline(svg, f, bands.grid, bands.lower, "#1f77b4", "6,4");
  polyline(svg, f, bands.grid, bands.upper, "#d62728", "6,4");
  polyline(svg, f, bands.grid, estimate, "black", nullptr);
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace seiswait
