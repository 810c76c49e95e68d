#include "cli/range.hpp"

#include <cmath>
#include <cstdlib>

#include "aoi/error.hpp"

namespace aoi::cli {

namespace {

double parse_number(const std::string& s, const std::string& whole) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw ValidationError("bad range '" + whole + "'");
  return v;
}

double snap(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) return {parse_number(text, text)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
    throw ValidationError("range must look like start:step:end, got '" + text + "'");
  const double start = parse_number(text.substr(0, c1), text);
  const double step = parse_number(text.substr(c1 + 1, c2 - c1 - 1), text);
  const double end = parse_number(text.substr(c2 + 1), text);
  if (!(step > 0.0)) throw ValidationError("range step must be positive in '" + text + "'");
  if (end < start - 1e-12) throw ValidationError("empty range '" + text + "'");
  std::vector<double> values;
  for (long i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > end + 1e-12) break;
    values.push_back(snap(v));
  }
  return values;
}

}  // namespace aoi::cli
