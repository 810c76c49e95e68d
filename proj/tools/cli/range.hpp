#pragma once

#include <string>
#include <vector>

namespace aoi::cli {

/// "start:step:end" (end inclusive within 1e-12) or a single number.
/// Values are snapped to 12 decimals so 0.9 + 4 * 0.01 reads as 0.94.
/// Throws ValidationError for empty or malformed ranges.
std::vector<double> parse_range(const std::string& text);

}  // namespace aoi::cli
