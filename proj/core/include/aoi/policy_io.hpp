#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aoi/policy.hpp"

namespace aoi {

/// Tabular policy file: one matrix row per line (row k is y = k, column j
/// is x = j), entries "1" or "2" separated by single spaces. Lines starting
/// with '#' are comments; the first non-comment line may be "N <size>".
struct PolicyFile {
  std::vector<std::string> comments;  ///< without the leading '#'
  DecisionMatrix matrix;
};

/// Throws ValidationError on malformed content.
PolicyFile read_policy(std::istream& in);
PolicyFile read_policy_file(const std::string& path);

void write_policy(std::ostream& out, const PolicyFile& file);
void write_policy_file(const std::string& path, const PolicyFile& file);

}  // namespace aoi
