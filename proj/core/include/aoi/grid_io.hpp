#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "aoi/distribution.hpp"

namespace aoi {

/// Plot-ready grid file (gnuplot / pgfplots "y varies" ordering).
///
///   # aoi-grid 1
///   # p <p>
///   # q <q>
///   # policy <id>
///   # y_hat <size>
///   # tail_mass <bound>
///   # norm_constant <A>
///   # normalized <0|1>
///   # <extra header lines, verbatim>
///   1 1 <value>
///   1 2 <value>
///   ...
///   <blank line after each x block>
///
/// Reals use 17 significant digits, so read -> write is byte-identical.
struct GridFile {
  Distribution dist;
  std::vector<std::string> extra_header;  ///< without the leading '#'
};

void write_grid(std::ostream& out, const GridFile& file);
void write_grid_file(const std::string& path, const GridFile& file);

/// Throws ValidationError on malformed content.
GridFile read_grid(std::istream& in);
GridFile read_grid_file(const std::string& path);

/// Same layout for an arbitrary surface z(a, b) over two axes, one block per
/// value of `a`, with free-form '#' header lines.
void write_surface(std::ostream& out, const std::vector<std::string>& header, const std::vector<double>& a_axis,
                   const std::vector<double>& b_axis, const std::function<double(std::size_t, std::size_t)>& z);

/// 17-significant-digit formatting used by every emitted file.
std::string format_real(double v);

}  // namespace aoi
