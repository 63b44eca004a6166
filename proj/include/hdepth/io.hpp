#pragma once

// Delimited-text point files: one point per row, comma and/or whitespace
// separated, '#' starts a comment, blank lines are ignored. The dimension
// is taken from the first data row.

#include <istream>
#include <string>
#include <vector>

#include "hdepth/core.hpp"

namespace hdepth::io {

/// Throws Error(Parse) with "<source>:<line>:<column>: ..." on bad input.
PointCloud read_points(std::istream& in, const std::string& source = "<input>");
PointCloud read_points_file(const std::string& path);

/// Parses a single "x1,x2,..." (or whitespace separated) vector.
std::vector<double> parse_vector(const std::string& text, const std::string& source = "<arg>");

}  // namespace hdepth::io
