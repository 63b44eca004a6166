#include "hdepth/io.hpp"

#include <charconv>
#include <fstream>

namespace hdepth::io {

namespace {

bool is_separator(char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == ';'; }

[[noreturn]] void fail(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& message) {
  throw Error(ErrorCode::Parse,
              source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message);
}

// Parses one row; returns false for blank/comment-only rows.
bool parse_row(const std::string& text, const std::string& source, std::size_t line,
               std::vector<double>& out) {
  out.clear();
  std::size_t end = text.find('#');
  if (end == std::string::npos) end = text.size();
  std::size_t pos = 0;
  while (pos < end) {
    while (pos < end && is_separator(text[pos])) ++pos;
    if (pos >= end) break;
    std::size_t stop = pos;
    while (stop < end && !is_separator(text[stop])) ++stop;
    double value = 0.0;
    const char* first = text.data() + pos;
    const char* last = text.data() + stop;
    if (*first == '+') ++first;  // from_chars rejects a leading '+'
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      fail(source, line, pos + 1, "cannot parse '" + text.substr(pos, stop - pos) + "' as a number");
    }
    out.push_back(value);
    pos = stop;
  }
  return !out.empty();
}

}  // namespace

PointCloud read_points(std::istream& in, const std::string& source) {
  std::string text;
  std::vector<double> row;
  PointCloud cloud;
  bool have_dim = false;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!parse_row(text, source, line, row)) continue;
    if (!have_dim) {
      cloud = PointCloud(row.size());
      have_dim = true;
    } else if (row.size() != cloud.dim()) {
      fail(source, line, 1,
           "row has " + std::to_string(row.size()) + " values, expected " + std::to_string(cloud.dim()));
    }
    cloud.push_back(row);
  }
  if (!have_dim) fail(source, line == 0 ? 1 : line, 1, "no data rows");
  return cloud;
}

PointCloud read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, path + ":0:0: cannot open file");
  return read_points(in, path);
}

std::vector<double> parse_vector(const std::string& text, const std::string& source) {
  std::vector<double> out;
  if (!parse_row(text, source, 1, out)) fail(source, 1, 1, "empty vector");
  return out;
}

}  // namespace hdepth::io
