#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hdepth/core.hpp"

namespace hdepth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDimension = 3;

/// "rec" | "comb2" | "comb" | "auto" | "k=<int>".
std::pair<Variant, int> parse_variant(const std::string& text);

/// "3" | "3..6" | "3,5,7".
std::vector<std::size_t> parse_dims(const std::string& text);

/// Entry point behind the hdepth executable; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hdepth::cli
