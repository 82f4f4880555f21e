#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace assemblyline {

// Grid syntax: "B^a:B^b" gives B^a, B^(a+1), ..., B^b; "x,y,z" lists values
// (each a plain integer or B^e); a single value is a one-point grid.
// The result is sorted and free of duplicates.
std::vector<std::uint64_t> parse_grid(std::string_view text);

}  // namespace assemblyline
