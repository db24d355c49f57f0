#pragma once

#include <string>
#include <string_view>

#include "energame/graph.hpp"

namespace energame {

// graph6 interchange format, single-byte size field (n <= 62):
// byte0 = n + 63, then ceil(n(n-1)/2 / 6) bytes of 63-offset 6-bit groups
// packing the strict upper triangle column-major: x(0,1), x(0,2), x(1,2),
// x(0,3), ... with zero padding. encode(parse(x)) == x for canonical-length
// input.
std::string encode_graph6(const Graph& g);
Graph parse_graph6(std::string_view line);

}  // namespace energame
