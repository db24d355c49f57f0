#include "energame/graph6.hpp"

namespace energame {

std::string encode_graph6(const Graph& g) {
  const int n = g.vertex_count();
  std::string out;
  out.push_back(static_cast<char>(n + 63));
  int acc = 0;
  int nbits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        nbits = 0;
      }
    }
  }
  if (nbits > 0) {
    acc <<= (6 - nbits);
    out.push_back(static_cast<char>(acc + 63));
  }
  return out;
}

Graph parse_graph6(std::string_view line) {
  if (line.empty()) throw ParseError("empty graph6 line");
  for (std::size_t k = 0; k < line.size(); ++k) {
    const unsigned char c = static_cast<unsigned char>(line[k]);
    if (c < 63 || c > 126) {
      throw ParseError("graph6 byte " + std::to_string(k) + " outside 63..126");
    }
  }
  const int n = static_cast<unsigned char>(line[0]) - 63;
  if (n > kMaxVertices) {
    throw ParseError("graph6 size byte encodes n=" + std::to_string(n) +
                     " but only n <= " + std::to_string(kMaxVertices) +
                     " (single-byte sizes) is supported");
  }
  const int nbits = n * (n - 1) / 2;
  const std::size_t expected = 1 + static_cast<std::size_t>((nbits + 5) / 6);
  if (line.size() != expected) {
    throw ParseError("graph6 line has " + std::to_string(line.size()) +
                     " bytes, expected " + std::to_string(expected) + " for n=" +
                     std::to_string(n));
  }
  Graph g(n);
  int bit = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      const int byte = static_cast<unsigned char>(line[1 + bit / 6]) - 63;
      if ((byte >> (5 - bit % 6)) & 1) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace energame
