#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "indsets/graph.hpp"

namespace indsets {

/// graph6 codec restricted to the single-byte size header (n <= 62).
///
/// Bits are taken from the upper triangle in column order
/// x(0,1), x(0,2), x(1,2), x(0,3), ... and packed six at a time, most
/// significant first, each group offset by 63.
namespace graph6 {

inline constexpr int kMaxOrder = 62;

class Graph6Error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline std::string encode(const Graph& g) {
  const int n = g.order();
  if (n < 1 || n > kMaxOrder) {
    throw Graph6Error("graph6 supports 1..62 vertices, got " + std::to_string(n));
  }
  std::string out;
  out.push_back(static_cast<char>(n + 63));
  const auto rows = g.rows();
  int group = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      group = (group << 1) | static_cast<int>((rows[j] >> i) & 1U);
      if (++filled == 6) {
        out.push_back(static_cast<char>(group + 63));
        group = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) {
    out.push_back(static_cast<char>((group << (6 - filled)) + 63));
  }
  return out;
}

inline Graph decode(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  if (text.empty()) throw Graph6Error("empty graph6 string");
  for (char c : text) {
    if (c < 63 || c > 126) {
      throw Graph6Error("byte outside printable graph6 range 63..126");
    }
  }
  const int n = text[0] - 63;
  if (n < 1 || n > kMaxOrder) {
    throw Graph6Error("graph6 size header " + std::to_string(n) + " unsupported");
  }
  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t groups = (bits + 5) / 6;
  if (text.size() != groups + 1) {
    throw Graph6Error("graph6 length " + std::to_string(text.size()) + " does not match n=" +
                      std::to_string(n) + " (expected " + std::to_string(groups + 1) + ")");
  }
  std::vector<VertexMask> rows(static_cast<std::size_t>(n), 0);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = text[1 + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) {
        rows[i] |= bit(j);
        rows[j] |= bit(i);
      }
    }
  }
  if (bits % 6 != 0) {
    const int last = text.back() - 63;
    if ((last & ((1 << (6 - bits % 6)) - 1)) != 0) {
      throw Graph6Error("nonzero padding bits in graph6 string");
    }
  }
  return Graph::from_rows(rows);
}

}  // namespace graph6
}  // namespace indsets
