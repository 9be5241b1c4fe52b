#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "vrimg/image.hpp"

namespace vrimg {

// Square of size N-k at row offset i, column offset j.
struct VertexCoord {
  int k = 0;
  int i = 0;
  int j = 0;

  int size(int side) const { return side - k; }
  bool valid_in(int side) const { return k >= 0 && k < side && i >= 0 && i <= k && j >= 0 && j <= k; }
  SquareRegion square(int side) const { return {i, j, side - k}; }

  friend auto operator<=>(const VertexCoord&, const VertexCoord&) = default;
};

// 1^2 + 2^2 + ... + k^2
constexpr std::int64_t sum_of_squares(std::int64_t k) { return k * (k + 1) * (2 * k + 1) / 6; }

constexpr std::int64_t vertex_count(int side) { return sum_of_squares(side); }
constexpr std::int64_t edge_count(int side) { return 4 * sum_of_squares(side - 1); }

// (k+1)i + j + sum_{l<=k} l^2. Larger squares get smaller indices.
inline std::int64_t vertex_index(const VertexCoord& v, int side) {
  if (!v.valid_in(side))
    throw std::out_of_range("vertex (" + std::to_string(v.k) + "," + std::to_string(v.i) + "," +
                            std::to_string(v.j) + ") invalid for side " + std::to_string(side));
  return static_cast<std::int64_t>(v.k + 1) * v.i + v.j + sum_of_squares(v.k);
}

inline VertexCoord vertex_unindex(std::int64_t index, int side) {
  if (index < 0 || index >= vertex_count(side))
    throw std::out_of_range("vertex index " + std::to_string(index) + " out of range for side " +
                            std::to_string(side));
  int k = 0;
  while (sum_of_squares(k + 1) <= index) ++k;
  const std::int64_t r = index - sum_of_squares(k);
  return {k, static_cast<int>(r / (k + 1)), static_cast<int>(r % (k + 1))};
}

inline std::int64_t vertex_index(const SquareRegion& sq, int side) {
  return vertex_index(VertexCoord{side - sq.size, sq.row, sq.col}, side);
}

// Child slots 0..3 are offsets (0,0), (0,1), (1,0), (1,1).
inline VertexCoord child(const VertexCoord& parent, int slot) {
  return {parent.k + 1, parent.i + (slot >> 1), parent.j + (slot & 1)};
}

inline std::int64_t edge_index(const VertexCoord& parent, int slot, int side) {
  if (slot < 0 || slot > 3) throw std::out_of_range("child slot must be in {0,1,2,3}");
  if (parent.k > side - 2) throw std::out_of_range("parent at the finest level has no children");
  return 4 * vertex_index(parent, side) + slot;
}

}  // namespace vrimg
