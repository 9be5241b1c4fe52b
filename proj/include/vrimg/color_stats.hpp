#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vrimg/color_set.hpp"
#include "vrimg/fraction.hpp"
#include "vrimg/image.hpp"
#include "vrimg/vertex_index.hpp"

namespace vrimg {

// Reference count: direct enumeration of the region's pixels.
inline int distinct_colors_oracle(const Image& image, const RectRegion& region) {
  require_within(image, region);
  std::array<bool, 256> seen{};
  int n = 0;
  for (int r = region.rows.start; r < region.rows.end(); ++r)
    for (int c = region.cols.start; c < region.cols.end(); ++c) {
      auto& s = seen[image.at(r, c)];
      if (!s) {
        s = true;
        ++n;
      }
    }
  return n;
}

// Distinct-color count of every square, stored in vertex-index order.
class SquareCountTable {
 public:
  SquareCountTable(int side, std::vector<std::uint16_t> counts)
      : side_(side), counts_(std::move(counts)) {}

  int side() const { return side_; }
  int at(std::int64_t vertex) const { return counts_[static_cast<std::size_t>(vertex)]; }
  int at(const VertexCoord& v) const { return at(vertex_index(v, side_)); }
  int at(const SquareRegion& sq) const { return at(vertex_index(sq, side_)); }
  std::span<const std::uint16_t> values() const { return counts_; }
  // Whole-image color count.
  int total() const { return counts_.front(); }

 private:
  int side_;
  std::vector<std::uint16_t> counts_;
};

// Builds all N(N+1)(2N+1)/6 counts bottom-up. For size >= 2 the four
// size-1-smaller squares at offsets (0,0),(0,1),(1,0),(1,1) cover their
// parent exactly, so parent mask = OR of the four child masks: O(N^3) ORs.
inline SquareCountTable all_square_counts(const Image& image) {
  const int n = image.side();
  std::vector<std::uint16_t> counts(static_cast<std::size_t>(vertex_count(n)));

  // masks of the current size, (n-size+1)^2 of them, row-major by offset
  std::vector<ColorSet> level(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) level[static_cast<std::size_t>(r) * n + c].insert(image.at(r, c));

  std::vector<ColorSet> next;
  for (int size = 1;; ++size) {
    const int k = n - size;
    const int span = k + 1;  // offsets per axis at this size
    const std::int64_t base = sum_of_squares(k);
    for (int i = 0; i < span; ++i)
      for (int j = 0; j < span; ++j)
        counts[static_cast<std::size_t>(base + static_cast<std::int64_t>(span) * i + j)] =
            static_cast<std::uint16_t>(level[static_cast<std::size_t>(i) * span + j].size());
    if (size == n) break;

    const int nspan = span - 1;
    next.assign(static_cast<std::size_t>(nspan) * nspan, ColorSet{});
    for (int i = 0; i < nspan; ++i) {
      const ColorSet* top = &level[static_cast<std::size_t>(i) * span];
      const ColorSet* bot = top + span;
      ColorSet* out = &next[static_cast<std::size_t>(i) * nspan];
      for (int j = 0; j < nspan; ++j) out[j] = top[j] | top[j + 1] | bot[j] | bot[j + 1];
    }
    level.swap(next);
  }
  return SquareCountTable(n, std::move(counts));
}

inline ColorSet region_mask(const Image& image, const RectRegion& region) {
  ColorSet m;
  for (int r = region.rows.start; r < region.rows.end(); ++r)
    for (int c = region.cols.start; c < region.cols.end(); ++c) m.insert(image.at(r, c));
  return m;
}

// Computed on demand; rectangles are never materialized.
inline int rect_count(const Image& image, const RectRegion& region) {
  require_within(image, region);
  return region_mask(image, region).size();
}

// #colors / #pixels, unreduced.
inline Fraction information_concentration(const Image& image, const RectRegion& region) {
  require_within(image, region);
  return {rect_count(image, region), region.area()};
}

// CSV columns: k,i,j,g_index,size,count in vertex-index order.
inline std::string counts_csv(const SquareCountTable& table) {
  const int n = table.side();
  std::string out = "k,i,j,g_index,size,count\n";
  std::int64_t g = 0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j, ++g)
        out += std::to_string(k) + ',' + std::to_string(i) + ',' + std::to_string(j) + ',' +
               std::to_string(g) + ',' + std::to_string(n - k) + ',' + std::to_string(table.at(g)) +
               '\n';
  return out;
}

}  // namespace vrimg
