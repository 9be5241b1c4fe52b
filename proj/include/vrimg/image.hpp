#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vrimg {

// Square grid of color indices in [0, colors). Row-major, first index is the
// row (top to bottom), second the column (left to right). Immutable.
class Image {
 public:
  Image(int side, int colors, std::vector<std::uint8_t> pixels)
      : side_(side), colors_(colors), pixels_(std::move(pixels)) {
    if (side_ < 1) throw std::invalid_argument("image side length must be positive");
    if (colors_ < 1 || colors_ > 256) throw std::invalid_argument("color count must be in [1, 256]");
    if (pixels_.size() != static_cast<std::size_t>(side_) * static_cast<std::size_t>(side_))
      throw std::invalid_argument("pixel grid must have side*side entries");
    for (auto p : pixels_)
      if (p >= colors_)
        throw std::invalid_argument("pixel value " + std::to_string(p) + " outside color range");
  }

  static Image constant(int side, int colors, std::uint8_t value) {
    return Image(side, colors,
                 std::vector<std::uint8_t>(static_cast<std::size_t>(side) * side, value));
  }

  static Image from_rows(int colors, std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::uint8_t> px;
    for (const auto& r : rows) {
      if (r.size() != rows.size()) throw std::invalid_argument("rows must form a square grid");
      for (int v : r) {
        if (v < 0 || v > 255) throw std::invalid_argument("pixel value outside [0, 255]");
        px.push_back(static_cast<std::uint8_t>(v));
      }
    }
    return Image(static_cast<int>(rows.size()), colors, std::move(px));
  }

  int side() const { return side_; }
  int colors() const { return colors_; }
  std::uint8_t at(int row, int col) const {
    return pixels_[static_cast<std::size_t>(row) * side_ + col];
  }
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int side_;
  int colors_;
  std::vector<std::uint8_t> pixels_;
};

// {start, start+1, ..., start+length-1}
struct Interval {
  int start = 0;
  int length = 1;

  int end() const { return start + length; }
  bool valid_in(int bound) const {
    return length >= 1 && length <= bound && start >= 0 && start <= bound - length;
  }
  bool contains(int x) const { return x >= start && x < end(); }
  bool contains(const Interval& o) const { return o.start >= start && o.end() <= end(); }

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

struct RectRegion {
  Interval rows;
  Interval cols;

  static RectRegion make(int row, int col, int height, int width) {
    return {{row, height}, {col, width}};
  }

  int row() const { return rows.start; }
  int col() const { return cols.start; }
  int height() const { return rows.length; }
  int width() const { return cols.length; }
  long area() const { return static_cast<long>(rows.length) * cols.length; }
  bool is_square() const { return rows.length == cols.length; }
  bool valid_in(int side) const { return rows.valid_in(side) && cols.valid_in(side); }
  bool contains(int r, int c) const { return rows.contains(r) && cols.contains(c); }
  bool contains(const RectRegion& o) const { return rows.contains(o.rows) && cols.contains(o.cols); }
  bool intersects(const RectRegion& o) const {
    return rows.start < o.rows.end() && o.rows.start < rows.end() && cols.start < o.cols.end() &&
           o.cols.start < cols.end();
  }

  friend auto operator<=>(const RectRegion&, const RectRegion&) = default;
};

struct SquareRegion {
  int row = 0;
  int col = 0;
  int size = 1;

  RectRegion rect() const { return RectRegion::make(row, col, size, size); }
  bool valid_in(int side) const { return rect().valid_in(side); }

  friend auto operator<=>(const SquareRegion&, const SquareRegion&) = default;
};

inline void require_within(const Image& image, const RectRegion& region) {
  if (!region.valid_in(image.side()))
    throw std::out_of_range("region [" + std::to_string(region.row()) + "+" +
                            std::to_string(region.height()) + "]x[" + std::to_string(region.col()) +
                            "+" + std::to_string(region.width()) + "] outside " +
                            std::to_string(image.side()) + "x" + std::to_string(image.side()) +
                            " image");
}

// out(r, c) = in(N-1-c, r): a quarter turn clockwise.
inline Image rotate90(const Image& image) {
  const int n = image.side();
  std::vector<std::uint8_t> px(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) px[static_cast<std::size_t>(r) * n + c] = image.at(n - 1 - c, r);
  return Image(n, image.colors(), std::move(px));
}

// Image of a region under rotate90 of an N x N image.
inline RectRegion rotate90(const RectRegion& region, int side) {
  return {{region.cols.start, region.cols.length},
          {side - region.rows.end(), region.rows.length}};
}

inline SquareRegion rotate90(const SquareRegion& sq, int side) {
  return {sq.col, side - sq.row - sq.size, sq.size};
}

inline std::set<int> region_color_set(const Image& image, const RectRegion& region) {
  require_within(image, region);
  std::set<int> out;
  for (int r = region.rows.start; r < region.rows.end(); ++r)
    for (int c = region.cols.start; c < region.cols.end(); ++c) out.insert(image.at(r, c));
  return out;
}

inline std::set<int> image_color_set(const Image& image) {
  return std::set<int>(image.pixels().begin(), image.pixels().end());
}

}  // namespace vrimg
