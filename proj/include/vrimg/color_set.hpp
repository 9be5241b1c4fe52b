#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace vrimg {

// Set of 8-bit color indices as a 256-bit mask.
class ColorSet {
 public:
  constexpr ColorSet() = default;

  constexpr void insert(std::uint8_t c) { words_[c >> 6] |= std::uint64_t{1} << (c & 63); }
  constexpr bool contains(std::uint8_t c) const {
    return (words_[c >> 6] >> (c & 63)) & 1U;
  }

  constexpr ColorSet& operator|=(const ColorSet& o) {
    for (int w = 0; w < 4; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  friend constexpr ColorSet operator|(ColorSet a, const ColorSet& b) { return a |= b; }
  friend constexpr bool operator==(const ColorSet&, const ColorSet&) = default;

  constexpr int size() const {
    return std::popcount(words_[0]) + std::popcount(words_[1]) + std::popcount(words_[2]) +
           std::popcount(words_[3]);
  }

 private:
  std::array<std::uint64_t, 4> words_{};
};

}  // namespace vrimg
