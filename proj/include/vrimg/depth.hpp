#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vrimg/color_stats.hpp"
#include "vrimg/fraction.hpp"
#include "vrimg/homology.hpp"
#include "vrimg/image.hpp"
#include "vrimg/rips_graph.hpp"

namespace vrimg {

// Largest color count depth_bruteforce will enumerate surjections for.
inline constexpr int kMaxBruteForceColors = 12;

class TooManyColorsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Surjection from the observed colors onto {0, 1}.
class Binarization {
 public:
  // Bit b of `pattern` is the image of the b-th smallest observed color.
  Binarization(const std::vector<int>& observed, std::uint32_t pattern) {
    if (observed.size() > 31) throw TooManyColorsError("binarization supports at most 31 colors");
    const std::uint32_t full = (std::uint32_t{1} << observed.size()) - 1;
    if (observed.size() < 2 || pattern == 0 || (pattern & full) == full)
      throw std::invalid_argument("binarization must attain both 0 and 1");
    for (std::size_t b = 0; b < observed.size(); ++b)
      table_[observed[b]] = static_cast<std::uint8_t>((pattern >> b) & 1U);
  }

  Image apply(const Image& image) const {
    std::vector<std::uint8_t> px(image.pixels().begin(), image.pixels().end());
    for (auto& p : px) p = table_[p];
    return Image(image.side(), 2, std::move(px));
  }

 private:
  std::array<std::uint8_t, 256> table_{};
};

// Min over size-d squares of sum_{i,j in square} |f(i) - f(j)| for a 0/1
// image, i.e. 2 * zeros * ones.
inline std::int64_t phi(const Image& image2, int d) {
  const int m = image2.side();
  if (d < 1 || d > m) throw std::out_of_range("square size must be in [1, M]");
  for (auto p : image2.pixels())
    if (p > 1) throw std::invalid_argument("phi needs a two-valued image");
  std::vector<int> ones(static_cast<std::size_t>(m + 1) * (m + 1), 0);
  auto at = [&](int r, int c) -> int& { return ones[static_cast<std::size_t>(r) * (m + 1) + c]; };
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      at(r + 1, c + 1) = image2.at(r, c) + at(r, c + 1) + at(r + 1, c) - at(r, c);
  std::int64_t best = -1;
  for (int i = 0; i + d <= m; ++i)
    for (int j = 0; j + d <= m; ++j) {
      const std::int64_t o = at(i + d, j + d) - at(i, j + d) - at(i + d, j) + at(i, j);
      const std::int64_t z = static_cast<std::int64_t>(d) * d - o;
      const std::int64_t v = 2 * z * o;
      if (best < 0 || v < best) best = v;
    }
  return best;
}

// Enumerates all 2^c - 2 surjections. Constant images get 1/M.
inline Fraction depth_bruteforce(const Image& image) {
  const int m = image.side();
  const auto colors = image_color_set(image);
  const std::vector<int> observed(colors.begin(), colors.end());
  if (observed.size() > static_cast<std::size_t>(kMaxBruteForceColors))
    throw TooManyColorsError("brute-force depth enumerates at most " +
                             std::to_string(kMaxBruteForceColors) + " colors, image has " +
                             std::to_string(observed.size()));
  if (observed.size() == 1) return {1, m};
  const std::uint32_t full = (std::uint32_t{1} << observed.size()) - 1;
  std::vector<Image> binarized;
  for (std::uint32_t pattern = 1; pattern < full; ++pattern)
    binarized.push_back(Binarization(observed, pattern).apply(image));
  for (int d = m; d >= 1; --d)
    for (const auto& b : binarized)
      if (phi(b, d) == 0) return {d, m};
  return {1, m};  // unreachable: phi_1 is always 0
}

// Largest size with a square missing at least one of the image's colors.
inline Fraction depth_fast(const SquareCountTable& counts) {
  const int m = counts.side();
  const int c = counts.total();
  if (c == 1) return {1, m};
  for (int k = 1; k < m; ++k) {
    const std::int64_t base = sum_of_squares(k);
    const std::int64_t span = sum_of_squares(k + 1) - base;
    for (std::int64_t v = base; v < base + span; ++v)
      if (counts.at(v) < c) return {m - k, m};
  }
  return {1, m};  // unreachable for non-constant images: pixels have one color
}

inline Fraction depth_fast(const Image& image) { return depth_fast(all_square_counts(image)); }

// Maximal size among squares outside the zero-weight component of the
// whole-image vertex; nullopt when that component is everything.
inline std::optional<int> max_size_outside_root_block(const CsrGraph& graph) {
  const ComponentLabeling cc = connected_components(graph, 0);
  for (std::int64_t v = 0; v < graph.vertices(); ++v)
    if (cc[v] != 0) return graph.side - vertex_unindex(v, graph.side).k;
  return std::nullopt;
}

// (d + 1) / M with d = max_size_outside_root_block, taken literally.
inline Fraction depth_via_complex(const CsrGraph& graph) {
  const auto d = max_size_outside_root_block(graph);
  if (!d) throw std::domain_error("complex-based depth is undefined for a one-color image");
  return {*d + 1, graph.side};
}

struct DepthReport {
  std::optional<Fraction> brute;  // absent when too many colors to enumerate
  Fraction fast;
  std::optional<Fraction> via_complex;  // absent for one-color images
  bool agree_brute_fast = false;
  std::optional<std::int64_t> complex_discrepancy;  // M*via_complex - M*fast
};

inline DepthReport depth_report(const Image& image, bool run_brute = true) {
  const auto counts = all_square_counts(image);
  DepthReport rep;
  rep.fast = depth_fast(counts);
  if (run_brute && static_cast<int>(image_color_set(image).size()) <= kMaxBruteForceColors) {
    rep.brute = depth_bruteforce(image);
    rep.agree_brute_fast = rep.brute->same_form(rep.fast);
  }
  if (counts.total() > 1) {
    rep.via_complex = depth_via_complex(build_graph(image, counts));
    rep.complex_discrepancy = rep.via_complex->num - rep.fast.num;
  }
  return rep;
}

}  // namespace vrimg
