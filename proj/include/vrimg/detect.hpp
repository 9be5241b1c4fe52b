#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vrimg/color_set.hpp"
#include "vrimg/color_stats.hpp"
#include "vrimg/fraction.hpp"
#include "vrimg/homology.hpp"
#include "vrimg/image.hpp"
#include "vrimg/rips_graph.hpp"

namespace vrimg {

inline constexpr std::uint8_t kDefaultFill = 128;

enum class DetectionMode { component, threshold };
enum class RegionClass { squares, rectangles };

struct DetectedRegion {
  RectRegion region;
  int colors = 0;

  friend bool operator==(const DetectedRegion&, const DetectedRegion&) = default;
};

struct DetectionParams {
  std::optional<int> epsilon;
  std::optional<int> threshold;
  int rank = 1;
  std::optional<Fraction> aspect_min;
  std::optional<Fraction> aspect_max;
};

struct DetectionResult {
  DetectionMode mode = DetectionMode::threshold;
  RegionClass region_class = RegionClass::squares;
  std::vector<DetectedRegion> regions;
  // Smallest selected square size, or the minimal rectangle area.
  std::int64_t selected_size_or_area = 0;
  // Square sizes S_1 < ... < S_r actually returned (squares only).
  std::vector<int> selected_sizes;
  DetectionParams params;

  std::vector<RectRegion> rects() const {
    std::vector<RectRegion> out;
    out.reserve(regions.size());
    for (const auto& r : regions) out.push_back(r.region);
    return out;
  }
};

// Source pixels where any region covers, `fill` elsewhere. The palette is
// widened to include the fill value.
inline Image render_overlay(const Image& image, const std::vector<RectRegion>& regions,
                            int fill = kDefaultFill) {
  if (fill < 0 || fill > 255) throw std::invalid_argument("fill must be in [0, 255]");
  const int n = image.side();
  std::vector<std::uint8_t> px(static_cast<std::size_t>(n) * n, static_cast<std::uint8_t>(fill));
  for (const auto& r : regions) {
    require_within(image, r);
    for (int y = r.rows.start; y < r.rows.end(); ++y)
      for (int x = r.cols.start; x < r.cols.end(); ++x)
        px[static_cast<std::size_t>(y) * n + x] = image.at(y, x);
  }
  return Image(n, std::max(image.colors(), fill + 1), std::move(px));
}

inline std::vector<bool> coverage(int side, const std::vector<RectRegion>& regions) {
  std::vector<bool> cov(static_cast<std::size_t>(side) * side, false);
  for (const auto& r : regions)
    for (int y = r.rows.start; y < r.rows.end(); ++y)
      for (int x = r.cols.start; x < r.cols.end(); ++x) cov[static_cast<std::size_t>(y) * side + x] = true;
  return cov;
}

// Fraction of pixels not covered by any region.
inline double gray_fraction(int side, const std::vector<RectRegion>& regions) {
  const auto cov = coverage(side, regions);
  const auto gray = std::count(cov.begin(), cov.end(), false);
  return static_cast<double>(gray) / static_cast<double>(cov.size());
}

// Last vertex index labeled 0, as scanned by the reference highlighting loop.
inline std::int64_t last_root_component_vertex(const ComponentLabeling& cc) {
  for (auto v = static_cast<std::int64_t>(cc.labels.size()) - 1; v >= 0; --v)
    if (cc[v] == 0) return v;
  return 0;
}

// All minimal-size squares in the component of the whole-image vertex.
inline DetectionResult detect_component(const Image& image, const CsrGraph& graph, int epsilon) {
  if (graph.side != image.side()) throw std::invalid_argument("graph was built for another image size");
  const int n = image.side();
  const ComponentLabeling cc = connected_components(graph, epsilon);
  int min_size = n;
  for (std::int64_t v = 0; v < graph.vertices(); ++v)
    if (cc[v] == 0) min_size = std::min(min_size, n - vertex_unindex(v, n).k);

  DetectionResult res;
  res.mode = DetectionMode::component;
  res.params.epsilon = epsilon;
  res.selected_size_or_area = min_size;
  res.selected_sizes = {min_size};
  const int k = n - min_size;
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j)
      if (cc[vertex_index(VertexCoord{k, i, j}, n)] == 0) {
        const RectRegion r = SquareRegion{i, j, min_size}.rect();
        res.regions.push_back({r, rect_count(image, r)});
      }
  return res;
}

// Squares with at least t colors, at the r smallest sizes where any exist.
inline DetectionResult detect_squares_threshold(const Image& image, const SquareCountTable& counts,
                                                int t, int rank = 1) {
  const int n = image.side();
  if (counts.side() != n) throw std::invalid_argument("count table was built for another image size");
  if (t < 1) throw std::invalid_argument("color threshold must be at least 1");
  if (t > counts.total())
    throw std::invalid_argument("color threshold " + std::to_string(t) + " exceeds the image's " +
                                std::to_string(counts.total()) + " colors");
  if (rank < 1) throw std::invalid_argument("rank must be at least 1");

  DetectionResult res;
  res.mode = DetectionMode::threshold;
  res.params.threshold = t;
  res.params.rank = rank;
  for (int size = 1; size <= n && static_cast<int>(res.selected_sizes.size()) < rank; ++size) {
    const int k = n - size;
    bool any = false;
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) {
        const int c = counts.at(VertexCoord{k, i, j});
        if (c >= t) {
          res.regions.push_back({SquareRegion{i, j, size}.rect(), c});
          any = true;
        }
      }
    if (any) res.selected_sizes.push_back(size);
  }
  res.selected_size_or_area = res.selected_sizes.front();
  return res;
}

// Rectangles with height/width in [aspect_min, aspect_max] and at least t
// colors, all of minimal area. Ordered by (height, row, col).
//
// For each width w, the heights admitting some qualifying w-wide rectangle
// form an up-set {h >= h*(w)}, and h*(w) is non-increasing in w; the search
// for h*(w) is therefore cut off at h*(w-1).
inline DetectionResult detect_rects_threshold(const Image& image, int t, Fraction aspect_min,
                                              Fraction aspect_max) {
  const int n = image.side();
  const int c = static_cast<int>(image_color_set(image).size());
  if (aspect_min.num <= 0 || aspect_min.den <= 0 || aspect_max.num <= 0 || aspect_max.den <= 0)
    throw std::invalid_argument("aspect bounds must be positive");
  if (!(aspect_min <= Fraction{1, 1}) || !(Fraction{1, 1} <= aspect_max))
    throw std::invalid_argument("aspect bounds must satisfy aspect_min <= 1 <= aspect_max");
  if (t < 1) throw std::invalid_argument("color threshold must be at least 1");
  if (t > c)
    throw std::invalid_argument("color threshold " + std::to_string(t) + " exceeds the image's " +
                                std::to_string(c) + " colors");

  // Height range admitted by the aspect bounds for width w.
  auto hmin = [&](int w) {
    const std::int64_t num = aspect_min.num * w;
    return static_cast<int>(std::max<std::int64_t>(1, (num + aspect_min.den - 1) / aspect_min.den));
  };
  auto hmax = [&](int w) {
    return static_cast<int>(std::min<std::int64_t>(n, aspect_max.num * w / aspect_max.den));
  };

  const auto idx = [n](int r, int col) { return static_cast<std::size_t>(r) * n + col; };
  std::vector<ColorSet> seg(static_cast<std::size_t>(n) * n);  // seg[r][col]: width-w row segment
  std::vector<ColorSet> col_union(static_cast<std::size_t>(n) * n);
  std::vector<int> hstar(static_cast<std::size_t>(n) + 1, 0);  // 0 = none within search limit
  int bound = n;

  std::int64_t best_area = std::numeric_limits<std::int64_t>::max();
  for (int w = 1; w <= n; ++w) {
    for (int r = 0; r < n; ++r)
      for (int col = 0; col + w <= n; ++col) seg[idx(r, col)].insert(image.at(r, col + w - 1));

    const int lo = hmin(w);
    const int hi = std::min(hmax(w), bound);
    if (lo > hi) continue;
    const int ncols = n - w + 1;
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < ncols; ++col) col_union[idx(r, col)] = ColorSet{};
    for (int h = 1; h <= hi; ++h) {
      bool found = false;
      for (int r = 0; r + h <= n; ++r)
        for (int col = 0; col < ncols; ++col) {
          ColorSet& u = col_union[idx(r, col)];
          u |= seg[idx(r + h - 1, col)];
          if (u.size() >= t) found = true;
        }
      if (found) {
        hstar[w] = h;
        bound = h;
        best_area = std::min<std::int64_t>(best_area, static_cast<std::int64_t>(w) * std::max(h, lo));
        break;
      }
    }
  }

  DetectionResult res;
  res.mode = DetectionMode::threshold;
  res.region_class = RegionClass::rectangles;
  res.params.threshold = t;
  res.params.aspect_min = aspect_min;
  res.params.aspect_max = aspect_max;
  if (best_area == std::numeric_limits<std::int64_t>::max()) return res;  // no admissible shape
  res.selected_size_or_area = best_area;

  for (int h = 1; h <= n; ++h) {
    if (best_area % h) continue;
    const int w = static_cast<int>(best_area / h);
    if (w > n || hstar[w] == 0 || h < hstar[w] || h < hmin(w) || h > hmax(w)) continue;
    for (int r = 0; r + h <= n; ++r)
      for (int col = 0; col + w <= n; ++col) {
        const RectRegion rr = RectRegion::make(r, col, h, w);
        const int cnt = region_mask(image, rr).size();
        if (cnt >= t) res.regions.push_back({rr, cnt});
      }
  }
  return res;
}

struct SweepStep {
  int n = 0;
  int threshold = 1;
  DetectionResult result;
  Image overlay;             // regions of this step only
  Image cumulative_overlay;  // union of steps 0..n
  double gray_fraction = 0;
  double cumulative_gray_fraction = 0;
};

// Step n detects with t = max(1, c - n * epsilon).
inline std::vector<SweepStep> sweep(const Image& image, const SquareCountTable& counts, int epsilon,
                                    int n_max, int rank = 1, int fill = kDefaultFill) {
  if (epsilon < 1) throw std::invalid_argument("sweep epsilon must be at least 1");
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  const int c = counts.total();
  std::vector<SweepStep> steps;
  std::vector<RectRegion> acc;
  for (int n = 0; n <= n_max; ++n) {
    const int t = static_cast<int>(std::max<std::int64_t>(1, c - static_cast<std::int64_t>(n) * epsilon));
    DetectionResult res = detect_squares_threshold(image, counts, t, rank);
    auto rects = res.rects();
    acc.insert(acc.end(), rects.begin(), rects.end());
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    SweepStep step{n,
                   t,
                   std::move(res),
                   render_overlay(image, rects, fill),
                   render_overlay(image, acc, fill),
                   gray_fraction(image.side(), rects),
                   gray_fraction(image.side(), acc)};
    steps.push_back(std::move(step));
  }
  return steps;
}

}  // namespace vrimg
