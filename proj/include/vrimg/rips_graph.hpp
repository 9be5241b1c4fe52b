#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vrimg/color_stats.hpp"
#include "vrimg/image.hpp"
#include "vrimg/vertex_index.hpp"

namespace vrimg {

// Weighted square-inclusion graph as parallel edge arrays in edge-index
// order. Edges are stored once, parent -> child; connectivity treats them
// as undirected. Weight = count(parent) - count(child).
struct CsrGraph {
  int side = 1;
  std::vector<std::uint32_t> v_from;
  std::vector<std::uint32_t> v_to;
  std::vector<std::uint16_t> w;
  // 1 = edge kept at the threshold, 0 = deleted; only set by threshold().
  std::optional<std::vector<std::uint8_t>> w_tilde;
  std::optional<int> epsilon;

  std::int64_t vertices() const { return vertex_count(side); }
  std::size_t edges() const { return w.size(); }
  int max_weight() const { return w.empty() ? 0 : *std::max_element(w.begin(), w.end()); }
};

inline CsrGraph build_graph(const Image& image, const SquareCountTable& counts) {
  const int n = image.side();
  if (counts.side() != n) throw std::invalid_argument("count table was built for another image size");
  CsrGraph g;
  g.side = n;
  const auto e = static_cast<std::size_t>(edge_count(n));
  g.v_from.reserve(e);
  g.v_to.reserve(e);
  g.w.reserve(e);
  std::int64_t parent = 0;
  for (int k = 0; k + 1 < n; ++k)
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j, ++parent) {
        const int pc = counts.at(parent);
        for (int slot = 0; slot < 4; ++slot) {
          const std::int64_t ch = vertex_index(child({k, i, j}, slot), n);
          g.v_from.push_back(static_cast<std::uint32_t>(parent));
          g.v_to.push_back(static_cast<std::uint32_t>(ch));
          g.w.push_back(static_cast<std::uint16_t>(pc - counts.at(ch)));
        }
      }
  return g;
}

inline CsrGraph build_graph(const Image& image) { return build_graph(image, all_square_counts(image)); }

inline CsrGraph threshold(const CsrGraph& graph, int epsilon) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be nonnegative");
  CsrGraph out = graph;
  std::vector<std::uint8_t> keep(graph.w.size());
  for (std::size_t s = 0; s < graph.w.size(); ++s) keep[s] = graph.w[s] > epsilon ? 0 : 1;
  out.w_tilde = std::move(keep);
  out.epsilon = epsilon;
  return out;
}

// Shortest-path distances on the undirected weighted graph. This is a
// correctness oracle for small images; detection never needs distances.
class MetricOracle {
 public:
  static constexpr int kUnreachable = std::numeric_limits<int>::max();

  explicit MetricOracle(const CsrGraph& graph)
      : vertices_(graph.vertices()), offsets_(static_cast<std::size_t>(vertices_) + 1, 0) {
    for (std::size_t s = 0; s < graph.edges(); ++s) {
      ++offsets_[graph.v_from[s] + 1];
      ++offsets_[graph.v_to[s] + 1];
    }
    for (std::size_t v = 0; v < static_cast<std::size_t>(vertices_); ++v) offsets_[v + 1] += offsets_[v];
    adj_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t s = 0; s < graph.edges(); ++s) {
      adj_[fill[graph.v_from[s]]++] = {graph.v_to[s], graph.w[s]};
      adj_[fill[graph.v_to[s]]++] = {graph.v_from[s], graph.w[s]};
    }
  }

  std::int64_t vertices() const { return vertices_; }

  std::vector<int> distances_from(std::int64_t source) const {
    check(source);
    std::vector<int> dist(static_cast<std::size_t>(vertices_), kUnreachable);
    using Item = std::pair<int, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[static_cast<std::size_t>(source)] = 0;
    pq.emplace(0, static_cast<std::uint32_t>(source));
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d != dist[v]) continue;
      for (std::size_t e = offsets_[v]; e < offsets_[v + 1]; ++e) {
        const int nd = d + adj_[e].weight;
        if (nd < dist[adj_[e].to]) {
          dist[adj_[e].to] = nd;
          pq.emplace(nd, adj_[e].to);
        }
      }
    }
    return dist;
  }

  int distance(std::int64_t a, std::int64_t b) const {
    check(b);
    return distances_from(a)[static_cast<std::size_t>(b)];
  }

 private:
  struct Arc {
    std::uint32_t to;
    std::uint16_t weight;
  };

  void check(std::int64_t v) const {
    if (v < 0 || v >= vertices_)
      throw std::out_of_range("vertex index " + std::to_string(v) + " out of range");
  }

  std::int64_t vertices_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> adj_;
};

inline int pseudo_metric(const CsrGraph& graph, std::int64_t a, std::int64_t b) {
  return MetricOracle(graph).distance(a, b);
}

// Header "s,v_from,v_to,w" plus ",w_tilde" when thresholded; rows in edge order.
inline std::string csr_csv(const CsrGraph& graph) {
  const bool flags = graph.w_tilde.has_value();
  std::string out = flags ? "s,v_from,v_to,w,w_tilde\n" : "s,v_from,v_to,w\n";
  out.reserve(out.size() + graph.edges() * 26);
  for (std::size_t s = 0; s < graph.edges(); ++s) {
    out += std::to_string(s);
    out += ',';
    out += std::to_string(graph.v_from[s]);
    out += ',';
    out += std::to_string(graph.v_to[s]);
    out += ',';
    out += std::to_string(graph.w[s]);
    if (flags) {
      out += ',';
      out += static_cast<char>('0' + (*graph.w_tilde)[s]);
    }
    out += '\n';
  }
  return out;
}

class CsvFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses csr_csv output. Side length is recovered from the edge count and
// every row is checked against the edge-index layout.
inline CsrGraph parse_csr_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw CsvFormatError("CSR CSV: empty input");
  bool flags = false;
  if (line == "s,v_from,v_to,w,w_tilde")
    flags = true;
  else if (line != "s,v_from,v_to,w")
    throw CsvFormatError("CSR CSV: unexpected header '" + line + "'");

  CsrGraph g;
  std::vector<std::uint8_t> keep;
  std::int64_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::int64_t f[5] = {};
    char comma = 0;
    const int cols = flags ? 5 : 4;
    for (int c = 0; c < cols; ++c) {
      if (c && (!(ls >> comma) || comma != ','))
        throw CsvFormatError("CSR CSV: malformed row " + std::to_string(row));
      if (!(ls >> f[c])) throw CsvFormatError("CSR CSV: malformed row " + std::to_string(row));
    }
    if (f[0] != row) throw CsvFormatError("CSR CSV: rows must be in edge-index order");
    if (f[3] < 0 || f[3] > 255) throw CsvFormatError("CSR CSV: weight out of range");
    g.v_from.push_back(static_cast<std::uint32_t>(f[1]));
    g.v_to.push_back(static_cast<std::uint32_t>(f[2]));
    g.w.push_back(static_cast<std::uint16_t>(f[3]));
    if (flags) {
      if (f[4] != 0 && f[4] != 1) throw CsvFormatError("CSR CSV: w_tilde must be 0 or 1");
      keep.push_back(static_cast<std::uint8_t>(f[4]));
    }
    ++row;
  }

  int side = 1;
  while (edge_count(side) < row) ++side;
  if (edge_count(side) != row)
    throw CsvFormatError("CSR CSV: edge count " + std::to_string(row) + " matches no image size");
  g.side = side;
  for (std::int64_t s = 0; s < row; ++s) {
    const VertexCoord parent = vertex_unindex(s / 4, side);
    if (g.v_from[s] != s / 4 || g.v_to[s] != vertex_index(child(parent, static_cast<int>(s % 4)), side))
      throw CsvFormatError("CSR CSV: row " + std::to_string(s) + " does not match the edge layout");
  }
  if (flags) g.w_tilde = std::move(keep);
  return g;
}

}  // namespace vrimg
