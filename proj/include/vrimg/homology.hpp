#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vrimg/rips_graph.hpp"
#include "vrimg/union_find.hpp"

namespace vrimg {

// Vertex -> component id. Ids are contiguous and ordered by each
// component's smallest vertex index, so the whole-image vertex 0 is in
// component 0.
struct ComponentLabeling {
  std::vector<std::uint32_t> labels;
  std::uint32_t component_count = 0;

  std::uint32_t operator[](std::int64_t v) const { return labels[static_cast<std::size_t>(v)]; }
};

namespace detail {

inline ComponentLabeling label_components(UnionFind& uf) {
  ComponentLabeling out;
  out.labels.resize(uf.elements());
  std::vector<std::uint32_t> root_label(uf.elements(), UINT32_MAX);
  for (std::uint32_t v = 0; v < uf.elements(); ++v) {
    auto& l = root_label[uf.find(v)];
    if (l == UINT32_MAX) l = out.component_count++;
    out.labels[v] = l;
  }
  return out;
}

inline void require_oracle_scale(const CsrGraph& graph) {
  if (graph.side > 8)
    throw std::invalid_argument("all-pairs Vietoris-Rips oracle is limited to images of side <= 8 (got " +
                                std::to_string(graph.side) + ")");
}

}  // namespace detail

// Components of the subgraph of edges with weight <= epsilon.
inline ComponentLabeling connected_components(const CsrGraph& graph, int epsilon) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be nonnegative");
  UnionFind uf(static_cast<std::size_t>(graph.vertices()));
  for (std::size_t s = 0; s < graph.edges(); ++s)
    if (graph.w[s] <= epsilon) uf.unite(graph.v_from[s], graph.v_to[s]);
  return detail::label_components(uf);
}

// Components of the kept edges of a thresholded graph.
inline ComponentLabeling connected_components(const CsrGraph& graph) {
  if (!graph.w_tilde) throw std::invalid_argument("graph has not been thresholded");
  UnionFind uf(static_cast<std::size_t>(graph.vertices()));
  for (std::size_t s = 0; s < graph.edges(); ++s)
    if ((*graph.w_tilde)[s]) uf.unite(graph.v_from[s], graph.v_to[s]);
  return detail::label_components(uf);
}

// 0-th persistence as a step function: counts[t] components for epsilon in
// [thresholds[t], thresholds[t+1]). thresholds[0] is always 0.
struct Barcode {
  std::vector<int> thresholds;
  std::vector<std::int64_t> counts;

  std::int64_t components_at(int epsilon) const {
    auto it = std::upper_bound(thresholds.begin(), thresholds.end(), epsilon);
    return counts[static_cast<std::size_t>(it - thresholds.begin()) - 1];
  }

  friend bool operator==(const Barcode&, const Barcode&) = default;
};

// Kruskal-style sweep: edges bucketed by weight, merged in increasing order.
inline Barcode h0_barcode(const CsrGraph& graph) {
  std::array<std::vector<std::uint32_t>, 256> buckets;
  for (std::size_t s = 0; s < graph.edges(); ++s)
    buckets[graph.w[s]].push_back(static_cast<std::uint32_t>(s));
  UnionFind uf(static_cast<std::size_t>(graph.vertices()));
  Barcode bc;
  for (int weight = 0; weight < 256; ++weight) {
    for (auto s : buckets[weight]) uf.unite(graph.v_from[s], graph.v_to[s]);
    const auto n = static_cast<std::int64_t>(uf.sets());
    if (weight == 0 || n < bc.counts.back()) {
      bc.thresholds.push_back(weight);
      bc.counts.push_back(n);
    }
  }
  return bc;
}

inline std::vector<std::int64_t> zero_component_members(const CsrGraph& graph, int epsilon) {
  const ComponentLabeling cc = connected_components(graph, epsilon);
  std::vector<std::int64_t> out;
  for (std::size_t v = 0; v < cc.labels.size(); ++v)
    if (cc.labels[v] == 0) out.push_back(static_cast<std::int64_t>(v));
  return out;
}

// Zero-weight components. Distance-0 classes, hence the maximal simplices
// of the complex at epsilon = 0. Blocks ordered by smallest member.
inline std::vector<std::vector<std::int64_t>> maximal_simplices_eps0(const CsrGraph& graph) {
  const ComponentLabeling cc = connected_components(graph, 0);
  std::vector<std::vector<std::int64_t>> blocks(cc.component_count);
  for (std::size_t v = 0; v < cc.labels.size(); ++v)
    blocks[cc.labels[v]].push_back(static_cast<std::int64_t>(v));
  return blocks;
}

using VertexPair = std::pair<std::int64_t, std::int64_t>;

// 1-skeleton of the Vietoris-Rips complex: all pairs a < b with
// d(a, b) <= epsilon under the shortest-path pseudo-metric.
inline std::vector<VertexPair> vr_edge_set(const CsrGraph& graph, int epsilon) {
  detail::require_oracle_scale(graph);
  const MetricOracle metric(graph);
  std::vector<VertexPair> out;
  for (std::int64_t a = 0; a < graph.vertices(); ++a) {
    const auto dist = metric.distances_from(a);
    for (std::int64_t b = a + 1; b < graph.vertices(); ++b)
      if (dist[static_cast<std::size_t>(b)] <= epsilon) out.emplace_back(a, b);
  }
  return out;
}

inline bool vr_simplex_membership(const CsrGraph& graph, int epsilon,
                                  const std::set<std::int64_t>& vertices) {
  detail::require_oracle_scale(graph);
  const MetricOracle metric(graph);
  for (auto a : vertices) {
    const auto dist = metric.distances_from(a);
    for (auto b : vertices)
      if (b > a && dist[static_cast<std::size_t>(b)] > epsilon) return false;
  }
  return true;
}

inline std::string barcode_csv(const Barcode& bc) {
  std::string out = "epsilon,components\n";
  for (std::size_t t = 0; t < bc.thresholds.size(); ++t)
    out += std::to_string(bc.thresholds[t]) + ',' + std::to_string(bc.counts[t]) + '\n';
  return out;
}

inline std::string labeling_csv(const ComponentLabeling& cc) {
  std::string out = "vertex,component\n";
  for (std::size_t v = 0; v < cc.labels.size(); ++v)
    out += std::to_string(v) + ',' + std::to_string(cc.labels[v]) + '\n';
  return out;
}

}  // namespace vrimg
