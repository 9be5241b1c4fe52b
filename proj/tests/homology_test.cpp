#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "test_support.hpp"
#include "vrimg/homology.hpp"

using namespace vrimg;
using vrimg::testing::bfs_partition;
using vrimg::testing::ex3;
using vrimg::testing::random_image;

TEST(ConnectedComponents, Ex3Counts) {
  const CsrGraph g = build_graph(ex3());
  EXPECT_EQ(connected_components(g, 0).component_count, 7u);
  for (int eps : {1, 2, 10}) EXPECT_EQ(connected_components(g, eps).component_count, 1u);
  EXPECT_EQ(connected_components(build_graph(Image::constant(5, 4, 3)), 0).component_count, 1u);
  EXPECT_THROW(connected_components(g, -1), std::invalid_argument);
}

TEST(ConnectedComponents, LabelsOrderedBySmallestMember) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const CsrGraph g = build_graph(random_image(rng, 7, 256, 5));
    const auto cc = connected_components(g, static_cast<int>(rng() % 3));
    ASSERT_EQ(cc[0], 0u);
    std::uint32_t next = 0;
    for (std::int64_t v = 0; v < g.vertices(); ++v) {
      ASSERT_LE(cc[v], next);
      if (cc[v] == next) ++next;
    }
    EXPECT_EQ(next, cc.component_count);
  }
}

TEST(ConnectedComponents, KeepFlagsMatchWeights) {
  std::mt19937_64 rng(32);
  const CsrGraph g = build_graph(random_image(rng, 9, 256, 8));
  for (int eps = 0; eps <= g.max_weight(); ++eps) {
    const auto a = connected_components(g, eps);
    const auto b = connected_components(threshold(g, eps));
    EXPECT_EQ(a.labels, b.labels);
  }
  EXPECT_THROW(connected_components(g), std::invalid_argument);
}

TEST(Barcode, Ex3AndConstant) {
  const Barcode bc = h0_barcode(build_graph(ex3()));
  EXPECT_EQ(bc.thresholds, (std::vector<int>{0, 1}));
  EXPECT_EQ(bc.counts, (std::vector<std::int64_t>{7, 1}));
  const Barcode c = h0_barcode(build_graph(Image::constant(3, 2, 0)));
  EXPECT_EQ(c.thresholds, std::vector<int>{0});
  EXPECT_EQ(c.counts, std::vector<std::int64_t>{1});
  const Barcode one = h0_barcode(build_graph(Image::constant(1, 2, 0)));
  EXPECT_EQ(one.counts, std::vector<std::int64_t>{1});
}

TEST(Barcode, AgreesPointwiseWithComponents) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const CsrGraph g = build_graph(random_image(rng, 8, 256, 2 + static_cast<int>(rng() % 60)));
    const Barcode bc = h0_barcode(g);
    for (std::size_t t = 1; t < bc.counts.size(); ++t) {
      EXPECT_LT(bc.thresholds[t - 1], bc.thresholds[t]);
      EXPECT_GT(bc.counts[t - 1], bc.counts[t]);
    }
    EXPECT_EQ(bc.counts.back(), 1);
    std::int64_t prev = INT64_MAX;
    for (int eps = 0; eps <= g.max_weight() + 2; ++eps) {
      const auto n = static_cast<std::int64_t>(connected_components(g, eps).component_count);
      EXPECT_EQ(bc.components_at(eps), n) << "eps=" << eps;
      EXPECT_LE(n, prev);
      prev = n;
    }
    EXPECT_EQ(prev, 1);
  }
}

TEST(Barcode, RotationInvariant) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const Image img = random_image(rng, 9, 256, 20);
    EXPECT_EQ(h0_barcode(build_graph(img)), h0_barcode(build_graph(rotate90(img))));
  }
}

TEST(ZeroComponent, Members) {
  const CsrGraph g = build_graph(ex3());
  EXPECT_EQ(zero_component_members(g, 0), (std::vector<std::int64_t>{0, 1, 3, 4}));
  EXPECT_EQ(zero_component_members(g, 1).size(), 14u);
  EXPECT_EQ(zero_component_members(build_graph(Image::constant(4, 2, 1)), 0).size(), 30u);
}

TEST(MaximalSimplices, Ex3Blocks) {
  const auto blocks = maximal_simplices_eps0(build_graph(ex3()));
  const std::vector<std::vector<std::int64_t>> expected = {
      {0, 1, 3, 4}, {2, 6, 7, 9, 10}, {5}, {8}, {11}, {12}, {13}};
  EXPECT_EQ(blocks, expected);
  EXPECT_EQ(maximal_simplices_eps0(build_graph(Image::constant(3, 2, 0))).size(), 1u);
}

TEST(MaximalSimplices, BlocksShareColorCountAndMatchBarcode) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const Image img = random_image(rng, 8, 256, 4);
    const auto counts = all_square_counts(img);
    const CsrGraph g = build_graph(img, counts);
    const auto blocks = maximal_simplices_eps0(g);
    EXPECT_EQ(static_cast<std::int64_t>(blocks.size()), h0_barcode(g).counts[0]);
    for (const auto& b : blocks)
      for (auto v : b) EXPECT_EQ(counts.at(v), counts.at(b.front()));
  }
}

TEST(VrEdgeSet, Ex3AtZero) {
  const CsrGraph g = build_graph(ex3());
  const auto edges = vr_edge_set(g, 0);
  // pairs inside {0,1,3,4} and inside {2,6,7,9,10}: 6 + 10
  EXPECT_EQ(edges.size(), 16u);
  EXPECT_EQ(std::count(edges.begin(), edges.end(), VertexPair{0, 2}), 0);
  EXPECT_EQ(std::count(edges.begin(), edges.end(), VertexPair{0, 4}), 1);
  EXPECT_EQ(std::count(edges.begin(), edges.end(), VertexPair{2, 10}), 1);
  int total = 0;
  for (auto w : g.w) total += w;
  EXPECT_EQ(vr_edge_set(g, total).size(), 14u * 13u / 2u);
}

TEST(VrEdgeSet, OracleScaleGuard) {
  EXPECT_THROW(vr_edge_set(build_graph(Image::constant(9, 2, 0)), 0), std::invalid_argument);
  EXPECT_THROW(vr_simplex_membership(build_graph(Image::constant(9, 2, 0)), 0, {0}), std::invalid_argument);
}

TEST(VrSimplex, Membership) {
  const CsrGraph g = build_graph(ex3());
  EXPECT_TRUE(vr_simplex_membership(g, 0, {0, 1, 3, 4}));
  EXPECT_FALSE(vr_simplex_membership(g, 0, {0, 2}));
  EXPECT_TRUE(vr_simplex_membership(g, 1, {0, 2}));
  for (std::int64_t v = 0; v < 14; ++v) EXPECT_TRUE(vr_simplex_membership(g, 0, {v}));
}

TEST(VrEdgeSet, ThresholdMetricEquivalence) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const Image img = random_image(rng, n, 256, 2 + static_cast<int>(rng() % 10));
    const auto counts = all_square_counts(img);
    const CsrGraph g = build_graph(img, counts);
    for (int eps = 0; eps <= g.max_weight(); ++eps) {
      const auto vr = vr_edge_set(g, eps);
      EXPECT_EQ(connected_components(g, eps).labels, bfs_partition(g.vertices(), vr));
      for (auto [a, b] : vr) EXPECT_LE(std::abs(counts.at(a) - counts.at(b)), eps);
    }
  }
}

TEST(HomologyCsv, Formats) {
  const CsrGraph g = build_graph(ex3());
  EXPECT_EQ(barcode_csv(h0_barcode(g)), "epsilon,components\n0,7\n1,1\n");
  const std::string lab = labeling_csv(connected_components(g, 0));
  EXPECT_EQ(lab.substr(0, 24), "vertex,component\n0,0\n1,0");
  EXPECT_NE(lab.find("\n2,1\n"), std::string::npos);
  EXPECT_NE(lab.find("\n13,6\n"), std::string::npos);
}
