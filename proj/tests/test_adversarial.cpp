#include <gtest/gtest.h>

#include <cmath>

#include "uflab/adversarial.hpp"
#include "uflab/frame_simulator.hpp"

using namespace uflab;

namespace {

int total_length(const std::vector<Segment>& segs) {
  int n = 0;
  for (const Segment& s : segs) n += s.length;
  return n;
}

// The split recursion written out independently.
void oracle_split(int start, int length, std::vector<Segment>& out) {
  if (length < 5) {
    out.push_back({start, length});
    return;
  }
  const int m = (length - 2) / 3;
  const int left = (length - m) / 2;
  const int right = (length - m + 1) / 2;
  oracle_split(start, left, out);
  oracle_split(start + left + m, right, out);
}

}  // namespace

TEST(Cantor, ShortLengthsStayWhole) {
  for (int L = 1; L <= 4; ++L) {
    const CantorSplit s = cantor_decompose(L);
    EXPECT_EQ(s.segments, (std::vector<Segment>{{0, L}}));
    EXPECT_EQ(s.depth, 0);
  }
  EXPECT_THROW(cantor_decompose(0), std::invalid_argument);
}

TEST(Cantor, MatchesRecursionOracle) {
  for (int L = 1; L <= 301; ++L) {
    std::vector<Segment> expected;
    oracle_split(0, L, expected);
    const CantorSplit s = cantor_decompose(L);
    EXPECT_EQ(s.segments, expected) << L;
    EXPECT_TRUE(s.order_ok) << L;
    for (std::size_t i = 0; i < s.segments.size(); ++i) {
      EXPECT_LE(s.segments[i].length, 4);
      if (i > 0) EXPECT_GT(s.segments[i].start, s.segments[i - 1].start + s.segments[i - 1].length - 1);
    }
  }
}

TEST(Cantor, Distance23Layout) {
  const CantorSplit s = cantor_decompose(23);
  EXPECT_EQ(s.segments, (std::vector<Segment>{{0, 3}, {5, 3}, {15, 3}, {20, 3}}));
  EXPECT_EQ(total_length(s.segments), 12);
}

TEST(Cantor, RightmostLengthsFollowRecursion) {
  for (int d = 5; d <= 101; d += 2) {
    const CantorSplit s = cantor_decompose(d);
    ASSERT_FALSE(s.rightmost.empty());
    EXPECT_EQ(s.rightmost[0], d);
    for (std::size_t k = 0; k + 1 < s.rightmost.size(); ++k) {
      const int l = s.rightmost[k];
      const int m = (l - 2) / 3;
      EXPECT_EQ(s.rightmost[k + 1], (l - m + 1) / 2);
    }
    EXPECT_LT(s.rightmost.back(), 5);
  }
}

TEST(Cantor, ErrorCountBoundAndMonotone) {
  const double exponent = std::log(2.0) / std::log(3.0);
  const double prefactor = std::pow(2.0, std::log(108.0 / 13.0) / std::log(3.0));
  int prev = 0;
  for (int d = 5; d <= 101; d += 2) {
    const CantorSplit s = cantor_decompose(d);
    const int n = total_length(s.segments);
    EXPECT_NEAR(cantor_error_bound(d), prefactor * std::pow(d - 0.75, exponent), 1e-12);
    EXPECT_LE(n, cantor_error_bound(d)) << d;
    EXPECT_GE(n, prev) << d;
    prev = n;
    const double k0 = std::log(4.0 / 13.0 * (d - 0.75)) / std::log(3.0) + 1;
    EXPECT_LE(static_cast<double>(s.segments.size()), std::pow(2.0, k0)) << d;
  }
}

TEST(CantorPattern, Distance5) {
  const Circuit c = build_syndrome_circuit(SurfaceCode(5), 3);
  const auto g = build_detector_graph(c, CheckType::ZChecks);
  const CantorPattern p = cantor_pattern(c, *g);
  EXPECT_EQ(p.N, 4);
  EXPECT_EQ(p.chain.size(), 5u);
  ASSERT_EQ(p.chain_nodes.size(), 6u);
  EXPECT_TRUE(g->is_boundary(p.chain_nodes.front()));
  EXPECT_TRUE(g->is_boundary(p.chain_nodes.back()));
  EXPECT_EQ(p.faults.entries.size(), 4u);
  // The fault set really produces the chain's error edges.
  const ShotOutcome out = simulate_shot(c, p.faults);
  EXPECT_EQ(g->syndrome_of(out), syndrome_of_edges(*g, p.error_edges));
  const GreedyFailureReport r = verify_greedy_failure(c, *g, p);
  EXPECT_TRUE(r.greedy_flip);
  EXPECT_TRUE(r.complement_ok);
  EXPECT_FALSE(r.uf_applicable);
}

TEST(CantorPattern, ChainIsGeodesic) {
  for (int d : {5, 9, 13}) {
    const Circuit c = build_syndrome_circuit(SurfaceCode(d), 3);
    const auto g = build_detector_graph(c, CheckType::ZChecks);
    const CantorPattern p = cantor_pattern(c, *g);
    for (std::size_t i = 0; i < p.chain.size(); ++i) {
      for (std::size_t j = i; j < p.chain.size(); ++j) {
        EXPECT_EQ(g->edge_distance(p.chain[i], p.chain[j]), static_cast<int>(j - i));
      }
    }
    // Interior chain nodes are detectors of one round.
    for (std::size_t i = 1; i + 1 < p.chain_nodes.size(); ++i) {
      EXPECT_EQ(g->node(p.chain_nodes[i]).row, p.round);
    }
  }
}

TEST(CantorPattern, GreedyFailsUpToD21) {
  for (int d = 5; d <= 21; d += 2) {
    const Circuit c = build_syndrome_circuit(SurfaceCode(d), 3);
    const auto g = build_detector_graph(c, CheckType::ZChecks);
    const CantorPattern p = cantor_pattern(c, *g);
    const GreedyFailureReport r = verify_greedy_failure(c, *g, p);
    EXPECT_TRUE(r.greedy_flip) << d;
    EXPECT_TRUE(r.greedy_flip_highest) << d;
    EXPECT_TRUE(r.complement_ok) << d;
    EXPECT_LE(p.N, cantor_error_bound(d));
    EXPECT_EQ(r.uf_applicable, p.N <= (d - 1) / 2);
    if (r.uf_applicable) EXPECT_FALSE(r.uf_flip) << d;
  }
}

TEST(CantorPattern, NeedsTwoRoundsAndZChecks) {
  const Circuit one = build_syndrome_circuit(SurfaceCode(5), 1);
  const auto g1 = build_detector_graph(one, CheckType::ZChecks);
  EXPECT_THROW(cantor_pattern(one, *g1), PatternConstructionError);
  const Circuit c = build_syndrome_circuit(SurfaceCode(5), 3);
  const auto gx = build_detector_graph(c, CheckType::XChecks);
  EXPECT_THROW(cantor_pattern(c, *gx), PatternConstructionError);
}
