#include <gtest/gtest.h>

#include <deque>
#include <random>
#include <set>

#include "uflab/clustering.hpp"
#include "uflab/experiments.hpp"
#include "uflab/frame_simulator.hpp"

using namespace uflab;

namespace {

// All-pairs distances in the explicit line graph: two edges are adjacent iff
// they share an endpoint.
std::vector<std::vector<int>> line_graph_distances(const DetectorGraph& g) {
  const int m = g.num_edges();
  std::vector<std::vector<int>> by_node(g.num_nodes());
  for (const DetectorEdge& e : g.edges()) {
    by_node[e.u].push_back(e.id);
    by_node[e.v].push_back(e.id);
  }
  std::vector<std::vector<int>> dist(m, std::vector<int>(m, -1));
  for (int s = 0; s < m; ++s) {
    std::deque<int> q{s};
    dist[s][s] = 0;
    while (!q.empty()) {
      const int e = q.front();
      q.pop_front();
      for (int end : {g.edge(e).u, g.edge(e).v}) {
        for (int f : by_node[end]) {
          if (dist[s][f] < 0) {
            dist[s][f] = dist[s][e] + 1;
            q.push_back(f);
          }
        }
      }
    }
  }
  return dist;
}

struct Fixture {
  Circuit circuit;
  std::unique_ptr<DetectorGraph> graph;
  Fixture(int d, int rounds, CheckType t)
      : circuit(build_syndrome_circuit(SurfaceCode(d), rounds)), graph(build_detector_graph(circuit, t)) {}
};

}  // namespace

TEST(DetectorGraph, EdgeDistanceMatchesLineGraphBfs) {
  for (auto type : {CheckType::ZChecks, CheckType::XChecks}) {
    Fixture fx(3, 3, type);
    const DetectorGraph& g = *fx.graph;
    const auto oracle = line_graph_distances(g);
    for (int e = 0; e < g.num_edges(); ++e) {
      for (int f = 0; f < g.num_edges(); ++f) ASSERT_EQ(g.edge_distance(e, f), oracle[e][f]) << e << " " << f;
    }
  }
}

TEST(DetectorGraph, MetricAxioms) {
  Fixture fx(5, 5, CheckType::ZChecks);
  const DetectorGraph& g = *fx.graph;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, g.num_edges() - 1);
  for (int i = 0; i < 20000; ++i) {
    const int a = pick(rng), b = pick(rng), c = pick(rng);
    const int ab = g.edge_distance(a, b);
    EXPECT_EQ(ab, g.edge_distance(b, a));
    EXPECT_EQ(ab == 0, a == b);
    EXPECT_LE(g.edge_distance(a, c), ab + g.edge_distance(b, c));
  }
}

TEST(DetectorGraph, BallsAndSetQueries) {
  Fixture fx(5, 5, CheckType::ZChecks);
  const DetectorGraph& g = *fx.graph;
  for (int e : {0, 17, g.num_edges() / 2, g.num_edges() - 1}) {
    for (int r = 0; r <= 4; ++r) {
      std::vector<int> expected;
      for (int f = 0; f < g.num_edges(); ++f) {
        if (g.edge_distance(e, f) <= r) expected.push_back(f);
      }
      EXPECT_EQ(g.ball(e, r), expected);
    }
  }
  EXPECT_THROW(g.ball(0, -1), std::invalid_argument);
  EXPECT_EQ(g.set_diameter({3}), 0);
  EXPECT_EQ(g.set_diameter({3, 40}), g.edge_distance(3, 40));
  EXPECT_EQ(g.set_distance({3, 9}, {40}), std::min(g.edge_distance(3, 40), g.edge_distance(9, 40)));
  EXPECT_THROW(g.set_diameter({}), std::invalid_argument);
}

TEST(DetectorGraph, StructuralInvariants) {
  for (int d : {3, 5, 7}) {
    Fixture fx(d, d, CheckType::ZChecks);
    const DetectorGraph& g = *fx.graph;
    EXPECT_EQ(g.num_nodes(), g.num_detectors() + 2);
    std::set<std::pair<int, int>> seen;
    for (const DetectorEdge& e : g.edges()) {
      EXPECT_LT(e.u, e.v);
      EXPECT_FALSE(g.is_boundary(e.u));
      EXPECT_FALSE(e.sources.empty());
      EXPECT_TRUE(seen.insert({e.u, e.v}).second) << "parallel edge";
      EXPECT_LE(e.p_tilde(1e-3), e.multiplicity() * 1e-3 + 1e-15);
      EXPECT_LE(e.multiplicity(), g.xi());
      // Only edges to the observable side carry the logical.
      if (e.observable) EXPECT_EQ(g.node(e.v).side, 0);
    }
  }
}

TEST(DetectorGraph, MechanismEdgesMatchSimulation) {
  Fixture fx(3, 3, CheckType::ZChecks);
  const Circuit& c = fx.circuit;
  const DetectorGraph& g = *fx.graph;
  for (const FaultLocation& loc : c.locations()) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      const ShotOutcome out = simulate_shot(c, {{{loc.id, p}}});
      const Syndrome s = g.syndrome_of(out);
      const int e = g.mechanism_edge(loc.id, p);
      if (e < 0) {
        EXPECT_TRUE(s.empty());
        EXPECT_FALSE(g.observable_of(out));
      } else {
        EXPECT_EQ(s, syndrome_of_edges(g, {e}));
        EXPECT_EQ(g.edge(e).observable, g.observable_of(out));
      }
    }
  }
}

TEST(DetectorGraph, SampledShotsMatchTheirEdgeSum) {
  Fixture fx(5, 5, CheckType::ZChecks);
  for (std::uint64_t shot = 0; shot < 300; ++shot) {
    const FaultSet fs = sample_faults(fx.circuit, 0.01, RandomStream{8, shot});
    const ShotOutcome out = simulate_shot(fx.circuit, fs);
    EXPECT_EQ(syndrome_of_edges(*fx.graph, error_edges(*fx.graph, fs)), fx.graph->syndrome_of(out));
  }
}

// The certificate against a direct recomputation of its quantities.
TEST(DetectorGraph, LocalityCertificateIsConsistent) {
  Fixture fx(5, 5, CheckType::ZChecks);
  const DetectorGraph& g = *fx.graph;
  const LocalityCertificate cert = verify_locality(g, 3);
  int degree = 0, longest = 0, longer = 0;
  for (int n = 0; n < g.num_detectors(); ++n) degree = std::max(degree, g.degree(n));
  for (const DetectorEdge& e : g.edges()) {
    if (g.is_boundary(e.v)) continue;
    const DetectorNode& a = g.node(e.u);
    const DetectorNode& b = g.node(e.v);
    const double dx = a.meas.x() - b.meas.x(), dy = a.meas.y() - b.meas.y(), dt = a.row - b.row;
    const double len2 = dx * dx + dy * dy + dt * dt;
    longest = std::max(longest, static_cast<int>(std::lround(4 * len2)));
    longer += len2 > 3.0 + 1e-9;
  }
  EXPECT_EQ(cert.max_degree, degree);
  EXPECT_EQ(cert.long_edges, longer);
  EXPECT_DOUBLE_EQ(cert.c_observed, std::sqrt(longest / 4.0));
  EXPECT_EQ(cert.xi_observed, g.xi());
  EXPECT_EQ(cert.degree_ok, degree <= 12);
  double worst = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    for (int r = 1; r <= 3; ++r) worst = std::max(worst, g.ball(e, r).size() / (kLambdaSurface * r * r * r));
  }
  EXPECT_NEAR(cert.worst_ball_ratio, worst, 1e-12);
}

TEST(DetectorGraph, ClosingRowOnlyForZChecks) {
  Fixture z(3, 3, CheckType::ZChecks), x(3, 3, CheckType::XChecks);
  EXPECT_EQ(z.graph->rows(), 4);
  EXPECT_EQ(x.graph->rows(), 3);
  int synthetic = 0;
  for (const DetectorNode& n : z.graph->nodes()) synthetic += n.synthetic;
  EXPECT_EQ(synthetic, 4);
  for (const DetectorNode& n : x.graph->nodes()) EXPECT_FALSE(n.synthetic);
}
