#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "uflab/detector_graph.hpp"

namespace uflab {

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Active detector node ids, ascending.
using Syndrome = std::vector<int>;

struct Correction {
  std::vector<int> edges;                  // ascending edge ids
  std::vector<std::pair<int, int>> pairs;  // matched (detector, detector or boundary node)
};

// A UF cluster after growth has stopped: its detector vertices, the fully
// grown edges among them (boundary edges included), and its state.
struct UfCluster {
  int root = -1;
  std::vector<int> vertices;
  std::vector<int> full_edges;
  int parity = 0;
  bool touches_boundary = false;

  bool valid() const { return parity == 0 || touches_boundary; }
};

struct ClusterState {
  int root = -1;
  int parity = 0;
  bool touches_boundary = false;
  int size = 0;

  bool valid() const { return parity == 0 || touches_boundary; }
};

struct MergeEvent {
  int round = 0;
  int a = -1;  // roots before the union
  int b = -1;
  int result = -1;
  int parity_a = 0;
  int parity_b = 0;
  int parity_result = 0;
};

// State after growth round `round` (round 0 is the initial state).
struct GrowthSnapshot {
  int round = 0;
  std::vector<int> vertex_cluster;  // root per node, -1 when not in a cluster
  std::vector<int> half_owner;      // 2 per edge (u half, v half): owning root or -1
  std::vector<ClusterState> clusters;
  std::vector<int> grown;  // roots, as of the start of the round, that grew
  std::vector<MergeEvent> merges;
};

struct DecodeTrace {
  int rounds = 0;
  std::vector<GrowthSnapshot> snapshots;
  std::vector<std::pair<int, int>> growth_stop;  // (final root, last round it grew)
  std::vector<int> peeled;                       // edges picked by peeling
};

struct UfResult {
  Correction correction;
  DecodeTrace trace;  // snapshots only when requested
  std::vector<UfCluster> clusters;
  std::vector<int> cluster_growth_rounds;  // per final cluster: rounds any constituent grew
};

// Synchronous union-find decoder: every invalid cluster grows by half an edge
// per round, clusters joined by a fully grown edge merge, then each valid
// cluster is peeled.
UfResult uf_decode(const DetectorGraph& g, const Syndrome& s, bool record_trace = false);

// Peeling decoder restricted to one valid cluster. Throws ContractViolation
// for an invalid cluster.
std::vector<int> peel_cluster(const DetectorGraph& g, const UfCluster& cluster, const Syndrome& s,
                              std::vector<std::pair<int, int>>* pairs = nullptr);

enum class GreedyTieRule { LowestIds, HighestIds };

// Closest-pair greedy matching over unit-weight vertex distances. Boundary
// nodes are sinks, so two active detectors are never matched through one.
Correction greedy_decode(const DetectorGraph& g, const Syndrome& s, GreedyTieRule rule = GreedyTieRule::LowestIds);

// Detector nodes flipped by a set of edges.
Syndrome syndrome_of_edges(const DetectorGraph& g, const std::vector<int>& edges);

// Whether the decoded logical readout is wrong. Throws ContractViolation when
// the correction does not reproduce the shot's syndrome.
bool logical_flip(const DetectorGraph& g, const ShotOutcome& shot, const Correction& corr);

}  // namespace uflab
