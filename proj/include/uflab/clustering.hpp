#pragma once

#include <limits>
#include <string>
#include <vector>

#include "uflab/decoders.hpp"
#include "uflab/detector_graph.hpp"
#include "uflab/schedule.hpp"

namespace uflab {

// Distance between edges of some graph. Decompositions work against this
// interface so that both detector graphs and small toy graphs can be used.
class EdgeMetric {
 public:
  virtual ~EdgeMetric() = default;
  virtual int num_edges() const = 0;
  virtual int distance(int e, int f) const = 0;  // kUnreachable when disconnected
  static constexpr int kUnreachable = std::numeric_limits<int>::max();
};

class DetectorGraphMetric final : public EdgeMetric {
 public:
  explicit DetectorGraphMetric(const DetectorGraph& g) : g_(g) {}
  int num_edges() const override { return g_.num_edges(); }
  int distance(int e, int f) const override;

 private:
  const DetectorGraph& g_;
};

// Line-graph metric of an explicit small graph, all pairs precomputed.
class ExplicitGraphMetric final : public EdgeMetric {
 public:
  ExplicitGraphMetric(int num_vertices, const std::vector<std::pair<int, int>>& edges);
  // A path with `length` edges; edge i joins vertices i and i + 1.
  static ExplicitGraphMetric path(int length);

  int num_edges() const override { return num_edges_; }
  int distance(int e, int f) const override { return dist_[static_cast<std::size_t>(e) * num_edges_ + f]; }

 private:
  int num_edges_;
  std::vector<int> dist_;
};

// Edges of a shot's fault set on the graph (each fault entry's mechanism
// edge), ascending, duplicates removed.
std::vector<int> error_edges(const DetectorGraph& g, const FaultSet& faults);

struct ClusterLevel {
  int level = 0;
  long double d = 0;
  long double b = 0;
  std::vector<int> input;                    // N_{k-1}
  std::vector<std::vector<int>> clusters;    // accepted (d_k, b_k)-clusters, ascending edge ids
  std::vector<int> diameters;                // per accepted cluster
  std::vector<int> component_separation;     // per accepted cluster: distance to the rest of the input
  std::vector<int> removed;                  // union of the clusters
  std::vector<int> output;                   // N_k
};

// Level k consumes N_{k-1} with scales (d_k, b_k) and produces N_k; N_0 is the
// error set itself.
struct ClusterDecomposition {
  std::vector<int> errors;
  std::vector<ClusterLevel> levels;
  bool emptied = false;            // some N_k is empty
  bool hit_level_cap = false;      // ran out of schedule levels or reached the cap
  std::vector<int> unassigned;     // edges left after the last level

  // Level at which an edge was removed, or 0 if it never was.
  int level_of(int edge) const;
};

ClusterDecomposition decompose_clustered(const EdgeMetric& m, const std::vector<int>& errors,
                                         const ScaleSchedule& s, int max_level = 64);

struct IsolatedLevel {
  int level = 0;
  long double r = 0;  // d_k / 2
  long double R = 0;  // b_k + d_k / 2
  std::vector<int> input;    // isolated set of level k - 1
  std::vector<int> removed;  // isolated edges
  std::vector<int> output;
};

struct IsolatedDecomposition {
  std::vector<int> errors;
  std::vector<IsolatedLevel> levels;
  // Instance checks of the isolated-implies-clustered statement: for every
  // removed edge, the part of the clustered input inside B_e(r) must have
  // diameter <= 2r and separation > R - r from the rest.
  int isolation_checks = 0;
  int isolation_violations = 0;
};

IsolatedDecomposition decompose_isolated(const EdgeMetric& m, const std::vector<int>& errors,
                                         const ScaleSchedule& s, int max_level = 64);

// Whether N_k is contained in the isolated set of level k for every level.
bool clustered_within_isolated(const ClusterDecomposition& c, const IsolatedDecomposition& i);

// Exhaustive (D,B)-cluster oracle for one level: an edge of `set` is
// clustered iff some subset C containing it has diam(C) <= D and
// dist(set \ C, C) > B. Throws std::length_error for more than 20 edges.
std::vector<int> clustered_edges_bruteforce(const EdgeMetric& m, const std::vector<int>& set, long double D,
                                            long double B);

struct WitnessReport {
  int k = 0;
  int edge = -1;
  int min_size = 0;             // 0 when no witness exists
  long long expected_size = 0;  // 2^k
  long long witnesses = 0;      // subsets of minimal size
  std::vector<int> example;
  bool size_ok = false;
  bool containment_ok = false;       // every minimal witness inside B_e(d_k / 2) (k >= 1)
  bool containment_next_ok = false;  // inside B_e(d_{k+1} / 2)
  long double log10_count_bound = 0;
  bool count_ok = false;
};

// Enumerates every subset N of the toy graph's edges that contains e and
// finds the smallest ones with e in the level-k isolated set of N. Lambda
// and Delta describe the toy graph's ball growth.
WitnessReport minimal_witness_check(const EdgeMetric& m, const ScaleSchedule& s, int k, int e,
                                    long double Lambda, int Delta);

struct StoppingReport {
  int rounds_checked = 0;
  int classes_checked = 0;
  int skipped_classes = 0;  // classes holding edges no level removed
  int merge_violations = 0;
  int margin_violations = 0;
  int round_violations = 0;
  double max_overgrowth = 0;  // max over frontier points of the distance to the top-level actives
  double max_reach = 0;       // max over top-level actives of the distance to the frontier
  double worst_margin_ratio = 0;  // max Hausdorff margin / ((d_k+1)/(2 f_k))
  std::vector<std::string> notes;  // first few violations, human readable

  bool ok() const { return merge_violations == 0 && margin_violations == 0 && round_violations == 0; }
  void absorb(const StoppingReport& other);
};

// Checks a recorded UF trace against the level structure of the shot's
// errors. Extended clusters at each round are the classes of the relation
// generated by UF-cluster membership and level-k cluster membership over
// vertices and half-edges.
StoppingReport verify_stopping_guarantee(const DetectorGraph& g, const Syndrome& s, const DecodeTrace& trace,
                                         const ClusterDecomposition& decomp, const ScaleSchedule& sched);

}  // namespace uflab
