#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "uflab/circuit.hpp"

namespace uflab {

// Which detectors a graph is built from. ZChecks detectors (Z faces) see X
// errors and decide the logical Z readout of the memory experiment.
enum class CheckType : std::uint8_t { ZChecks, XChecks };

struct DetectorNode {
  int id = 0;
  bool boundary = false;
  int face = -1;        // face index, -1 for boundary nodes
  int row = -1;         // detector row, -1 for boundary nodes
  int side = -1;        // 0 or 1 for boundary nodes
  bool synthetic = false;  // closing row built from the data readout
  Coord meas;          // spatial coordinate of the face
};

struct DetectorEdge {
  int id = 0;
  int u = 0;  // u < v; a boundary node, if any, is v
  int v = 0;
  std::vector<int> sources;     // distinct fault-location ids
  std::vector<int> groups;      // distinct noise groups (ops) behind the sources
  std::vector<int> mechanisms;  // location * 4 + Pauli code
  bool observable = false;      // whether the mechanisms flip the logical readout

  bool is_boundary_edge(int num_detectors) const { return v >= num_detectors; }
  // Each noise group is afflicted with probability p, so the edge fires with
  // probability at most 1 - (1 - p)^groups <= groups * p.
  int multiplicity() const { return static_cast<int>(groups.size()); }
  double p_tilde(double p) const;
};

class GraphConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DetectorGraph {
 public:
  DetectorGraph(const Circuit& circuit, CheckType type);

  DetectorGraph(const DetectorGraph&) = delete;
  DetectorGraph& operator=(const DetectorGraph&) = delete;

  CheckType type() const { return type_; }
  int distance() const { return distance_; }
  int rounds() const { return rounds_; }
  int rows() const { return rows_; }

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_detectors() const { return num_detectors_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool is_boundary(int node) const { return node >= num_detectors_; }

  const std::vector<DetectorNode>& nodes() const { return nodes_; }
  const DetectorNode& node(int id) const { return nodes_.at(id); }
  const std::vector<DetectorEdge>& edges() const { return edges_; }
  const DetectorEdge& edge(int id) const;

  struct Incidence {
    int neighbor;
    int edge;
  };
  const std::vector<Incidence>& incident(int node) const { return adjacency_[node]; }
  int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }
  int other_end(int edge, int node) const;

  // Node for (face, row), or -1 when the face is of the other type.
  int detector_node(int face, int row) const;
  // Edge hit by a single Pauli at a location; -1 if it flips no detector.
  int mechanism_edge(int location, Pauli p) const { return mechanism_edge_[location * 4 + static_cast<int>(p)]; }
  // Edge joining two nodes, or -1.
  int find_edge(int a, int b) const;

  // Largest number of noise groups merged into a single edge.
  int xi() const;
  // The same, restricted to edges between two detectors.
  int xi_bulk() const;

  // Active detector nodes of a shot, ascending.
  std::vector<int> syndrome_of(const ShotOutcome& shot) const;
  // Observable parity of a shot: logical Z on x = 0 for ZChecks, logical X on
  // y = 0 (from the Z frame of the data at the end) for XChecks.
  bool observable_of(const ShotOutcome& shot) const;

  // Line-graph distance: 0 for equal edges, otherwise one more than the
  // smallest vertex distance between their endpoints.
  int edge_distance(int e, int f) const;
  std::vector<int> ball(int e, int r) const;
  int set_diameter(const std::vector<int>& s) const;
  int set_distance(const std::vector<int>& s, const std::vector<int>& t) const;

  // Hop distances from the endpoints of edge e to every node; memoised.
  std::shared_ptr<const std::vector<std::uint16_t>> endpoint_distances(int e) const;
  // Plain vertex BFS distances from a node.
  std::vector<int> vertex_distances(int source) const;

  // Squared spacetime length of a detector-detector edge in quarter units:
  // 4 * (dx^2 + dy^2 + dt^2).
  int squared_length_x4(int e) const;

 private:
  void check_edge(int e) const;

  CheckType type_;
  int distance_;
  int rounds_;
  int rows_;
  int faces_of_type_;
  int num_detectors_ = 0;
  std::vector<int> face_rank_;  // face index -> rank within its type, -1 otherwise
  std::vector<int> logical_support_;
  std::vector<DetectorNode> nodes_;
  std::vector<DetectorEdge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<int> mechanism_edge_;

  mutable std::mutex cache_mutex_;
  mutable std::vector<std::shared_ptr<const std::vector<std::uint16_t>>> cache_;
};

std::unique_ptr<DetectorGraph> build_detector_graph(const Circuit& circuit, CheckType type);

struct LocalityCertificate {
  double c_observed = 0.0;
  int long_edges = 0;  // detector-detector edges longer than sqrt(3)
  int longest_edge = -1;
  int max_degree = 0;           // over detector nodes
  int max_boundary_degree = 0;  // reported only
  int xi_observed = 0;
  int xi_bulk = 0;  // over detector-detector edges
  int ball_radius_checked = 0;
  double worst_ball_ratio = 0.0;  // max |B_e(r)| / (Lambda r^3)

  bool length_ok = false;
  bool degree_ok = false;
  bool xi_ok = false;
  bool ball_ok = false;

  bool all_ok() const { return length_ok && degree_ok && xi_ok && ball_ok; }
};

inline constexpr double kLambdaSurface = 48.0 * 1.7320508075688772 * 3.14159265358979323846;
inline constexpr int kDeltaSurface = 3;

LocalityCertificate verify_locality(const DetectorGraph& g, int max_radius);

std::string to_string(CheckType t);

}  // namespace uflab
