#include "uflab/detector_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

#include "uflab/frame_simulator.hpp"

namespace uflab {

namespace {

constexpr std::uint16_t kFar = std::numeric_limits<std::uint16_t>::max();

const Pauli kSinglePaulis[3] = {Pauli::X, Pauli::Z, Pauli::Y};

}  // namespace

double DetectorEdge::p_tilde(double p) const {
  return 1.0 - std::pow(1.0 - p, static_cast<double>(groups.size()));
}

DetectorGraph::DetectorGraph(const Circuit& circuit, CheckType type)
    : type_(type), distance_(circuit.code().distance()), rounds_(circuit.rounds()) {
  const SurfaceCode& code = circuit.code();
  const StabilizerType face_type = type == CheckType::ZChecks ? StabilizerType::Z : StabilizerType::X;
  const auto& typed_faces = code.faces_of(face_type);
  faces_of_type_ = static_cast<int>(typed_faces.size());
  rows_ = type == CheckType::ZChecks ? rounds_ + 1 : rounds_;
  num_detectors_ = rows_ * faces_of_type_;
  logical_support_ = type == CheckType::ZChecks ? code.logical_z_support() : code.logical_x_support();

  face_rank_.assign(code.num_faces(), -1);
  for (int i = 0; i < faces_of_type_; ++i) face_rank_[typed_faces[i]] = i;

  for (int row = 0; row < rows_; ++row) {
    for (int i = 0; i < faces_of_type_; ++i) {
      DetectorNode n;
      n.id = static_cast<int>(nodes_.size());
      n.face = typed_faces[i];
      n.row = row;
      n.synthetic = row == rounds_;
      n.meas = code.face(typed_faces[i]).meas;
      nodes_.push_back(n);
    }
  }
  for (int side = 0; side < 2; ++side) {
    DetectorNode n;
    n.id = static_cast<int>(nodes_.size());
    n.boundary = true;
    n.side = side;
    nodes_.push_back(n);
  }
  adjacency_.resize(nodes_.size());

  // Enumerate every single-Pauli fault, 64 per frame batch.
  struct Mechanism {
    int location;
    Pauli pauli;
  };
  std::vector<Mechanism> all;
  for (int loc = 0; loc < circuit.num_locations(); ++loc) {
    for (Pauli p : kSinglePaulis) all.push_back({loc, p});
  }
  mechanism_edge_.assign(static_cast<std::size_t>(circuit.num_locations()) * 4, -1);

  std::map<std::pair<int, int>, int> by_pair;
  std::vector<FaultSet> batch_faults;
  for (std::size_t start = 0; start < all.size(); start += 64) {
    const std::size_t stop = std::min(all.size(), start + 64);
    batch_faults.assign(stop - start, FaultSet{});
    for (std::size_t i = start; i < stop; ++i) batch_faults[i - start].entries.push_back({all[i].location, all[i].pauli});
    const FrameBatch batch = simulate_batch(circuit, batch_faults);

    for (std::size_t i = start; i < stop; ++i) {
      const int lane = static_cast<int>(i - start);
      std::vector<int> flipped;
      for (int row = 0; row < rows_; ++row) {
        for (int k = 0; k < faces_of_type_; ++k) {
          if (batch.lane_bit(batch.detectors, circuit.detector_index(typed_faces[k], row), lane)) {
            flipped.push_back(row * faces_of_type_ + k);
          }
        }
      }
      bool obs = false;
      const auto& readout = type == CheckType::ZChecks ? batch.final_data : batch.final_data_x;
      for (int q : logical_support_) obs ^= batch.lane_bit(readout, q, lane);

      const Mechanism& m = all[i];
      if (flipped.size() > 2) {
        throw GraphConstructionError("fault " + to_string(circuit.locations()[m.location].slot) + " at location " +
                                     std::to_string(m.location) + " flips " + std::to_string(flipped.size()) +
                                     " detectors of one type");
      }
      if (flipped.empty()) {
        // Undetectable here. For Z checks this must leave the logical readout
        // alone, otherwise the code distance would be 1.
        if (obs && type == CheckType::ZChecks) {
          throw GraphConstructionError("undetectable fault at location " + std::to_string(m.location) +
                                       " flips the logical readout");
        }
        continue;
      }
      int a = flipped[0];
      int b = flipped.size() == 2 ? flipped[1] : num_detectors_ + (obs ? 0 : 1);
      if (a > b) std::swap(a, b);
      auto [it, fresh] = by_pair.try_emplace({a, b}, static_cast<int>(edges_.size()));
      if (fresh) {
        DetectorEdge e;
        e.id = it->second;
        e.u = a;
        e.v = b;
        e.observable = obs;
        edges_.push_back(e);
        adjacency_[a].push_back({b, e.id});
        adjacency_[b].push_back({a, e.id});
      }
      DetectorEdge& e = edges_[it->second];
      if (e.observable != obs) {
        throw GraphConstructionError("edge " + std::to_string(e.id) +
                                     " mixes mechanisms with different logical effect");
      }
      e.sources.push_back(m.location);
      e.groups.push_back(circuit.locations()[m.location].op);
      e.mechanisms.push_back(m.location * 4 + static_cast<int>(m.pauli));
      mechanism_edge_[m.location * 4 + static_cast<int>(m.pauli)] = e.id;
    }
  }
  for (auto& e : edges_) {
    for (auto* list : {&e.sources, &e.groups}) {
      std::sort(list->begin(), list->end());
      list->erase(std::unique(list->begin(), list->end()), list->end());
    }
  }
  cache_.resize(edges_.size());
}

std::unique_ptr<DetectorGraph> build_detector_graph(const Circuit& circuit, CheckType type) {
  return std::make_unique<DetectorGraph>(circuit, type);
}

const DetectorEdge& DetectorGraph::edge(int id) const {
  check_edge(id);
  return edges_[id];
}

void DetectorGraph::check_edge(int e) const {
  if (e < 0 || e >= num_edges()) throw std::out_of_range("unknown edge id " + std::to_string(e));
}

int DetectorGraph::other_end(int edge, int node) const {
  const DetectorEdge& e = edges_[edge];
  return e.u == node ? e.v : e.u;
}

int DetectorGraph::detector_node(int face, int row) const {
  if (face < 0 || face >= static_cast<int>(face_rank_.size()) || face_rank_[face] < 0) return -1;
  if (row < 0 || row >= rows_) return -1;
  return row * faces_of_type_ + face_rank_[face];
}

int DetectorGraph::find_edge(int a, int b) const {
  for (const Incidence& inc : adjacency_.at(a)) {
    if (inc.neighbor == b) return inc.edge;
  }
  return -1;
}

int DetectorGraph::xi() const {
  int best = 0;
  for (const auto& e : edges_) best = std::max(best, e.multiplicity());
  return best;
}

int DetectorGraph::xi_bulk() const {
  int best = 0;
  for (const auto& e : edges_) {
    if (!is_boundary(e.v)) best = std::max(best, e.multiplicity());
  }
  return best;
}

std::vector<int> DetectorGraph::syndrome_of(const ShotOutcome& shot) const {
  std::vector<int> active;
  const int nf = static_cast<int>(face_rank_.size());
  for (int id = 0; id < num_detectors_; ++id) {
    const DetectorNode& n = nodes_[id];
    if (shot.detectors[n.row * nf + n.face]) active.push_back(id);
  }
  return active;
}

bool DetectorGraph::observable_of(const ShotOutcome& shot) const {
  const auto& readout = type_ == CheckType::ZChecks ? shot.final_data : shot.final_data_x;
  bool parity = false;
  for (int q : logical_support_) parity ^= readout[q] != 0;
  return parity;
}

std::vector<int> DetectorGraph::vertex_distances(int source) const {
  std::vector<int> dist(nodes_.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (const Incidence& inc : adjacency_[a]) {
      if (dist[inc.neighbor] < 0) {
        dist[inc.neighbor] = dist[a] + 1;
        queue.push_back(inc.neighbor);
      }
    }
  }
  return dist;
}

std::shared_ptr<const std::vector<std::uint16_t>> DetectorGraph::endpoint_distances(int e) const {
  check_edge(e);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (cache_[e]) return cache_[e];
  }
  auto dist = std::make_shared<std::vector<std::uint16_t>>(nodes_.size(), kFar);
  std::deque<int> queue;
  for (int end : {edges_[e].u, edges_[e].v}) {
    (*dist)[end] = 0;
    queue.push_back(end);
  }
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (const Incidence& inc : adjacency_[a]) {
      if ((*dist)[inc.neighbor] == kFar) {
        (*dist)[inc.neighbor] = static_cast<std::uint16_t>((*dist)[a] + 1);
        queue.push_back(inc.neighbor);
      }
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!cache_[e]) cache_[e] = std::move(dist);
  return cache_[e];
}

int DetectorGraph::edge_distance(int e, int f) const {
  check_edge(e);
  check_edge(f);
  if (e == f) return 0;
  const auto dist = endpoint_distances(e);
  const int near = std::min((*dist)[edges_[f].u], (*dist)[edges_[f].v]);
  if (near == kFar) return std::numeric_limits<int>::max();
  return near + 1;
}

std::vector<int> DetectorGraph::ball(int e, int r) const {
  check_edge(e);
  if (r < 0) throw std::invalid_argument("ball radius must be non-negative");
  std::vector<int> out;
  const auto dist = endpoint_distances(e);
  for (int f = 0; f < num_edges(); ++f) {
    if (f == e) {
      out.push_back(f);
      continue;
    }
    const int near = std::min((*dist)[edges_[f].u], (*dist)[edges_[f].v]);
    if (near != kFar && near + 1 <= r) out.push_back(f);
  }
  return out;
}

int DetectorGraph::set_diameter(const std::vector<int>& s) const {
  if (s.empty()) throw std::invalid_argument("diameter of an empty edge set");
  int best = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) best = std::max(best, edge_distance(s[i], s[j]));
  }
  return best;
}

int DetectorGraph::set_distance(const std::vector<int>& s, const std::vector<int>& t) const {
  if (s.empty() || t.empty()) throw std::invalid_argument("distance involving an empty edge set");
  int best = std::numeric_limits<int>::max();
  for (int a : s) {
    for (int b : t) best = std::min(best, edge_distance(a, b));
  }
  return best;
}

int DetectorGraph::squared_length_x4(int e) const {
  const DetectorEdge& edge = edges_.at(e);
  if (is_boundary(edge.v)) throw std::invalid_argument("boundary edges have no spacetime length");
  const DetectorNode& a = nodes_[edge.u];
  const DetectorNode& b = nodes_[edge.v];
  const int dx2 = a.meas.x2 - b.meas.x2;
  const int dy2 = a.meas.y2 - b.meas.y2;
  const int dt = a.row - b.row;
  return dx2 * dx2 + dy2 * dy2 + 4 * dt * dt;
}

LocalityCertificate verify_locality(const DetectorGraph& g, int max_radius) {
  LocalityCertificate cert;
  int longest = 0;
  for (const DetectorEdge& e : g.edges()) {
    if (g.is_boundary(e.v)) continue;
    const int len = g.squared_length_x4(e.id);
    if (len > 12) ++cert.long_edges;
    if (len > longest) {
      longest = len;
      cert.longest_edge = e.id;
    }
  }
  cert.c_observed = std::sqrt(longest / 4.0);
  cert.length_ok = longest <= 12;

  for (int n = 0; n < g.num_nodes(); ++n) {
    if (g.is_boundary(n)) {
      cert.max_boundary_degree = std::max(cert.max_boundary_degree, g.degree(n));
    } else {
      cert.max_degree = std::max(cert.max_degree, g.degree(n));
    }
  }
  cert.degree_ok = cert.max_degree <= 12;
  cert.xi_observed = g.xi();
  cert.xi_bulk = g.xi_bulk();
  cert.xi_ok = cert.xi_observed <= 10;

  cert.ball_radius_checked = max_radius;
  cert.ball_ok = true;
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto dist = g.endpoint_distances(e);
    std::vector<int> count(max_radius + 1, 0);
    for (int f = 0; f < g.num_edges(); ++f) {
      if (f == e) continue;
      const int near = std::min((*dist)[g.edge(f).u], (*dist)[g.edge(f).v]);
      if (near != kFar && near + 1 <= max_radius) count[near + 1]++;
    }
    int cumulative = 1;
    for (int r = 1; r <= max_radius; ++r) {
      cumulative += count[r];
      const double ratio = cumulative / (kLambdaSurface * r * r * r);
      cert.worst_ball_ratio = std::max(cert.worst_ball_ratio, ratio);
      if (ratio > 1.0) cert.ball_ok = false;
    }
  }
  return cert;
}

std::string to_string(CheckType t) { return t == CheckType::ZChecks ? "z-checks" : "x-checks"; }

}  // namespace uflab
