#include "uflab/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uflab/frame_simulator.hpp"

namespace uflab {

namespace {

void split(int start, int length, int depth, bool rightmost, CantorSplit& out) {
  if (rightmost) out.rightmost.push_back(length);
  if (length < 5) {
    out.segments.push_back({start, length});
    out.depth = std::max(out.depth, depth);
    return;
  }
  const int middle = (length - 2) / 3;
  const int left = (length - middle) / 2;
  const int right = length - middle - left;
  if (!(middle < left && left <= right)) out.order_ok = false;
  split(start, left, depth + 1, false, out);
  split(start + left + middle, right, depth + 1, rightmost, out);
}

}  // namespace

CantorSplit cantor_decompose(int length) {
  if (length < 1) throw std::invalid_argument("segment length must be positive");
  CantorSplit out;
  split(0, length, 0, true, out);
  return out;
}

double cantor_error_bound(int d) {
  const double log3 = std::log(3.0);
  return std::pow(2.0, std::log(108.0 / 13.0) / log3) * std::pow(d - 0.75, std::log(2.0) / log3);
}

CantorPattern cantor_pattern(const Circuit& circuit, const DetectorGraph& g) {
  if (g.type() != CheckType::ZChecks) throw PatternConstructionError("the chain lives in the ZChecks graph");
  if (circuit.rounds() < 2) throw PatternConstructionError("the chain needs at least two rounds");
  const SurfaceCode& code = circuit.code();
  const int d = code.distance();

  CantorPattern p;
  p.d = d;
  p.round = circuit.rounds() / 2;
  p.row = (d - 1) / 2;

  // The step-0 idle location of each data qubit on the chain row.
  p.chain_locations.assign(d, -1);
  for (const FaultLocation& loc : circuit.locations()) {
    const CircuitOp& op = circuit.ops()[loc.op];
    if (op.round != p.round || op.step != kResetStep || !circuit.is_data(loc.qubit)) continue;
    for (int x = 0; x < d; ++x) {
      if (loc.qubit == code.data_index(x, p.row)) p.chain_locations[x] = loc.id;
    }
  }
  for (int x = 0; x < d; ++x) {
    if (p.chain_locations[x] < 0) throw PatternConstructionError("missing idle location on the chain row");
    const int e = g.mechanism_edge(p.chain_locations[x], Pauli::X);
    if (e < 0) throw PatternConstructionError("chain fault flips no detector");
    p.chain.push_back(e);
  }

  const DetectorEdge& first = g.edge(p.chain.front());
  if (!g.is_boundary(first.v) || !first.observable) throw PatternConstructionError("chain does not start on the observable side");
  p.chain_nodes.push_back(first.v);
  for (int e : p.chain) {
    const DetectorEdge& edge = g.edge(e);
    const int here = p.chain_nodes.back();
    if (edge.u != here && edge.v != here) throw PatternConstructionError("chain edges are not consecutive");
    p.chain_nodes.push_back(g.other_end(e, here));
  }
  if (!g.is_boundary(p.chain_nodes.back()) || p.chain_nodes.back() == p.chain_nodes.front()) {
    throw PatternConstructionError("chain does not end on the far boundary");
  }

  for (int i = 0; i <= d; ++i) {
    const std::vector<int> dist = g.vertex_distances(p.chain_nodes[i]);
    for (int j = i + 1; j <= d; ++j) {
      if (dist[p.chain_nodes[j]] != j - i) {
        throw PatternConstructionError("chain is not a geodesic between nodes " + std::to_string(i) + " and " +
                                       std::to_string(j));
      }
    }
  }

  p.split = cantor_decompose(d);
  p.segments = p.split.segments;
  for (const Segment& s : p.segments) {
    for (int i = s.start; i < s.start + s.length; ++i) {
      p.error_edges.push_back(p.chain[i]);
      p.faults.entries.push_back({p.chain_locations[i], Pauli::X});
    }
  }
  std::sort(p.error_edges.begin(), p.error_edges.end());
  std::sort(p.faults.entries.begin(), p.faults.entries.end(),
            [](const FaultEntry& a, const FaultEntry& b) { return a.location < b.location; });
  p.N = static_cast<int>(p.error_edges.size());
  return p;
}

GreedyFailureReport verify_greedy_failure(const Circuit& circuit, const DetectorGraph& g, const CantorPattern& pattern) {
  GreedyFailureReport r;
  const ShotOutcome shot = simulate_shot(circuit, pattern.faults);
  const Syndrome s = g.syndrome_of(shot);

  const Correction low = greedy_decode(g, s, GreedyTieRule::LowestIds);
  r.greedy_flip = logical_flip(g, shot, low);
  r.greedy_flip_highest = logical_flip(g, shot, greedy_decode(g, s, GreedyTieRule::HighestIds));

  std::vector<int> complement;
  for (int e : pattern.chain) {
    if (!std::binary_search(pattern.error_edges.begin(), pattern.error_edges.end(), e)) complement.push_back(e);
  }
  std::sort(complement.begin(), complement.end());
  r.complement_edges_ok = low.edges == complement;

  // Each gap between consecutive kept segments should be matched end to end.
  std::vector<std::pair<int, int>> gaps;
  for (std::size_t i = 0; i + 1 < pattern.segments.size(); ++i) {
    const int a = pattern.chain_nodes[pattern.segments[i].start + pattern.segments[i].length];
    const int b = pattern.chain_nodes[pattern.segments[i + 1].start];
    gaps.push_back({std::min(a, b), std::max(a, b)});
  }
  std::vector<std::pair<int, int>> pairs = low.pairs;
  std::sort(gaps.begin(), gaps.end());
  std::sort(pairs.begin(), pairs.end());
  r.complement_ok = pairs == gaps;

  r.uf_applicable = pattern.N <= (pattern.d - 1) / 2;
  r.uf_flip = logical_flip(g, shot, uf_decode(g, s).correction);
  return r;
}

}  // namespace uflab
