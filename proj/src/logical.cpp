#include <algorithm>

#include "uflab/decoders.hpp"

namespace uflab {

Syndrome syndrome_of_edges(const DetectorGraph& g, const std::vector<int>& edges) {
  std::vector<char> flips(g.num_nodes(), 0);
  for (int e : edges) {
    const DetectorEdge& edge = g.edge(e);
    flips[edge.u] ^= 1;
    flips[edge.v] ^= 1;
  }
  Syndrome out;
  for (int n = 0; n < g.num_detectors(); ++n) {
    if (flips[n]) out.push_back(n);
  }
  return out;
}

bool logical_flip(const DetectorGraph& g, const ShotOutcome& shot, const Correction& corr) {
  if (syndrome_of_edges(g, corr.edges) != g.syndrome_of(shot)) {
    throw ContractViolation("correction does not reproduce the syndrome");
  }
  bool flip = g.observable_of(shot);
  for (int e : corr.edges) flip ^= g.edge(e).observable;
  return flip;
}

}  // namespace uflab
