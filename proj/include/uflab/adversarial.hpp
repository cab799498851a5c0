#pragma once

#include <stdexcept>
#include <vector>

#include "uflab/decoders.hpp"
#include "uflab/detector_graph.hpp"

namespace uflab {

struct Segment {
  int start = 0;
  int length = 0;
  bool operator==(const Segment&) const = default;
};

struct CantorSplit {
  std::vector<Segment> segments;  // kept segments in position order
  int depth = 0;                  // deepest split level reached
  bool order_ok = true;           // middle < left <= right at every split
  std::vector<int> rightmost;     // lengths along the rightmost branch, starting with the input length
};

// Splits [0, length) into left, middle and right parts of lengths
// floor((L - m)/2), m = floor((L - 2)/3) and ceil((L - m)/2), drops the
// middle and recurses on both sides while a part has length >= 5.
CantorSplit cantor_decompose(int length);

// 2^{log_3(108/13)} (d - 3/4)^{log_3 2}
double cantor_error_bound(int d);

class PatternConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CantorPattern {
  int d = 0;
  int round = 0;  // round whose step-0 data idles carry the errors
  int row = 0;    // data row y of the chain
  std::vector<int> chain;        // edge ids from the observable side to the other side
  std::vector<int> chain_nodes;  // d + 1 nodes, boundary nodes at both ends
  std::vector<int> chain_locations;  // fault location per chain edge
  std::vector<Segment> segments;
  std::vector<int> error_edges;  // ascending
  int N = 0;
  FaultSet faults;
  CantorSplit split;
};

// Builds the chain of X errors on data row (d-1)/2 at step 0 of the middle
// round, checks that it is a geodesic of the detector graph, and keeps the
// errors on the Cantor segments. Needs a ZChecks graph with rounds >= 2.
CantorPattern cantor_pattern(const Circuit& circuit, const DetectorGraph& g);

struct GreedyFailureReport {
  bool greedy_flip = false;         // LowestIds tie rule
  bool greedy_flip_highest = false; // HighestIds tie rule
  bool complement_ok = false;       // greedy pairs are exactly the endpoints of the chain gaps
  bool complement_edges_ok = false; // greedy correction uses the chain's own gap edges
  bool uf_applicable = false;       // N <= floor((d-1)/2)
  bool uf_flip = false;
};

GreedyFailureReport verify_greedy_failure(const Circuit& circuit, const DetectorGraph& g, const CantorPattern& pattern);

}  // namespace uflab
