#include <algorithm>
#include <deque>
#include <tuple>

#include "uflab/decoders.hpp"

namespace uflab {

namespace {

struct Search {
  std::vector<int> dist;
  std::vector<int> parent_edge;
};

// BFS from one detector; boundary nodes are reached but never expanded.
Search search_from(const DetectorGraph& g, int source) {
  Search s;
  s.dist.assign(g.num_nodes(), -1);
  s.parent_edge.assign(g.num_nodes(), -1);
  std::deque<int> queue{source};
  s.dist[source] = 0;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    if (g.is_boundary(a)) continue;
    for (const auto& inc : g.incident(a)) {
      if (s.dist[inc.neighbor] >= 0) continue;
      s.dist[inc.neighbor] = s.dist[a] + 1;
      s.parent_edge[inc.neighbor] = inc.edge;
      queue.push_back(inc.neighbor);
    }
  }
  return s;
}

}  // namespace

Correction greedy_decode(const DetectorGraph& g, const Syndrome& s, GreedyTieRule rule) {
  Correction corr;
  if (s.empty()) return corr;
  const int n = static_cast<int>(s.size());

  std::vector<Search> searches;
  searches.reserve(n);
  for (int a : s) {
    if (a < 0 || a >= g.num_detectors()) throw std::invalid_argument("syndrome names a non-detector node");
    searches.push_back(search_from(g, a));
  }

  // (distance, low id, high id, index of the search that owns the path)
  std::vector<std::tuple<int, int, int, int>> candidates;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int dd = searches[i].dist[s[j]];
      if (dd >= 0) candidates.emplace_back(dd, std::min(s[i], s[j]), std::max(s[i], s[j]), i);
    }
    for (int b = g.num_detectors(); b < g.num_nodes(); ++b) {
      const int dd = searches[i].dist[b];
      if (dd >= 0) candidates.emplace_back(dd, s[i], b, i);
    }
  }
  if (rule == GreedyTieRule::LowestIds) {
    std::sort(candidates.begin(), candidates.end());
  } else {
    std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
      if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
      return std::make_pair(std::get<1>(x), std::get<2>(x)) > std::make_pair(std::get<1>(y), std::get<2>(y));
    });
  }

  std::vector<char> matched(g.num_nodes(), 0);
  std::vector<char> flip(g.num_edges(), 0);
  int remaining = n;
  for (const auto& [dd, lo, hi, owner] : candidates) {
    if (remaining == 0) break;
    const bool to_boundary = g.is_boundary(hi);
    if (matched[lo] || (!to_boundary && matched[hi])) continue;
    matched[lo] = 1;
    --remaining;
    if (!to_boundary) {
      matched[hi] = 1;
      --remaining;
    }
    corr.pairs.push_back({lo, hi});
    // Walk the owner's BFS tree back from the far end.
    const int source = s[owner];
    int node = source == lo ? hi : lo;
    while (node != source) {
      const int e = searches[owner].parent_edge[node];
      flip[e] ^= 1;
      node = g.other_end(e, node);
    }
  }
  if (remaining != 0) throw ContractViolation("greedy matching left a detector unmatched");
  for (int e = 0; e < g.num_edges(); ++e) {
    if (flip[e]) corr.edges.push_back(e);
  }
  return corr;
}

}  // namespace uflab
