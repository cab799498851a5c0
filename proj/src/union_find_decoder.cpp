#include <algorithm>
#include <deque>
#include <unordered_map>

#include "uflab/decoders.hpp"

namespace uflab {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n), size_(n, 1) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  int find(int x) {
    int root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const int next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // Weighted union; returns (surviving root, absorbed root).
  std::pair<int, int> unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (size_[a] < size_[b] || (size_[a] == size_[b] && b < a)) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return {a, b};
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

struct ClusterData {
  int parity = 0;
  bool touches_boundary = false;
  std::vector<int> members;
  std::vector<int> grew;
};

std::vector<int> peel_impl(const DetectorGraph& g, const UfCluster& cluster, const std::vector<char>& active,
                           std::vector<std::pair<int, int>>* pairs) {
  if (!cluster.valid()) throw ContractViolation("peeling an invalid cluster");
  if (cluster.vertices.empty()) return {};

  // Local indices; all boundary nodes collapse into one super-root at 0.
  std::unordered_map<int, int> local;
  std::vector<int> node_of;
  const bool rooted_at_boundary = cluster.touches_boundary;
  if (rooted_at_boundary) node_of.push_back(-1);
  std::vector<int> verts = cluster.vertices;
  std::sort(verts.begin(), verts.end());
  for (int v : verts) {
    local[v] = static_cast<int>(node_of.size());
    node_of.push_back(v);
  }
  auto index_of = [&](int node) { return g.is_boundary(node) ? 0 : local.at(node); };

  std::vector<std::vector<std::pair<int, int>>> adj(node_of.size());
  std::vector<int> edges = cluster.full_edges;
  std::sort(edges.begin(), edges.end());
  for (int e : edges) {
    const DetectorEdge& edge = g.edge(e);
    if (g.is_boundary(edge.v) && !rooted_at_boundary) throw ContractViolation("boundary edge in a cluster without boundary");
    const int a = index_of(edge.u);
    const int b = index_of(edge.v);
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }

  const int n = static_cast<int>(node_of.size());
  std::vector<int> parent(n, -1), parent_edge(n, -1), order;
  std::vector<char> seen(n, 0);
  order.reserve(n);
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    order.push_back(a);
    for (auto [b, e] : adj[a]) {
      if (seen[b]) continue;
      seen[b] = 1;
      parent[b] = a;
      parent_edge[b] = e;
      queue.push_back(b);
    }
  }
  if (static_cast<int>(order.size()) != n) throw ContractViolation("cluster is not connected by its grown edges");

  // token[i] is the original active detector whose excitation sits at i.
  std::vector<int> token(n, -1);
  for (int i = 0; i < n; ++i) {
    if (node_of[i] >= 0 && active[node_of[i]]) token[i] = node_of[i];
  }
  std::vector<int> chosen;
  for (int k = n - 1; k > 0; --k) {
    const int i = order[k];
    if (token[i] < 0) continue;
    chosen.push_back(parent_edge[i]);
    const int p = parent[i];
    if (p == 0 && rooted_at_boundary) {
      if (pairs) pairs->push_back({token[i], g.edge(parent_edge[i]).v});
    } else if (token[p] >= 0) {
      if (pairs) pairs->push_back({std::min(token[i], token[p]), std::max(token[i], token[p])});
      token[p] = -1;
    } else {
      token[p] = token[i];
    }
    token[i] = -1;
  }
  if (!rooted_at_boundary && token[0] >= 0) throw ContractViolation("peeling left an unmatched detector");
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

std::vector<int> peel_cluster(const DetectorGraph& g, const UfCluster& cluster, const Syndrome& s,
                              std::vector<std::pair<int, int>>* pairs) {
  std::vector<char> active(g.num_nodes(), 0);
  for (int a : s) active.at(a) = 1;
  return peel_impl(g, cluster, active, pairs);
}

UfResult uf_decode(const DetectorGraph& g, const Syndrome& s, bool record_trace) {
  const int V = g.num_nodes();
  const int E = g.num_edges();
  UfResult result;

  std::vector<char> active(V, 0), in_cluster(V, 0);
  for (int a : s) {
    if (a < 0 || a >= g.num_detectors()) throw std::invalid_argument("syndrome names a non-detector node");
    if (active[a]) throw std::invalid_argument("syndrome lists a detector twice");
    active[a] = 1;
  }

  DisjointSets dsu(V);
  std::unordered_map<int, ClusterData> clusters;
  for (int a : s) {
    in_cluster[a] = 1;
    ClusterData& c = clusters[a];
    c.parity = 1;
    c.members.push_back(a);
  }

  std::vector<char> half(2 * static_cast<std::size_t>(E), 0);
  std::vector<int> grower(2 * static_cast<std::size_t>(E), -1);
  std::vector<int> full_edges;

  auto sorted_roots = [&] {
    std::vector<int> roots;
    roots.reserve(clusters.size());
    for (const auto& [r, c] : clusters) roots.push_back(r);
    std::sort(roots.begin(), roots.end());
    return roots;
  };

  auto snapshot = [&](int round, std::vector<int> grown, std::vector<MergeEvent> merges) {
    GrowthSnapshot snap;
    snap.round = round;
    snap.vertex_cluster.assign(V, -1);
    for (int v = 0; v < V; ++v) {
      if (in_cluster[v]) snap.vertex_cluster[v] = dsu.find(v);
    }
    snap.half_owner.assign(2 * static_cast<std::size_t>(E), -1);
    for (std::size_t h = 0; h < half.size(); ++h) {
      if (half[h]) snap.half_owner[h] = dsu.find(grower[h]);
    }
    for (int r : sorted_roots()) {
      const ClusterData& c = clusters.at(r);
      snap.clusters.push_back({r, c.parity, c.touches_boundary, static_cast<int>(c.members.size())});
    }
    snap.grown = std::move(grown);
    snap.merges = std::move(merges);
    result.trace.snapshots.push_back(std::move(snap));
  };

  auto join = [&](int a, int b) {
    auto [keep, gone] = dsu.unite(a, b);
    ClusterData& into = clusters[keep];
    ClusterData& from = clusters[gone];
    if (into.members.size() < from.members.size()) {
      std::swap(into.members, from.members);
      std::swap(into.grew, from.grew);
    }
    into.members.insert(into.members.end(), from.members.begin(), from.members.end());
    into.grew.insert(into.grew.end(), from.grew.begin(), from.grew.end());
    into.parity ^= from.parity;
    into.touches_boundary = into.touches_boundary || from.touches_boundary;
    clusters.erase(gone);
    return keep;
  };

  if (record_trace) snapshot(0, {}, {});

  int round = 0;
  std::vector<std::pair<int, int>> requests;
  std::vector<int> newly_full;
  while (true) {
    std::vector<int> invalid;
    for (int r : sorted_roots()) {
      const ClusterData& c = clusters.at(r);
      if (c.parity == 1 && !c.touches_boundary) invalid.push_back(r);
    }
    if (invalid.empty()) break;
    ++round;

    requests.clear();
    for (int r : invalid) {
      ClusterData& c = clusters.at(r);
      c.grew.push_back(round);
      for (int v : c.members) {
        for (const auto& inc : g.incident(v)) requests.push_back({inc.edge, v});
      }
    }
    newly_full.clear();
    bool progressed = false;
    for (auto [e, w] : requests) {
      const std::size_t near = 2 * static_cast<std::size_t>(e) + (g.edges()[e].u == w ? 0 : 1);
      const std::size_t far = near ^ 1u;
      std::size_t target;
      if (!half[near]) {
        target = near;
      } else if (!half[far]) {
        target = far;
      } else {
        continue;
      }
      half[target] = 1;
      grower[target] = w;
      progressed = true;
      if (half[near] && half[far]) newly_full.push_back(e);
    }
    if (!progressed) throw ContractViolation("an invalid cluster cannot grow any further");

    std::sort(newly_full.begin(), newly_full.end());
    std::vector<MergeEvent> merges;
    for (int e : newly_full) {
      full_edges.push_back(e);
      const DetectorEdge& edge = g.edges()[e];
      if (g.is_boundary(edge.v)) {
        clusters.at(dsu.find(edge.u)).touches_boundary = true;
        continue;
      }
      int a = edge.u;
      int b = edge.v;
      if (!in_cluster[a]) std::swap(a, b);
      if (!in_cluster[b]) {
        in_cluster[b] = 1;
        const int ra = dsu.find(a);
        clusters[b].members.push_back(b);
        join(ra, b);
        continue;
      }
      const int ra = dsu.find(a);
      const int rb = dsu.find(b);
      if (ra == rb) continue;
      MergeEvent ev;
      ev.round = round;
      ev.a = std::min(ra, rb);
      ev.b = std::max(ra, rb);
      ev.parity_a = clusters.at(ev.a).parity;
      ev.parity_b = clusters.at(ev.b).parity;
      ev.result = join(ra, rb);
      ev.parity_result = clusters.at(ev.result).parity;
      merges.push_back(ev);
    }
    if (record_trace) snapshot(round, invalid, std::move(merges));
  }
  result.trace.rounds = round;

  // Assign full edges to their clusters and peel.
  std::unordered_map<int, std::size_t> slot;
  for (int r : sorted_roots()) {
    UfCluster c;
    c.root = r;
    const ClusterData& data = clusters.at(r);
    c.vertices = data.members;
    std::sort(c.vertices.begin(), c.vertices.end());
    c.parity = data.parity;
    c.touches_boundary = data.touches_boundary;
    slot[r] = result.clusters.size();
    result.clusters.push_back(std::move(c));

    std::vector<int> grew = data.grew;
    std::sort(grew.begin(), grew.end());
    grew.erase(std::unique(grew.begin(), grew.end()), grew.end());
    result.cluster_growth_rounds.push_back(static_cast<int>(grew.size()));
    result.trace.growth_stop.push_back({r, grew.empty() ? 0 : grew.back()});
  }
  for (int e : full_edges) {
    result.clusters[slot.at(dsu.find(g.edges()[e].u))].full_edges.push_back(e);
  }
  for (const UfCluster& c : result.clusters) {
    auto part = peel_impl(g, c, active, &result.correction.pairs);
    result.correction.edges.insert(result.correction.edges.end(), part.begin(), part.end());
  }
  std::sort(result.correction.edges.begin(), result.correction.edges.end());
  result.trace.peeled = result.correction.edges;
  return result;
}

}  // namespace uflab
