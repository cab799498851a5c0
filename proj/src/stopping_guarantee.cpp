#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "uflab/clustering.hpp"

namespace uflab {

void StoppingReport::absorb(const StoppingReport& o) {
  rounds_checked += o.rounds_checked;
  classes_checked += o.classes_checked;
  skipped_classes += o.skipped_classes;
  merge_violations += o.merge_violations;
  margin_violations += o.margin_violations;
  round_violations += o.round_violations;
  max_overgrowth = std::max(max_overgrowth, o.max_overgrowth);
  max_reach = std::max(max_reach, o.max_reach);
  worst_margin_ratio = std::max(worst_margin_ratio, o.worst_margin_ratio);
  for (const auto& n : o.notes) {
    if (notes.size() < 20) notes.push_back(n);
  }
}

namespace {

constexpr int kUnassignedLevel = 1 << 20;

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct ErrorCluster {
  int level = 0;  // kUnassignedLevel for edges left by the decomposition
  std::vector<int> edges;
};

// Extended-cluster classes of one snapshot.
struct Classes {
  Dsu dsu;
  std::vector<char> occupied;
  std::map<int, int> level;         // class root -> highest error-cluster level inside
  std::map<int, bool> stable;       // class root -> all its UF clusters valid
  explicit Classes(int n) : dsu(n), occupied(n, 0) {}
};

class Checker {
 public:
  Checker(const DetectorGraph& g, const Syndrome& s, const DecodeTrace& trace, const ClusterDecomposition& decomp,
          const ScaleSchedule& sched)
      : g_(g), trace_(trace), sched_(sched), nd_(g.num_detectors()), n_elems_(nd_ + 2 * g.num_edges()) {
    active_.assign(g.num_nodes(), 0);
    for (int a : s) active_.at(a) = 1;
    for (const ClusterLevel& lv : decomp.levels) {
      for (const auto& c : lv.clusters) clusters_.push_back({lv.level, c});
    }
    if (!decomp.unassigned.empty()) clusters_.push_back({kUnassignedLevel, decomp.unassigned});
  }

  StoppingReport run() {
    StoppingReport rep;
    std::vector<Classes> all;
    for (std::size_t t = 0; t < trace_.snapshots.size(); ++t) all.push_back(build(trace_.snapshots[t]));
    for (std::size_t t = 0; t < all.size(); ++t) {
      ++rep.rounds_checked;
      margins(all[t], static_cast<int>(t), rep);
      if (t == 0) continue;
      merges(all[t - 1], all[t], static_cast<int>(t), rep);
      growth(all[t - 1], trace_.snapshots[t], static_cast<int>(t), rep);
    }
    return rep;
  }

 private:
  int vertex_elem(int v) const { return v; }
  int half_elem(std::size_t h) const { return nd_ + static_cast<int>(h); }

  Classes build(const GrowthSnapshot& snap) {
    Classes c(n_elems_);
    for (const ErrorCluster& ec : clusters_) {
      const int anchor = half_elem(2 * static_cast<std::size_t>(ec.edges.front()));
      for (int e : ec.edges) {
        const DetectorEdge& edge = g_.edge(e);
        for (int h = 0; h < 2; ++h) {
          c.dsu.unite(half_elem(2 * static_cast<std::size_t>(e) + h), anchor);
          c.occupied[half_elem(2 * static_cast<std::size_t>(e) + h)] = 1;
        }
        for (int end : {edge.u, edge.v}) {
          if (g_.is_boundary(end)) continue;
          c.dsu.unite(vertex_elem(end), anchor);
          c.occupied[vertex_elem(end)] = 1;
        }
      }
    }
    for (int v = 0; v < nd_; ++v) {
      const int r = snap.vertex_cluster[v];
      if (r < 0) continue;
      c.dsu.unite(vertex_elem(v), vertex_elem(r));
      c.occupied[vertex_elem(v)] = 1;
    }
    for (std::size_t h = 0; h < snap.half_owner.size(); ++h) {
      const int r = snap.half_owner[h];
      if (r < 0) continue;
      c.dsu.unite(half_elem(h), vertex_elem(r));
      c.occupied[half_elem(h)] = 1;
    }
    for (const ErrorCluster& ec : clusters_) {
      const int root = c.dsu.find(half_elem(2 * static_cast<std::size_t>(ec.edges.front())));
      auto [it, fresh] = c.level.emplace(root, ec.level);
      if (!fresh) it->second = std::max(it->second, ec.level);
    }
    for (const ClusterState& cs : snap.clusters) {
      const int root = c.dsu.find(vertex_elem(cs.root));
      c.level.emplace(root, 0);
      auto [it, fresh] = c.stable.emplace(root, cs.valid());
      if (!fresh) it->second = it->second && cs.valid();
    }
    return c;
  }

  static std::string describe(const char* what, int t, int level) {
    std::ostringstream os;
    os << what << " at round " << t << " (level " << level << ")";
    return os.str();
  }

  void note(StoppingReport& rep, std::string s) {
    if (rep.notes.size() < 20) rep.notes.push_back(std::move(s));
  }

  // (i) a growing class never merges with a class of equal or higher level.
  void merges(Classes& prev, Classes& now, int t, StoppingReport& rep) {
    std::map<int, std::vector<int>> parts;
    for (int x = 0; x < n_elems_; ++x) {
      if (!prev.occupied[x]) continue;
      auto& v = parts[now.dsu.find(x)];
      const int pc = prev.dsu.find(x);
      if (std::find(v.begin(), v.end(), pc) == v.end()) v.push_back(pc);
    }
    for (const auto& [root, constituents] : parts) {
      if (constituents.size() < 2) continue;
      bool skip = false;
      for (int a : constituents) skip = skip || prev.level[a] >= kUnassignedLevel;
      if (skip) {
        ++rep.skipped_classes;
        continue;
      }
      for (int a : constituents) {
        const auto st = prev.stable.find(a);
        const bool growing = st != prev.stable.end() && !st->second;
        if (!growing) continue;
        for (int b : constituents) {
          if (b != a && prev.level[b] >= prev.level[a]) {
            ++rep.merge_violations;
            note(rep, describe("growing class merged with an equal or higher level class", t, prev.level[a]));
          }
        }
      }
    }
  }

  // (iii) a class of level k only grows during rounds t <= d_k + 1.
  void growth(Classes& prev, const GrowthSnapshot& snap, int t, StoppingReport& rep) {
    std::vector<int> seen;
    for (int r : snap.grown) {
      const int root = prev.dsu.find(vertex_elem(r));
      if (std::find(seen.begin(), seen.end(), root) != seen.end()) continue;
      seen.push_back(root);
      const int level = prev.level[root];
      if (level >= kUnassignedLevel) {
        ++rep.skipped_classes;
        continue;
      }
      if (level < 1 || t > sched_.d(level) + 1) {
        ++rep.round_violations;
        note(rep, describe("class still growing past d_k + 1", t, level));
      }
    }
  }

  // Hop distances from a detector that never pass through a boundary node.
  const std::vector<int>& distances_from(int src) {
    auto it = bfs_.find(src);
    if (it != bfs_.end()) return it->second;
    std::vector<int> dist(g_.num_nodes(), -1);
    std::deque<int> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      if (g_.is_boundary(a)) continue;
      for (const auto& inc : g_.incident(a)) {
        if (dist[inc.neighbor] < 0) {
          dist[inc.neighbor] = dist[a] + 1;
          queue.push_back(inc.neighbor);
        }
      }
    }
    return bfs_.emplace(src, std::move(dist)).first->second;
  }

  // (ii) margin of each class against (d_k + 1) / (2 f_k), in half-edge units.
  void margins(Classes& c, int t, StoppingReport& rep) {
    std::map<int, std::vector<int>> actives;  // class root -> top-level active detectors
    for (const ErrorCluster& ec : clusters_) {
      const int root = c.dsu.find(half_elem(2 * static_cast<std::size_t>(ec.edges.front())));
      if (ec.level != c.level[root]) continue;
      auto& list = actives[root];
      for (int e : ec.edges) {
        for (int end : {g_.edge(e).u, g_.edge(e).v}) {
          if (!g_.is_boundary(end) && active_[end] && std::find(list.begin(), list.end(), end) == list.end()) {
            list.push_back(end);
          }
        }
      }
    }

    // Frontier points per class, as (vertex, offset in half-edges).
    std::map<int, std::vector<std::pair<int, int>>> frontier;
    for (int v = 0; v < nd_; ++v) {
      if (!c.occupied[vertex_elem(v)]) continue;
      for (const auto& inc : g_.incident(v)) {
        const std::size_t near = 2 * static_cast<std::size_t>(inc.edge) + (g_.edge(inc.edge).u == v ? 0 : 1);
        if (!c.occupied[half_elem(near)] || c.dsu.find(half_elem(near)) != c.dsu.find(vertex_elem(v))) {
          frontier[c.dsu.find(vertex_elem(v))].push_back({v, 0});
          break;
        }
      }
    }
    for (int e = 0; e < g_.num_edges(); ++e) {
      const bool hu = c.occupied[half_elem(2 * static_cast<std::size_t>(e))];
      const bool hv = c.occupied[half_elem(2 * static_cast<std::size_t>(e) + 1)];
      if (hu == hv) continue;
      const int side = hu ? g_.edge(e).u : g_.edge(e).v;
      const int root = c.dsu.find(half_elem(2 * static_cast<std::size_t>(e) + (hu ? 0 : 1)));
      frontier[root].push_back({side, 1});
    }

    for (auto& [root, list] : actives) {
      const int level = c.level[root];
      ++rep.classes_checked;
      if (level >= kUnassignedLevel) {
        ++rep.skipped_classes;
        continue;
      }
      const auto fit = frontier.find(root);
      if (list.empty() || fit == frontier.end() || fit->second.empty()) continue;
      constexpr int kInf = 1 << 28;
      int overgrowth = 0;
      std::vector<int> best_to_frontier(list.size(), kInf);
      for (const auto& [v, off] : fit->second) {
        int best = kInf;
        for (std::size_t i = 0; i < list.size(); ++i) {
          const int dv = distances_from(list[i])[v];
          const int dd = dv < 0 ? kInf : 2 * dv + off;
          best = std::min(best, dd);
          best_to_frontier[i] = std::min(best_to_frontier[i], dd);
        }
        overgrowth = std::max(overgrowth, best);
      }
      const int reach = *std::max_element(best_to_frontier.begin(), best_to_frontier.end());
      const double og = overgrowth / 2.0;
      const double rc = reach / 2.0;
      rep.max_overgrowth = std::max(rep.max_overgrowth, og);
      rep.max_reach = std::max(rep.max_reach, rc);
      const double bound = static_cast<double>((sched_.d(level) + 1) / (2 * sched_.f(level)));
      const double margin = std::max(og, rc);
      rep.worst_margin_ratio = std::max(rep.worst_margin_ratio, margin / bound);
      if (margin > bound + 1e-12) {
        ++rep.margin_violations;
        note(rep, describe("margin above (d_k + 1)/(2 f_k)", t, level));
      }
    }
  }

  const DetectorGraph& g_;
  const DecodeTrace& trace_;
  const ScaleSchedule& sched_;
  int nd_;
  int n_elems_;
  std::vector<char> active_;
  std::vector<ErrorCluster> clusters_;
  std::map<int, std::vector<int>> bfs_;
};

}  // namespace

StoppingReport verify_stopping_guarantee(const DetectorGraph& g, const Syndrome& s, const DecodeTrace& trace,
                                         const ClusterDecomposition& decomp, const ScaleSchedule& sched) {
  if (syndrome_of_edges(g, decomp.errors) != s) throw std::invalid_argument("decomposition and syndrome come from different shots");
  if (s.empty()) return {};
  if (trace.snapshots.empty()) throw std::invalid_argument("trace has no snapshots; decode with record_trace");
  const GrowthSnapshot& first = trace.snapshots.front();
  if (static_cast<int>(first.vertex_cluster.size()) != g.num_nodes() ||
      first.half_owner.size() != 2 * static_cast<std::size_t>(g.num_edges())) {
    throw std::invalid_argument("trace does not match the graph");
  }
  for (int v = 0; v < g.num_detectors(); ++v) {
    const bool in = first.vertex_cluster[v] >= 0;
    if (in != std::binary_search(s.begin(), s.end(), v)) throw std::invalid_argument("trace and syndrome come from different shots");
  }
  return Checker(g, s, trace, decomp, sched).run();
}

}  // namespace uflab
