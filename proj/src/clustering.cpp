#include "uflab/clustering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace uflab {

int DetectorGraphMetric::distance(int e, int f) const { return g_.edge_distance(e, f); }

ExplicitGraphMetric::ExplicitGraphMetric(int num_vertices, const std::vector<std::pair<int, int>>& edges)
    : num_edges_(static_cast<int>(edges.size())) {
  std::vector<std::vector<int>> adj(num_vertices);
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices) throw std::invalid_argument("edge endpoint out of range");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  dist_.assign(static_cast<std::size_t>(num_edges_) * num_edges_, kUnreachable);
  std::vector<int> vd(num_vertices);
  for (int e = 0; e < num_edges_; ++e) {
    std::fill(vd.begin(), vd.end(), -1);
    std::deque<int> queue;
    for (int end : {edges[e].first, edges[e].second}) {
      vd[end] = 0;
      queue.push_back(end);
    }
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      for (int b : adj[a]) {
        if (vd[b] < 0) {
          vd[b] = vd[a] + 1;
          queue.push_back(b);
        }
      }
    }
    for (int f = 0; f < num_edges_; ++f) {
      int& slot = dist_[static_cast<std::size_t>(e) * num_edges_ + f];
      if (e == f) {
        slot = 0;
        continue;
      }
      const int near = std::min(vd[edges[f].first] < 0 ? kUnreachable : vd[edges[f].first],
                                vd[edges[f].second] < 0 ? kUnreachable : vd[edges[f].second]);
      slot = near == kUnreachable ? kUnreachable : near + 1;
    }
  }
}

ExplicitGraphMetric ExplicitGraphMetric::path(int length) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < length; ++i) edges.push_back({i, i + 1});
  return ExplicitGraphMetric(length + 1, edges);
}

std::vector<int> error_edges(const DetectorGraph& g, const FaultSet& faults) {
  std::vector<int> hit;
  for (const FaultEntry& f : faults.entries) {
    const int e = g.mechanism_edge(f.location, f.pauli);
    if (e >= 0) hit.push_back(e);
  }
  std::sort(hit.begin(), hit.end());
  // An edge hit an even number of times cancels out.
  std::vector<int> out;
  for (std::size_t i = 0; i < hit.size();) {
    std::size_t j = i;
    while (j < hit.size() && hit[j] == hit[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(hit[i]);
    i = j;
  }
  return out;
}

int ClusterDecomposition::level_of(int edge) const {
  for (const ClusterLevel& lv : levels) {
    if (std::binary_search(lv.removed.begin(), lv.removed.end(), edge)) return lv.level;
  }
  return 0;
}

namespace {

void check_edges(const EdgeMetric& m, const std::vector<int>& errors) {
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i] < 0 || errors[i] >= m.num_edges()) throw std::invalid_argument("error set names a non-edge");
    if (i > 0 && errors[i] <= errors[i - 1]) throw std::invalid_argument("error set must be strictly ascending");
  }
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool within(int dist, long double bound) { return dist != EdgeMetric::kUnreachable && dist <= bound; }

}  // namespace

ClusterDecomposition decompose_clustered(const EdgeMetric& m, const std::vector<int>& errors,
                                         const ScaleSchedule& s, int max_level) {
  check_edges(m, errors);
  ClusterDecomposition out;
  out.errors = errors;
  std::vector<int> current = errors;
  const int top = std::min(max_level, s.levels());
  for (int k = 1; k <= top && !current.empty(); ++k) {
    ClusterLevel lv;
    lv.level = k;
    lv.d = s.d(k);
    lv.b = s.b(k);
    lv.input = current;
    const int n = static_cast<int>(current.size());

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (within(m.distance(current[i], current[j]), lv.b)) parent[find(i)] = find(j);
      }
    }
    std::vector<std::vector<int>> comps(n);
    for (int i = 0; i < n; ++i) comps[find(i)].push_back(i);
    for (const auto& comp : comps) {
      if (comp.empty()) continue;
      int diam = 0;
      for (std::size_t a = 0; a < comp.size(); ++a) {
        for (std::size_t b = a + 1; b < comp.size(); ++b) {
          diam = std::max(diam, m.distance(current[comp[a]], current[comp[b]]));
        }
      }
      if (!within(diam, lv.d)) continue;
      std::vector<int> cluster;
      for (int i : comp) cluster.push_back(current[i]);
      int sep = EdgeMetric::kUnreachable;
      for (int i = 0; i < n; ++i) {
        if (find(i) == find(comp.front())) continue;
        for (int j : comp) sep = std::min(sep, m.distance(current[i], current[j]));
      }
      lv.clusters.push_back(cluster);
      lv.diameters.push_back(diam);
      lv.component_separation.push_back(sep);
      lv.removed.insert(lv.removed.end(), cluster.begin(), cluster.end());
    }
    // Deterministic order: clusters by their smallest edge.
    std::vector<std::size_t> idx(lv.clusters.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return lv.clusters[a] < lv.clusters[b]; });
    ClusterLevel sorted = lv;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      sorted.clusters[i] = lv.clusters[idx[i]];
      sorted.diameters[i] = lv.diameters[idx[i]];
      sorted.component_separation[i] = lv.component_separation[idx[i]];
    }
    std::sort(sorted.removed.begin(), sorted.removed.end());
    sorted.output = minus(current, sorted.removed);
    current = sorted.output;
    out.levels.push_back(std::move(sorted));
  }
  out.emptied = current.empty();
  out.hit_level_cap = !current.empty();
  out.unassigned = current;
  return out;
}

IsolatedDecomposition decompose_isolated(const EdgeMetric& m, const std::vector<int>& errors,
                                         const ScaleSchedule& s, int max_level) {
  check_edges(m, errors);
  IsolatedDecomposition out;
  out.errors = errors;
  std::vector<int> current = errors;
  const int top = std::min(max_level, s.levels());
  for (int k = 1; k <= top && !current.empty(); ++k) {
    IsolatedLevel lv;
    lv.level = k;
    lv.r = s.d(k) / 2;
    lv.R = s.b(k) + s.d(k) / 2;
    lv.input = current;
    for (int e : current) {
      bool isolated = true;
      for (int f : current) {
        const int dist = m.distance(e, f);
        if (f != e && dist != EdgeMetric::kUnreachable && dist > lv.r && dist <= lv.R) {
          isolated = false;
          break;
        }
      }
      if (!isolated) continue;
      lv.removed.push_back(e);

      // Isolation in a set implies being (2r, R - r)-clustered in it.
      std::vector<int> inner, outer;
      for (int f : current) (within(m.distance(e, f), lv.r) ? inner : outer).push_back(f);
      bool ok = true;
      for (int a : inner) {
        for (int b : inner) {
          if (!within(m.distance(a, b), 2 * lv.r)) ok = false;
        }
        for (int b : outer) {
          if (within(m.distance(a, b), lv.R - lv.r)) ok = false;
        }
      }
      ++out.isolation_checks;
      if (!ok) ++out.isolation_violations;
    }
    lv.output = minus(current, lv.removed);
    current = lv.output;
    out.levels.push_back(std::move(lv));
  }
  return out;
}

bool clustered_within_isolated(const ClusterDecomposition& c, const IsolatedDecomposition& i) {
  const std::size_t levels = std::max(c.levels.size(), i.levels.size());
  for (std::size_t k = 0; k < levels; ++k) {
    const std::vector<int>& clustered = k < c.levels.size() ? c.levels[k].output : c.unassigned;
    const std::vector<int>& isolated = k < i.levels.size() ? i.levels[k].output : (i.levels.empty() ? i.errors : i.levels.back().output);
    if (!std::includes(isolated.begin(), isolated.end(), clustered.begin(), clustered.end())) return false;
  }
  return true;
}

std::vector<int> clustered_edges_bruteforce(const EdgeMetric& m, const std::vector<int>& set, long double D,
                                            long double B) {
  const int n = static_cast<int>(set.size());
  if (n > 20) throw std::length_error("brute-force cluster oracle is limited to 20 edges");
  std::vector<char> hit(n, 0);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (int j = 0; j < n && ok; ++j) {
        const int dist = m.distance(set[i], set[j]);
        if (mask >> j & 1u) {
          if (j > i && !within(dist, D)) ok = false;
        } else if (within(dist, B)) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1u) hit[i] = 1;
    }
  }
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (hit[i]) out.push_back(set[i]);
  }
  return out;
}

namespace {

// Whether e survives k levels of isolated-edge removal starting from `set`.
bool in_isolated_set(const EdgeMetric& m, std::vector<int> set, const ScaleSchedule& s, int k, int e) {
  for (int level = 1; level <= k; ++level) {
    const long double r = s.d(level) / 2;
    const long double R = s.b(level) + s.d(level) / 2;
    std::vector<int> next;
    for (int a : set) {
      for (int b : set) {
        const int dist = m.distance(a, b);
        if (b != a && dist != EdgeMetric::kUnreachable && dist > r && dist <= R) {
          next.push_back(a);
          break;
        }
      }
    }
    set = std::move(next);
    if (!std::binary_search(set.begin(), set.end(), e)) return false;
  }
  return true;
}

}  // namespace

WitnessReport minimal_witness_check(const EdgeMetric& m, const ScaleSchedule& s, int k, int e, long double Lambda,
                                    int Delta) {
  if (m.num_edges() > 20) throw std::length_error("witness enumeration is limited to 20 edges");
  if (k < 0 || k > s.levels()) throw std::out_of_range("level outside the schedule");
  if (e < 0 || e >= m.num_edges()) throw std::invalid_argument("edge out of range");
  WitnessReport rep;
  rep.k = k;
  rep.edge = e;
  rep.expected_size = 1LL << k;
  for (int j = 0; j < k; ++j) {
    const int lvl = k - j;
    rep.log10_count_bound += std::ldexp(1.0L, j) * (std::log10(Lambda) + Delta * std::log10(s.b(lvl) + s.d(lvl) / 2));
  }

  std::vector<int> others;
  for (int f = 0; f < m.num_edges(); ++f) {
    if (f != e) others.push_back(f);
  }
  const int n = static_cast<int>(others.size());
  rep.containment_ok = true;
  rep.containment_next_ok = true;
  for (int extra = 0; extra <= n && rep.min_size == 0; ++extra) {
    // Enumerate all masks of popcount `extra` (Gosper's hack).
    if (extra == 0) {
      if (in_isolated_set(m, {e}, s, k, e)) {
        rep.min_size = 1;
        rep.witnesses = 1;
        rep.example = {e};
      }
      continue;
    }
    std::uint32_t mask = (1u << extra) - 1;
    const std::uint32_t limit = 1u << n;
    while (mask < limit) {
      std::vector<int> set{e};
      for (int i = 0; i < n; ++i) {
        if (mask >> i & 1u) set.push_back(others[i]);
      }
      std::sort(set.begin(), set.end());
      if (in_isolated_set(m, set, s, k, e)) {
        if (rep.witnesses == 0) rep.example = set;
        ++rep.witnesses;
        rep.min_size = extra + 1;
        for (int f : set) {
          if (k >= 1 && !within(m.distance(e, f), s.d(k) / 2)) rep.containment_ok = false;
          if (k + 1 <= s.levels() && !within(m.distance(e, f), s.d(k + 1) / 2)) rep.containment_next_ok = false;
        }
      }
      const std::uint32_t c = mask & -mask;
      const std::uint32_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  if (rep.min_size == 0) {
    rep.containment_ok = false;
    rep.containment_next_ok = false;
  }
  rep.size_ok = rep.min_size == rep.expected_size;
  rep.count_ok = rep.witnesses > 0 && std::log10(static_cast<long double>(rep.witnesses)) <= rep.log10_count_bound + 1e-12L;
  return rep;
}

}  // namespace uflab
