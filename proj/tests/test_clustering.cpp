#include <gtest/gtest.h>

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "uflab/clustering.hpp"
#include "uflab/experiments.hpp"
#include "uflab/frame_simulator.hpp"

using namespace uflab;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

const ScaleSchedule& reference() {
  static const ScaleSchedule s = ScaleSchedule::union_find(1.2L, 2.8L, 107.0L);
  return s;
}

const ScaleSchedule& small_table() {
  static const ScaleSchedule s = ScaleSchedule::table({1, 6, 24}, {2, 6, 24});
  return s;
}

struct Graph {
  Circuit circuit;
  std::unique_ptr<DetectorGraph> g;
  explicit Graph(int d) : circuit(build_syndrome_circuit(SurfaceCode(d), d)),
                          g(build_detector_graph(circuit, CheckType::ZChecks)) {}
};

// Level-by-level oracle straight from the definition: an edge of N is
// (D,B)-clustered iff some subset C of N containing it has diameter <= D and
// every edge of N outside C lies farther than B from C.
std::vector<std::vector<int>> oracle_levels(const DetectorGraph& g, std::vector<int> n, const ScaleSchedule& s) {
  std::vector<std::vector<int>> removed_per_level;
  for (int k = 1; k <= s.levels() && !n.empty(); ++k) {
    const int size = static_cast<int>(n.size());
    std::vector<std::vector<int>> dist(size, std::vector<int>(size));
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) dist[i][j] = g.edge_distance(n[i], n[j]);
    }
    std::vector<char> clustered(size, 0);
    for (std::uint32_t mask = 1; mask < (1u << size); ++mask) {
      bool ok = true;
      for (int i = 0; i < size && ok; ++i) {
        if (!(mask >> i & 1u)) continue;
        for (int j = 0; j < size && ok; ++j) {
          if (mask >> j & 1u) {
            ok = dist[i][j] <= s.d(k);
          } else {
            ok = dist[i][j] > s.b(k);
          }
        }
      }
      if (!ok) continue;
      for (int i = 0; i < size; ++i) {
        if (mask >> i & 1u) clustered[i] = 1;
      }
    }
    std::vector<int> removed, rest;
    for (int i = 0; i < size; ++i) (clustered[i] ? removed : rest).push_back(n[i]);
    removed_per_level.push_back(removed);
    if (removed.empty()) break;
    n = rest;
  }
  return removed_per_level;
}

// A random error set concentrated around one edge, so that clusters form.
std::vector<int> local_set(const DetectorGraph& g, std::mt19937_64& rng, int size, int radius) {
  std::uniform_int_distribution<int> pick(0, g.num_edges() - 1);
  std::vector<int> ball = g.ball(pick(rng), radius);
  std::shuffle(ball.begin(), ball.end(), rng);
  ball.resize(std::min<std::size_t>(ball.size(), size));
  std::sort(ball.begin(), ball.end());
  return ball;
}

cpp_rational pow_rational(const cpp_rational& x, long long n) {
  cpp_rational r = 1;
  for (long long i = 0; i < n; ++i) r *= x;
  return r;
}

long double log10_rational(const cpp_rational& x) {
  const cpp_int num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
  return std::log10(num.convert_to<long double>()) - std::log10(den.convert_to<long double>());
}

// Path graph witness oracle: on a path, the line-graph distance of edges i
// and j is |i - j|.
int path_min_witness(int length, int e, const std::vector<double>& d, const std::vector<double>& b, int k) {
  for (int size = 1; size <= length; ++size) {
    std::vector<int> pick(length, 0);
    std::fill(pick.begin(), pick.begin() + size, 1);
    std::sort(pick.begin(), pick.end());
    do {
      if (!pick[e]) continue;
      std::vector<int> set;
      for (int i = 0; i < length; ++i) {
        if (pick[i]) set.push_back(i);
      }
      bool alive = true;
      for (int level = 1; level <= k && alive; ++level) {
        const double r = d[level - 1] / 2, R = b[level - 1] + d[level - 1] / 2;
        std::vector<int> next;
        for (int x : set) {
          for (int y : set) {
            const int dist = std::abs(x - y);
            if (x != y && dist > r && dist <= R) {
              next.push_back(x);
              break;
            }
          }
        }
        set = next;
        alive = std::find(set.begin(), set.end(), e) != set.end();
      }
      if (alive) return size;
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return 0;
}

}  // namespace

TEST(Schedule, ClosedForms) {
  const ScaleSchedule& s = reference();
  for (int k = 1; k <= 6; ++k) {
    const long double b = 1.2L * std::pow(107.0L, (k + 1) * std::log(static_cast<long double>(k + 1))) + 1;
    const long double d = 2.8L * std::pow(107.0L, k * std::log(static_cast<long double>(k))) - 1;
    EXPECT_NEAR(static_cast<double>(s.b(k) / b), 1.0, 1e-12);
    EXPECT_NEAR(static_cast<double>(s.d(k) / d), 1.0, 1e-12);
  }
  const ScaleSchedule g = ScaleSchedule::greedy(1, 2, 50);
  EXPECT_NEAR(static_cast<double>(g.b(3)), 1 * std::pow(50.0, 4) + 1, 1e-6);
  EXPECT_NEAR(static_cast<double>(g.d(3)), 2 * std::pow(50.0, 3) - 1, 1e-6);
  EXPECT_THROW(s.b(0), std::out_of_range);
  EXPECT_THROW(ScaleSchedule::union_find(-1, 2.8L, 107), std::invalid_argument);
}

TEST(Schedule, FRecursionOracle) {
  const ScaleSchedule& s = reference();
  long double f = 1, sum = 0;
  for (int k = 1; k <= 50; ++k) {
    EXPECT_NEAR(static_cast<double>(s.f(k)), static_cast<double>(f), 1e-12) << k;
    const long double fk = f;
    sum += (fk + 1) * (s.d(k) + 1) / ((fk + 1) * (s.d(k) + 0.5L) + fk * (s.b(k) - 1));
    f = 1 - sum;
  }
  EXPECT_EQ(s.f(1), 1.0L);
  EXPECT_NEAR(static_cast<double>(s.f(2)), 0.9929, 1e-4);
  long double floor = 1;
  for (int k = 1; k <= 50; ++k) floor = std::min(floor, s.f(k));
  EXPECT_GE(floor, 0.5L);
}

TEST(Schedule, MonotoneAndSpaced) {
  const ScaleSchedule& s = reference();
  for (int k = 1; k < 50; ++k) {
    EXPECT_LT(s.b(k), s.b(k + 1));
    EXPECT_LT(s.d(k), s.d(k + 1));
    EXPECT_GE(s.d(k + 1), 2 * (s.d(k) + s.b(k)));
  }
}

TEST(Schedule, ReferenceConstraintsPassAndLambdaEFails) {
  EXPECT_TRUE(all_ok(check_constraints(reference())));
  const auto at_e = check_constraints(ScaleSchedule::union_find(1.2L, 2.8L, std::exp(1.0L)));
  bool found = false;
  for (const auto& c : at_e) {
    if (c.name == "lambda > e") {
      found = true;
      EXPECT_FALSE(c.ok);
    }
  }
  EXPECT_TRUE(found);
}

// Grid search for greedy-family points: the closed-form conditions decide the
// same points as the full constraint check.
TEST(Schedule, GreedyGridSearch) {
  int passing = 0, agree = 0, total = 0;
  for (double beta : {0.25, 0.5, 1.0, 2.0}) {
    for (double gamma : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      for (double lambda : {4.0, 8.0, 16.0, 64.0}) {
        const ScaleSchedule s = ScaleSchedule::greedy(beta, gamma, lambda);
        const bool closed = gamma * lambda >= 2 && beta * lambda > gamma &&
                            gamma * lambda - 1 / lambda >= 2 * (gamma + 2 * beta * lambda);
        bool levels = true;
        for (int k = 1; k <= 50; ++k) levels = levels && s.b(k) - 1 > s.d(k) + 1 && s.d(k) >= 1;
        const bool full = all_ok(check_constraints(s));
        agree += full == (closed && levels);
        passing += full;
        ++total;
      }
    }
  }
  EXPECT_EQ(agree, total);
  EXPECT_GT(passing, 0);
  EXPECT_EQ(series_constant(ScheduleFamily::Greedy), 3.0L);
}

TEST(Zeta, KnownValues) {
  const long double pi = std::numbers::pi_v<long double>;
  EXPECT_NEAR(static_cast<double>(riemann_zeta(2)), static_cast<double>(pi * pi / 6), 1e-12);
  EXPECT_NEAR(static_cast<double>(riemann_zeta(4)), static_cast<double>(pi * pi * pi * pi / 90), 1e-12);
  EXPECT_TRUE(std::isinf(riemann_zeta(1)));
  // Direct summation with an integral tail at the reference point's argument.
  const long double s = std::log(107.0L);
  long double sum = 0;
  const int n = 200000;
  for (int i = 1; i <= n; ++i) sum += std::pow(static_cast<long double>(i), -s);
  sum += std::pow(n + 0.5L, 1 - s) / (s - 1);
  EXPECT_NEAR(static_cast<double>(riemann_zeta(s) / sum), 1.0, 1e-10);
}

TEST(Threshold, SeriesConstant) {
  long double c = 0;
  for (int n = 2; n < 200; ++n) c += n * std::log(static_cast<long double>(n)) / std::ldexp(1.0L, n - 1);
  EXPECT_NEAR(static_cast<double>(series_constant(ScheduleFamily::UnionFind)), static_cast<double>(c), 1e-12);
  EXPECT_NEAR(static_cast<double>(c), 3.57257, 1e-4);
}

TEST(Threshold, ReferencePoint) {
  const ThresholdReport r1 = analytical_threshold(1, kLambdaSurface, 3, reference());
  ASSERT_TRUE(r1.defined);
  EXPECT_GT(r1.p_th, 2.5e-26L / 2);
  EXPECT_LT(r1.p_th, 2.5e-26L * 2);
  const ThresholdReport r10 = analytical_threshold(10, kLambdaSurface, 3, reference());
  EXPECT_NEAR(static_cast<double>(r10.log10_p_th - r1.log10_p_th), -1.0, 1e-12);
  EXPECT_LT(r1.eta_limit, 1.0L);
  EXPECT_NEAR(static_cast<double>(r1.eta_limit), std::log(2.0) / std::log(107.0), 1e-15);
}

TEST(Threshold, FailedConstraintsLeaveThresholdUndefined) {
  const ThresholdReport r = analytical_threshold(1, kLambdaSurface, 3, ScaleSchedule::union_find(1.2L, 2.8L, 2.0L));
  EXPECT_FALSE(r.defined);
}

TEST(Threshold, Cutoffs) {
  const ThresholdReport r = analytical_threshold(1, kLambdaSurface, 3, reference(), 7, 1e-3L);
  EXPECT_EQ(r.k0, 1);
  EXPECT_TRUE(r.kbar_unbounded);
  EXPECT_EQ(k0_cutoff(reference(), 5), 0);
  // kbar against a direct scan of d^3 (p/p_th)^{2^k} >= 1.
  for (int d : {3, 11, 101}) {
    for (long double ratio : {-0.01L, -0.5L, -3.0L}) {
      long long expected = -1;
      for (int k = 0; k < 63; ++k) {
        if (3 * std::log10(static_cast<long double>(d)) + std::ldexp(1.0L, k) * ratio >= 0) expected = k;
      }
      EXPECT_EQ(kbar_cutoff(d, ratio), expected);
    }
  }
}

TEST(Threshold, BoundMatchesExactRationals) {
  const ScaleSchedule s = ScaleSchedule::table({1, 6, 24}, {2, 6, 24});
  const cpp_rational p(1, 1000), xi(2), Lambda(3);
  const int Delta = 2;
  for (int k = 1; k <= 3; ++k) {
    cpp_rational exact = pow_rational(xi * p, 1LL << k);
    for (int j = 0; j < k; ++j) {
      const int m = k - j;
      const cpp_rational b(static_cast<long long>(s.b(m))), d(static_cast<long long>(s.d(m)));
      exact *= pow_rational(Lambda * pow_rational(b + d / 2, Delta), 1LL << j);
    }
    EXPECT_NEAR(static_cast<double>(log10_p_k_bound(k, 1e-3L, 2, 3, Delta, s)),
                static_cast<double>(log10_rational(exact)), 1e-12)
        << k;
  }
}

// At p = p_th the per-2^k log bound settles to a constant <= 0 (its steps
// shrink geometrically); at p_th/10 the bound stays below -2^k + O(1).
TEST(Threshold, BoundEnvelopes) {
  const ScaleSchedule& s = reference();
  const long double p_th = analytical_threshold(1, kLambdaSurface, 3, s).p_th;
  std::vector<long double> scaled;
  for (int k = 1; k <= 30; ++k) {
    scaled.push_back(log10_p_k_bound(k, p_th, 1, kLambdaSurface, 3, s) / std::ldexp(1.0L, k));
    EXPECT_LE(scaled.back(), 0.0L);
    if (k <= 20) EXPECT_LE(log10_p_k_bound(k, p_th / 10, 1, kLambdaSurface, 3, s), -std::ldexp(1.0L, k) + 1);
  }
  for (std::size_t k = 8; k + 1 < scaled.size(); ++k) {
    EXPECT_LE(std::abs(scaled[k + 1] - scaled[k]), 0.75L * std::abs(scaled[k] - scaled[k - 1])) << k;
  }
  EXPECT_LT(std::abs(scaled.back() - scaled[scaled.size() - 2]), 1e-5L);
}

TEST(Clustering, MatchesDefinitionOracle) {
  Graph gr(5);
  const DetectorGraph& g = *gr.g;
  const DetectorGraphMetric m(g);
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<int> n = local_set(g, rng, 3 + trial % 10, 4 + trial % 5);
    const ClusterDecomposition cd = decompose_clustered(m, n, small_table());
    const auto oracle = oracle_levels(g, n, small_table());
    ASSERT_LE(oracle.size(), cd.levels.size() + 1) << trial;
    for (std::size_t k = 0; k < oracle.size() && k < cd.levels.size(); ++k) {
      EXPECT_EQ(cd.levels[k].removed, oracle[k]) << "trial " << trial << " level " << k + 1;
    }
    // Nesting, E_k = N_{k-1} \ N_k, disjoint clusters with diameter <= d_k.
    for (const ClusterLevel& lv : cd.levels) {
      std::set<int> seen;
      for (std::size_t c = 0; c < lv.clusters.size(); ++c) {
        EXPECT_LE(lv.diameters[c], lv.d);
        EXPECT_EQ(lv.diameters[c], g.set_diameter(lv.clusters[c]));
        for (int e : lv.clusters[c]) EXPECT_TRUE(seen.insert(e).second);
      }
      std::vector<int> rebuilt = lv.output;
      rebuilt.insert(rebuilt.end(), lv.removed.begin(), lv.removed.end());
      std::sort(rebuilt.begin(), rebuilt.end());
      EXPECT_EQ(rebuilt, lv.input);
    }
    const IsolatedDecomposition id = decompose_isolated(m, n, small_table());
    EXPECT_TRUE(clustered_within_isolated(cd, id)) << trial;
    EXPECT_EQ(id.isolation_violations, 0);
    for (const ClusterLevel& lv : cd.levels) {
      EXPECT_EQ(lv.removed, clustered_edges_bruteforce(m, lv.input, lv.d, lv.b));
    }
  }
}

TEST(Clustering, TrivialCases) {
  Graph gr(5);
  const DetectorGraphMetric m(*gr.g);
  const ClusterDecomposition one = decompose_clustered(m, {10}, small_table());
  ASSERT_EQ(one.levels.size(), 1u);
  EXPECT_EQ(one.levels[0].clusters.size(), 1u);
  EXPECT_TRUE(one.emptied);
  EXPECT_EQ(one.level_of(10), 1);

  int far = -1;
  for (int f = 0; f < gr.g->num_edges(); ++f) {
    if (gr.g->edge_distance(10, f) > 2) {
      far = f;
      break;
    }
  }
  ASSERT_GE(far, 0);
  const ClusterDecomposition two = decompose_clustered(m, {std::min(10, far), std::max(10, far)}, small_table());
  EXPECT_EQ(two.levels[0].clusters.size(), 2u);

  const IsolatedDecomposition iso = decompose_isolated(m, {10}, small_table());
  ASSERT_FALSE(iso.levels.empty());
  EXPECT_EQ(iso.levels[0].removed, std::vector<int>{10});

  EXPECT_THROW(decompose_clustered(m, {5, 3}, small_table()), std::invalid_argument);
  EXPECT_THROW(decompose_clustered(m, {gr.g->num_edges()}, small_table()), std::invalid_argument);
}

TEST(Clustering, ReferenceScheduleOnSampledShots) {
  Graph gr(7);
  const DetectorGraphMetric m(*gr.g);
  for (std::uint64_t shot = 0; shot < 200; ++shot) {
    const FaultSet fs = sample_faults(gr.circuit, 3e-3, RandomStream{77, shot});
    const std::vector<int> n = error_edges(*gr.g, fs);
    EXPECT_EQ(syndrome_of_edges(*gr.g, n), gr.g->syndrome_of(simulate_shot(gr.circuit, fs)));
    const ClusterDecomposition cd = decompose_clustered(m, n, reference());
    const IsolatedDecomposition id = decompose_isolated(m, n, reference());
    EXPECT_TRUE(clustered_within_isolated(cd, id));
    EXPECT_EQ(id.isolation_violations, 0);
  }
}

TEST(Witness, PathOracleAgrees) {
  const ExplicitGraphMetric path = ExplicitGraphMetric::path(13);
  const std::vector<double> d{1, 8}, b{2, 8};
  const ScaleSchedule s = ScaleSchedule::table({1, 8}, {2, 8});
  for (int k = 0; k <= 2; ++k) {
    for (int e : {0, 6, 12}) {
      const WitnessReport w = minimal_witness_check(path, s, k, e, 2, 1);
      EXPECT_EQ(w.min_size, path_min_witness(13, e, d, b, k)) << "k=" << k << " e=" << e;
    }
  }
}

TEST(Witness, LevelsZeroAndOne) {
  const ExplicitGraphMetric path = ExplicitGraphMetric::path(19);
  const WitnessReport w0 = minimal_witness_check(path, small_table(), 0, 9, 2, 1);
  EXPECT_EQ(w0.min_size, 1);
  EXPECT_EQ(w0.example, std::vector<int>{9});
  const WitnessReport w1 = minimal_witness_check(path, small_table(), 1, 9, 2, 1);
  EXPECT_EQ(w1.min_size, 2);
  EXPECT_TRUE(w1.count_ok);
  EXPECT_TRUE(w1.containment_next_ok);
}

// With d_2 < 4 floor(b_1 + d_1/2) the two level-1 pairs of a level-2 witness
// can share an edge, so three edges suffice; a wider d_2 restores 2^k.
TEST(Witness, LevelTwoDependsOnSpacing) {
  const ExplicitGraphMetric path = ExplicitGraphMetric::path(19);
  const WitnessReport shared = minimal_witness_check(path, small_table(), 2, 9, 2, 1);
  EXPECT_EQ(shared.min_size, 3);
  EXPECT_EQ(shared.example, (std::vector<int>{5, 7, 9}));
  const WitnessReport wide = minimal_witness_check(path, ScaleSchedule::table({1, 8, 40}, {2, 8, 40}), 2, 9, 2, 1);
  EXPECT_EQ(wide.min_size, 4);
  EXPECT_TRUE(wide.count_ok);
}

TEST(Witness, RejectsLargeGraphs) {
  EXPECT_THROW(minimal_witness_check(ExplicitGraphMetric::path(21), small_table(), 1, 0, 2, 1), std::length_error);
}

TEST(StoppingGuarantee, EmptyShotPasses) {
  Graph gr(5);
  const DetectorGraphMetric m(*gr.g);
  const UfResult r = uf_decode(*gr.g, {}, true);
  const StoppingReport rep = verify_stopping_guarantee(*gr.g, {}, r.trace, decompose_clustered(m, {}, reference()),
                                                        reference());
  EXPECT_TRUE(rep.ok());
}

TEST(StoppingGuarantee, SingleBulkEdge) {
  Graph gr(5);
  const DetectorGraph& g = *gr.g;
  const DetectorGraphMetric m(g);
  int e = -1;
  for (const DetectorEdge& edge : g.edges()) {
    if (!g.is_boundary(edge.v) && g.node(edge.u).row == 2 && g.node(edge.v).row == 2) {
      e = edge.id;
      break;
    }
  }
  ASSERT_GE(e, 0);
  const Syndrome s = syndrome_of_edges(g, {e});
  const UfResult r = uf_decode(g, s, true);
  EXPECT_EQ(r.trace.rounds, 1);
  const StoppingReport rep = verify_stopping_guarantee(g, s, r.trace, decompose_clustered(m, {e}, reference()),
                                                        reference());
  EXPECT_TRUE(rep.ok());
  EXPECT_LE(rep.max_overgrowth, (reference().d(1) + 1) / 2);
}

TEST(StoppingGuarantee, RejectsMismatchedShot) {
  Graph gr(5);
  const DetectorGraph& g = *gr.g;
  const DetectorGraphMetric m(g);
  const Syndrome s = syndrome_of_edges(g, {3});
  const UfResult r = uf_decode(g, s, true);
  EXPECT_THROW(verify_stopping_guarantee(g, s, r.trace, decompose_clustered(m, {40}, reference()), reference()),
               std::invalid_argument);
}
