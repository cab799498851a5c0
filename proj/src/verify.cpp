#include "uflab/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "uflab/adversarial.hpp"
#include "uflab/clustering.hpp"
#include "uflab/experiments.hpp"
#include "uflab/frame_simulator.hpp"
#include "uflab/pauli.hpp"

namespace uflab {

namespace {

CheckResult stabilizers_commute() {
  for (int d : {3, 5, 7}) {
    SurfaceCode code(d);
    std::vector<PauliString> stabs;
    for (const Face& f : code.faces()) stabs.push_back(stabilizer_of(code, f));
    for (std::size_t i = 0; i < stabs.size(); ++i) {
      for (std::size_t j = i + 1; j < stabs.size(); ++j) {
        if (!stabs[i].commutes_with(stabs[j])) return {"stabilizers commute", false, "d=" + std::to_string(d)};
      }
      if (!stabs[i].commutes_with(logical_z(code)) || !stabs[i].commutes_with(logical_x(code))) {
        return {"stabilizers commute", false, "logical operator fails at d=" + std::to_string(d)};
      }
    }
    if (logical_z(code).commutes_with(logical_x(code))) return {"stabilizers commute", false, "logicals commute"};
  }
  return {"stabilizers commute", true, "d=3,5,7"};
}

CheckResult noiseless_is_quiet() {
  for (int d : {3, 5}) {
    const Circuit c = build_syndrome_circuit(SurfaceCode(d), d);
    const ShotOutcome out = simulate_shot(c, {});
    for (auto b : out.detectors) {
      if (b) return {"noiseless circuit has no detection events", false, "d=" + std::to_string(d)};
    }
  }
  return {"noiseless circuit has no detection events", true, "d=3,5"};
}

CheckResult syndrome_consistency(std::uint64_t seed) {
  const Circuit c = build_syndrome_circuit(SurfaceCode(5), 5);
  const auto g = build_detector_graph(c, CheckType::ZChecks);
  for (std::uint64_t shot = 0; shot < 500; ++shot) {
    const FaultSet fs = sample_faults(c, 5e-3, RandomStream{seed, shot});
    const ShotOutcome out = simulate_shot(c, fs);
    const std::vector<int> edges = error_edges(*g, fs);
    if (syndrome_of_edges(*g, edges) != g->syndrome_of(out)) {
      return {"syndrome equals the edge sum of the faults", false, "shot " + std::to_string(shot)};
    }
    bool obs = false;
    for (int e : edges) obs ^= g->edge(e).observable;
    if (obs != g->observable_of(out)) return {"syndrome equals the edge sum of the faults", false, "observable"};
  }
  return {"syndrome equals the edge sum of the faults", true, "500 shots, d=5, p=5e-3"};
}

CheckResult weight_one(CheckType type) {
  const Circuit c = build_syndrome_circuit(SurfaceCode(3), 3);
  const auto g = build_detector_graph(c, type);
  std::vector<int> group;
  const std::vector<FaultSet> sets = single_fault_sets(c, &group);
  int cases = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    // The readout is in the Z basis, so nothing closes the X-check graph in
    // time: last-round faults are not decodable against the X observable.
    if (type == CheckType::XChecks && c.ops()[group[i]].round == c.rounds() - 1) continue;
    const ShotOutcome out = simulate_shot(c, sets[i]);
    const Syndrome s = g->syndrome_of(out);
    ++cases;
    if (logical_flip(*g, out, uf_decode(*g, s).correction) || logical_flip(*g, out, greedy_decode(*g, s))) {
      return {"single faults decode correctly (" + to_string(type) + ")", false, "fault set " + std::to_string(i)};
    }
  }
  return {"single faults decode correctly (" + to_string(type) + ")", true, std::to_string(cases) + " cases at d=3"};
}

CheckResult threshold_constants() {
  const auto s = ScaleSchedule::union_find(1.2L, 2.8L, 107.0L);
  const ThresholdReport r = analytical_threshold(1, kLambdaSurface, kDeltaSurface, s);
  std::ostringstream os;
  os << "p_th=" << static_cast<double>(r.p_th) << " c=" << static_cast<double>(r.c);
  const bool ok = r.defined && std::abs(static_cast<double>(r.c) - 3.57257) < 1e-4 && r.p_th > 1.25e-26L &&
                  r.p_th < 5e-26L && s.f(2) > 0.99 && s.f(2) < 0.995;
  return {"schedule constants", ok, os.str()};
}

CheckResult clustering_oracle(std::uint64_t seed) {
  const Circuit c = build_syndrome_circuit(SurfaceCode(3), 3);
  const auto g = build_detector_graph(c, CheckType::ZChecks);
  const DetectorGraphMetric m(*g);
  const auto sched = ScaleSchedule::table({1, 6, 24}, {2, 6, 24});
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> all(g->num_edges());
    for (int i = 0; i < g->num_edges(); ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> n(all.begin(), all.begin() + 2 + trial % 7);
    std::sort(n.begin(), n.end());
    const ClusterDecomposition cd = decompose_clustered(m, n, sched);
    for (const ClusterLevel& lv : cd.levels) {
      if (clustered_edges_bruteforce(m, lv.input, lv.d, lv.b) != lv.removed) {
        return {"clustered sets match the exhaustive oracle", false, "trial " + std::to_string(trial)};
      }
    }
    if (!clustered_within_isolated(cd, decompose_isolated(m, n, sched))) {
      return {"clustered sets match the exhaustive oracle", false, "clustered set escapes the isolated set"};
    }
  }
  return {"clustered sets match the exhaustive oracle", true, "40 random sets, d=3"};
}

CheckResult cantor_small() {
  for (int d = 5; d <= 11; d += 2) {
    const Circuit c = build_syndrome_circuit(SurfaceCode(d), 3);
    const auto g = build_detector_graph(c, CheckType::ZChecks);
    const CantorPattern p = cantor_pattern(c, *g);
    const GreedyFailureReport r = verify_greedy_failure(c, *g, p);
    if (!r.greedy_flip || !r.complement_ok || p.N > cantor_error_bound(d)) {
      return {"Cantor pattern defeats greedy", false, "d=" + std::to_string(d)};
    }
  }
  return {"Cantor pattern defeats greedy", true, "d=5..11"};
}

CheckResult determinism(std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.distances = {3};
  cfg.ps = {0.01};
  cfg.shots = 2000;
  cfg.seed = seed;
  cfg.workers = 1;
  const std::string a = sweep_csv(run_memory(cfg).rows);
  cfg.workers = 3;
  const std::string b = sweep_csv(run_memory(cfg).rows);
  return {"memory runs are deterministic", a == b, "1 vs 3 workers"};
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(stabilizers_commute());
  out.push_back(noiseless_is_quiet());
  out.push_back(syndrome_consistency(seed));
  out.push_back(weight_one(CheckType::ZChecks));
  out.push_back(weight_one(CheckType::XChecks));
  out.push_back(threshold_constants());
  out.push_back(clustering_oracle(seed));
  out.push_back(cantor_small());
  out.push_back(determinism(seed));
  return out;
}

}  // namespace uflab
