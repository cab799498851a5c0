#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "uflab/decoders.hpp"
#include "uflab/detector_graph.hpp"

namespace uflab {

enum class DecoderKind { UnionFind, Greedy };

DecoderKind parse_decoder(const std::string& name);
std::string to_string(DecoderKind k);

struct ExperimentConfig {
  std::vector<int> distances;
  std::vector<double> ps;
  int rounds = 0;  // 0 means rounds = d
  long long shots = 1000;
  std::uint64_t seed = 1;
  DecoderKind decoder = DecoderKind::UnionFind;
  int workers = 0;       // 0: UFLAB_WORKERS or the hardware concurrency
  bool timing = false;   // wall_ms stays 0 otherwise, keeping output byte-stable
  double trace_rate = 1e-3;

  void validate() const;
};

struct SweepRow {
  int d = 0;
  double p = 0;
  long long shots = 0;
  long long failures = 0;
  double p_l = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  double mean_rounds = 0;  // mean UF growth rounds per shot, 0 for greedy
  double wall_ms = 0;
};

struct TraceRound {
  int round = 0;
  int clusters = 0;
  int invalid = 0;
  std::vector<int> grown;  // roots that grew in this round
  std::vector<MergeEvent> merges;
};

// A shot whose decoding was kept in full, chosen by its keyed random draw.
struct TraceSample {
  int d = 0;
  double p = 0;
  long long shot = 0;
  Syndrome syndrome;
  int rounds = 0;
  int merges = 0;
  bool failure = false;
  std::vector<TraceRound> growth;  // UF only
  std::vector<int> correction;
};

struct MemoryResult {
  std::vector<SweepRow> rows;
  std::vector<TraceSample> traces;
};

struct Interval {
  double lo = 0;
  double hi = 0;
};

// Wilson score interval, 95% by default.
Interval wilson_interval(long long failures, long long shots, double z = 1.959963984540054);

int worker_count(int requested);

// Seed of one (d, rounds, p) cell, derived from the run seed.
std::uint64_t cell_seed(std::uint64_t seed, int d, int rounds, double p);

// Runs fn(begin, end, worker) over contiguous shot ranges on a pool of threads.
void for_shot_ranges(long long shots, int workers, const std::function<void(long long, long long, int)>& fn);

SweepRow run_memory_cell(const Circuit& circuit, const DetectorGraph& g, double p, long long shots,
                         std::uint64_t seed, DecoderKind decoder, int workers, bool timing,
                         double trace_rate = 0, std::vector<TraceSample>* traces = nullptr);

MemoryResult run_memory(const ExperimentConfig& cfg);

inline constexpr const char* kSweepHeader = "d,p,shots,failures,p_l,ci_lo,ci_hi,mean_rounds,wall_ms";

// Shortest round-trip decimal.
std::string format_double(double v);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct ParallelRuntimeRecord {
  int d = 0;
  double p = 0;
  long long shot = 0;
  std::vector<int> growth_rounds;  // per final cluster
  std::vector<int> peel_work;      // per final cluster: edges of its peeling forest
  int parallel_time = 0;           // max over clusters of rounds + peel work
  int max_rounds = 0;
};

// Processor-per-detector model of the UF decoder: every cluster grows in
// parallel, so a cluster costs the rounds it took part in plus one step per
// edge of its peeling forest; the shot costs the most expensive cluster.
ParallelRuntimeRecord parallel_uf_time(const DetectorGraph& g, const Syndrome& s);

struct RuntimeSummary {
  int d = 0;
  double p = 0;
  long long shots = 0;
  double mean_parallel_time = 0;
  double mean_growth_rounds = 0;  // mean over shots of the largest cluster round count
  double mean_peel_work = 0;      // mean over shots of the largest peel work
  int max_parallel_time = 0;
};

RuntimeSummary runtime_scaling(int d, int rounds, double p, long long shots, std::uint64_t seed, int workers);

inline constexpr const char* kRuntimeHeader =
    "d,p,shots,mean_parallel_time,mean_growth_rounds,mean_peel_work,max_parallel_time";
std::string runtime_csv(const std::vector<RuntimeSummary>& rows);

// Every fault one noise group can produce: 3 Paulis for a one-qubit op, 15
// for a CNOT. `group` holds the op index of each set.
std::vector<FaultSet> single_fault_sets(const Circuit& circuit, std::vector<int>* group = nullptr);

struct WeightCheck {
  long long cases = 0;
  long long uf_failures = 0;
  long long greedy_failures = 0;
  bool exhaustive = true;
};

// Decodes every single-group fault on the ZChecks graph.
WeightCheck check_single_faults(const Circuit& circuit, const DetectorGraph& g);

// Decodes faults on two distinct noise groups: all pairs when there are at
// most max_pairs, otherwise max_pairs pairs drawn uniformly with the seed.
WeightCheck check_fault_pairs(const Circuit& circuit, const DetectorGraph& g, long long max_pairs,
                              std::uint64_t seed, int workers = 0);

}  // namespace uflab
