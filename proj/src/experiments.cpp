#include "uflab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "uflab/frame_simulator.hpp"

namespace uflab {

DecoderKind parse_decoder(const std::string& name) {
  if (name == "uf") return DecoderKind::UnionFind;
  if (name == "greedy") return DecoderKind::Greedy;
  throw std::invalid_argument("unknown decoder: " + name);
}

std::string to_string(DecoderKind k) { return k == DecoderKind::UnionFind ? "uf" : "greedy"; }

void ExperimentConfig::validate() const {
  if (distances.empty()) throw std::invalid_argument("no distances given");
  if (ps.empty()) throw std::invalid_argument("no error rates given");
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  if (rounds < 0) throw std::invalid_argument("rounds must be non-negative");
  for (double p : ps) {
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("error rates must lie in [0, 1]");
  }
  if (!(trace_rate >= 0 && trace_rate <= 1)) throw std::invalid_argument("trace rate must lie in [0, 1]");
}

Interval wilson_interval(long long failures, long long shots, double z) {
  if (shots <= 0) return {0, 1};
  const double n = static_cast<double>(shots);
  const double phat = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double centre = (phat + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
  const double lo = failures == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = failures == shots ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("UFLAB_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t cell_seed(std::uint64_t seed, int d, int rounds, double p) {
  std::uint64_t pbits = 0;
  std::memcpy(&pbits, &p, sizeof pbits);
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(d));
  h = splitmix64(h ^ static_cast<std::uint64_t>(rounds));
  return splitmix64(h ^ pbits);
}

void for_shot_ranges(long long shots, int workers, const std::function<void(long long, long long, int)>& fn) {
  workers = static_cast<int>(std::max<long long>(1, std::min<long long>(workers, shots)));
  if (workers == 1) {
    fn(0, shots, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    const long long begin = shots * w / workers;
    const long long end = shots * (w + 1) / workers;
    pool.emplace_back([&, begin, end, w] {
      try {
        fn(begin, end, w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

constexpr std::uint64_t kTraceSalt = 0x5452414345ULL;

// Calls fn(shot, outcome, faults) for every shot in [begin, end), simulating
// 64 shots per frame pass.
template <class Fn>
void simulate_range(const Circuit& circuit, double p, std::uint64_t seed, long long begin, long long end, Fn&& fn) {
  std::vector<FaultSet> batch;
  for (long long base = begin; base < end; base += 64) {
    const long long stop = std::min(end, base + 64);
    batch.clear();
    bool any = false;
    for (long long shot = base; shot < stop; ++shot) {
      batch.push_back(sample_faults(circuit, p, RandomStream{seed, static_cast<std::uint64_t>(shot)}));
      any = any || !batch.back().empty();
    }
    if (!any) {
      // Fault-free shots have an all-zero outcome.
      ShotOutcome clean;
      clean.meas.assign(circuit.num_measurements(), 0);
      clean.final_data.assign(circuit.code().num_data(), 0);
      clean.final_data_x.assign(circuit.code().num_data(), 0);
      fill_detectors(circuit, clean);
      for (long long shot = base; shot < stop; ++shot) fn(shot, clean, batch[shot - base]);
      continue;
    }
    const FrameBatch frames = simulate_batch(circuit, batch);
    for (long long shot = base; shot < stop; ++shot) {
      const int lane = static_cast<int>(shot - base);
      fn(shot, extract_lane(circuit, frames, lane), batch[lane]);
    }
  }
}

}  // namespace

SweepRow run_memory_cell(const Circuit& circuit, const DetectorGraph& g, double p, long long shots,
                         std::uint64_t seed, DecoderKind decoder, int workers, bool timing, double trace_rate,
                         std::vector<TraceSample>* traces) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = worker_count(workers);
  std::vector<long long> failures(n, 0), rounds(n, 0);
  std::vector<std::vector<TraceSample>> kept(n);
  const int d = circuit.code().distance();

  for_shot_ranges(shots, n, [&](long long begin, long long end, int w) {
    simulate_range(circuit, p, seed, begin, end, [&](long long shot, const ShotOutcome& outcome, const FaultSet&) {
      const Syndrome s = g.syndrome_of(outcome);
      const bool sample =
          traces && trace_rate > 0 &&
          RandomStream{splitmix64(seed ^ kTraceSalt), static_cast<std::uint64_t>(shot)}.uniform(0) < trace_rate;
      bool flip = false;
      if (decoder == DecoderKind::UnionFind) {
        const UfResult r = uf_decode(g, s, sample);
        flip = logical_flip(g, outcome, r.correction);
        rounds[w] += r.trace.rounds;
        if (sample) {
          TraceSample t{d, p, shot, s, r.trace.rounds, 0, flip, {}, r.correction.edges};
          for (const GrowthSnapshot& snap : r.trace.snapshots) {
            if (snap.round == 0) continue;
            TraceRound tr{snap.round, static_cast<int>(snap.clusters.size()), 0, snap.grown, snap.merges};
            for (const ClusterState& c : snap.clusters) tr.invalid += !c.valid();
            t.merges += static_cast<int>(snap.merges.size());
            t.growth.push_back(std::move(tr));
          }
          kept[w].push_back(std::move(t));
        }
      } else {
        const Correction c = greedy_decode(g, s);
        flip = logical_flip(g, outcome, c);
        if (sample) kept[w].push_back({d, p, shot, s, 0, 0, flip, {}, c.edges});
      }
      if (flip) ++failures[w];
    });
  });

  SweepRow row;
  row.d = d;
  row.p = p;
  row.shots = shots;
  for (int w = 0; w < n; ++w) {
    row.failures += failures[w];
    if (traces) traces->insert(traces->end(), kept[w].begin(), kept[w].end());
  }
  long long total_rounds = 0;
  for (long long r : rounds) total_rounds += r;
  row.p_l = static_cast<double>(row.failures) / static_cast<double>(shots);
  const Interval ci = wilson_interval(row.failures, shots);
  row.ci_lo = ci.lo;
  row.ci_hi = ci.hi;
  row.mean_rounds = static_cast<double>(total_rounds) / static_cast<double>(shots);
  if (timing) row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

MemoryResult run_memory(const ExperimentConfig& cfg) {
  cfg.validate();
  MemoryResult out;
  for (int d : cfg.distances) {
    const int rounds = cfg.rounds > 0 ? cfg.rounds : d;
    const Circuit circuit = build_syndrome_circuit(SurfaceCode(d), rounds);
    const auto g = build_detector_graph(circuit, CheckType::ZChecks);
    for (double p : cfg.ps) {
      out.rows.push_back(run_memory_cell(circuit, *g, p, cfg.shots, cell_seed(cfg.seed, d, rounds, p), cfg.decoder,
                                         cfg.workers, cfg.timing, cfg.trace_rate, &out.traces));
    }
  }
  std::sort(out.traces.begin(), out.traces.end(), [](const TraceSample& a, const TraceSample& b) {
    return std::tie(a.d, a.p, a.shot) < std::tie(b.d, b.p, b.shot);
  });
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    os << r.d << ',' << format_double(r.p) << ',' << r.shots << ',' << r.failures << ',' << format_double(r.p_l)
       << ',' << format_double(r.ci_lo) << ',' << format_double(r.ci_hi) << ',' << format_double(r.mean_rounds)
       << ',' << format_double(r.wall_ms) << '\n';
  }
  return os.str();
}

ParallelRuntimeRecord parallel_uf_time(const DetectorGraph& g, const Syndrome& s) {
  ParallelRuntimeRecord rec;
  rec.d = g.distance();
  if (s.empty()) return rec;
  const UfResult r = uf_decode(g, s);
  for (std::size_t i = 0; i < r.clusters.size(); ++i) {
    const UfCluster& c = r.clusters[i];
    const int rounds = r.cluster_growth_rounds[i];
    // Spanning forest of the cluster, with all boundary nodes as one root.
    const int work = static_cast<int>(c.vertices.size()) + (c.touches_boundary ? 1 : 0) - 1;
    rec.growth_rounds.push_back(rounds);
    rec.peel_work.push_back(work);
    rec.parallel_time = std::max(rec.parallel_time, rounds + work);
    rec.max_rounds = std::max(rec.max_rounds, rounds);
  }
  return rec;
}

RuntimeSummary runtime_scaling(int d, int rounds, double p, long long shots, std::uint64_t seed, int workers) {
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  if (rounds <= 0) rounds = d;
  const Circuit circuit = build_syndrome_circuit(SurfaceCode(d), rounds);
  const auto g = build_detector_graph(circuit, CheckType::ZChecks);
  const std::uint64_t cs = cell_seed(seed, d, rounds, p);
  const int n = worker_count(workers);
  std::vector<long long> time(n, 0), grow(n, 0), peel(n, 0);
  std::vector<int> worst(n, 0);
  for_shot_ranges(shots, n, [&](long long begin, long long end, int w) {
    simulate_range(circuit, p, cs, begin, end, [&](long long, const ShotOutcome& outcome, const FaultSet&) {
      const ParallelRuntimeRecord rec = parallel_uf_time(*g, g->syndrome_of(outcome));
      time[w] += rec.parallel_time;
      grow[w] += rec.max_rounds;
      peel[w] += rec.peel_work.empty() ? 0 : *std::max_element(rec.peel_work.begin(), rec.peel_work.end());
      worst[w] = std::max(worst[w], rec.parallel_time);
    });
  });
  RuntimeSummary out;
  out.d = d;
  out.p = p;
  out.shots = shots;
  long long t = 0, gr = 0, pe = 0;
  for (int w = 0; w < n; ++w) {
    t += time[w];
    gr += grow[w];
    pe += peel[w];
    out.max_parallel_time = std::max(out.max_parallel_time, worst[w]);
  }
  out.mean_parallel_time = static_cast<double>(t) / static_cast<double>(shots);
  out.mean_growth_rounds = static_cast<double>(gr) / static_cast<double>(shots);
  out.mean_peel_work = static_cast<double>(pe) / static_cast<double>(shots);
  return out;
}

std::string runtime_csv(const std::vector<RuntimeSummary>& rows) {
  std::ostringstream os;
  os << kRuntimeHeader << '\n';
  for (const RuntimeSummary& r : rows) {
    os << r.d << ',' << format_double(r.p) << ',' << r.shots << ',' << format_double(r.mean_parallel_time) << ','
       << format_double(r.mean_growth_rounds) << ',' << format_double(r.mean_peel_work) << ','
       << r.max_parallel_time << '\n';
  }
  return os.str();
}

std::vector<FaultSet> single_fault_sets(const Circuit& circuit, std::vector<int>* group) {
  std::vector<FaultSet> out;
  for (int op = 0; op < static_cast<int>(circuit.ops().size()); ++op) {
    const int count = circuit.op_location_count(op);
    const int first = circuit.op_first_location(op);
    if (count == 1) {
      for (int p = 1; p <= 3; ++p) {
        out.push_back({{{first, static_cast<Pauli>(p)}}});
        if (group) group->push_back(op);
      }
    } else if (count == 2) {
      for (unsigned v = 1; v < 16; ++v) {
        FaultSet fs;
        if ((v & 3u) != 0) fs.entries.push_back({first, static_cast<Pauli>(v & 3u)});
        if ((v >> 2) != 0) fs.entries.push_back({first + 1, static_cast<Pauli>(v >> 2)});
        out.push_back(fs);
        if (group) group->push_back(op);
      }
    }
  }
  return out;
}

namespace {

void decode_sets(const Circuit& circuit, const DetectorGraph& g, const std::vector<FaultSet>& sets, long long& uf,
                 long long& greedy) {
  for (std::size_t base = 0; base < sets.size(); base += 64) {
    const std::size_t stop = std::min(sets.size(), base + 64);
    const FrameBatch frames = simulate_batch(circuit, std::span<const FaultSet>(sets.data() + base, stop - base));
    for (std::size_t i = base; i < stop; ++i) {
      const ShotOutcome out = extract_lane(circuit, frames, static_cast<int>(i - base));
      const Syndrome s = g.syndrome_of(out);
      if (logical_flip(g, out, uf_decode(g, s).correction)) ++uf;
      if (logical_flip(g, out, greedy_decode(g, s))) ++greedy;
    }
  }
}

FaultSet merge_sets(const FaultSet& a, const FaultSet& b) {
  FaultSet out;
  std::merge(a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end(), std::back_inserter(out.entries),
             [](const FaultEntry& x, const FaultEntry& y) { return x.location < y.location; });
  return out;
}

}  // namespace

WeightCheck check_single_faults(const Circuit& circuit, const DetectorGraph& g) {
  WeightCheck w;
  const std::vector<FaultSet> sets = single_fault_sets(circuit);
  w.cases = static_cast<long long>(sets.size());
  decode_sets(circuit, g, sets, w.uf_failures, w.greedy_failures);
  return w;
}

WeightCheck check_fault_pairs(const Circuit& circuit, const DetectorGraph& g, long long max_pairs,
                              std::uint64_t seed, int workers) {
  std::vector<int> group;
  const std::vector<FaultSet> sets = single_fault_sets(circuit, &group);
  const long long n = static_cast<long long>(sets.size());
  long long distinct = 0;
  {
    // Pairs on the same group are excluded: that is a single fault.
    std::vector<long long> per_group;
    for (std::size_t i = 0; i < group.size();) {
      std::size_t j = i;
      while (j < group.size() && group[j] == group[i]) ++j;
      per_group.push_back(static_cast<long long>(j - i));
      i = j;
    }
    long long same = 0;
    for (long long c : per_group) same += c * (c - 1) / 2;
    distinct = n * (n - 1) / 2 - same;
  }
  WeightCheck w;
  w.exhaustive = distinct <= max_pairs;
  w.cases = w.exhaustive ? distinct : max_pairs;

  const int nw = worker_count(workers);
  std::vector<long long> uf(nw, 0), greedy(nw, 0);
  for_shot_ranges(w.cases, nw, [&](long long begin, long long end, int wk) {
    std::vector<FaultSet> chunk;
    auto flush = [&] {
      decode_sets(circuit, g, chunk, uf[wk], greedy[wk]);
      chunk.clear();
    };
    if (w.exhaustive) {
      // Walk the pair list in lexicographic order, keeping [begin, end).
      long long index = 0;
      for (long long i = 0; i < n && index < end; ++i) {
        for (long long j = i + 1; j < n && index < end; ++j) {
          if (group[i] == group[j]) continue;
          if (index++ < begin) continue;
          chunk.push_back(merge_sets(sets[i], sets[j]));
          if (chunk.size() == 64) flush();
        }
      }
    } else {
      for (long long k = begin; k < end; ++k) {
        std::mt19937_64 rng(splitmix64(seed ^ static_cast<std::uint64_t>(k)));
        std::uniform_int_distribution<long long> pick(0, n - 1);
        long long i = pick(rng), j = pick(rng);
        while (group[i] == group[j]) j = pick(rng);
        chunk.push_back(merge_sets(sets[std::min(i, j)], sets[std::max(i, j)]));
        if (chunk.size() == 64) flush();
      }
    }
    flush();
  });
  for (int k = 0; k < nw; ++k) {
    w.uf_failures += uf[k];
    w.greedy_failures += greedy[k];
  }
  return w;
}

}  // namespace uflab
