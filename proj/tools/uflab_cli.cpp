// Command-line front end: every subcommand is deterministic under --seed and
// writes CSV or JSON to --out (stdout when omitted).
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "uflab/adversarial.hpp"
#include "uflab/clustering.hpp"
#include "uflab/experiments.hpp"
#include "uflab/export.hpp"
#include "uflab/frame_simulator.hpp"
#include "uflab/verify.hpp"

using namespace uflab;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvariant = 2;

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

CheckType parse_type(const std::string& s) {
  if (s == "z") return CheckType::ZChecks;
  if (s == "x") return CheckType::XChecks;
  throw std::invalid_argument("graph type must be z or x");
}

ScaleSchedule make_schedule(const std::string& family, double beta, double gamma, double lambda,
                            const std::vector<double>& td, const std::vector<double>& tb) {
  if (family == "uf") return ScaleSchedule::union_find(beta, gamma, lambda);
  if (family == "greedy") return ScaleSchedule::greedy(beta, gamma, lambda);
  if (family == "table") {
    return ScaleSchedule::table(std::vector<long double>(td.begin(), td.end()),
                                std::vector<long double>(tb.begin(), tb.end()));
  }
  throw std::invalid_argument("unknown schedule family: " + family);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Union-find decoder analysis toolkit"};
  app.require_subcommand(1);

  std::string out;
  std::uint64_t seed = 1;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "output file (stdout when omitted)");
    sub->add_option("--seed", seed, "random seed");
  };

  // build-code
  int code_d = 3;
  auto* build_code = app.add_subcommand("build-code", "surface code layout as JSON");
  build_code->add_option("--d", code_d, "code distance")->required();
  common(build_code);

  // build-graph
  int graph_d = 3, graph_rounds = 0, cert_radius = 6;
  std::string graph_type = "z";
  bool with_edges = false, certificate = false;
  double graph_p = 1e-3;
  auto* build_graph = app.add_subcommand("build-graph", "detector graph summary as JSON");
  build_graph->add_option("--d", graph_d, "code distance")->required();
  build_graph->add_option("--rounds", graph_rounds, "rounds (default d)");
  build_graph->add_option("--type", graph_type, "z or x");
  build_graph->add_flag("--edges", with_edges, "include the node and edge lists");
  build_graph->add_option("--p", graph_p, "physical error rate for p_tilde");
  build_graph->add_flag("--certificate", certificate, "run the locality certificate");
  build_graph->add_option("--radius", cert_radius, "largest ball radius for the certificate");
  common(build_graph);

  // memory and sweep
  ExperimentConfig cfg;
  int mem_d = 3;
  double mem_p = 1e-3;
  std::string decoder = "uf", trace_out;
  auto experiment_opts = [&](CLI::App* sub) {
    sub->add_option("--shots", cfg.shots, "shots per cell");
    sub->add_option("--rounds", cfg.rounds, "rounds (default d)");
    sub->add_option("--decoder", decoder, "uf or greedy");
    sub->add_option("--workers", cfg.workers, "worker threads (default UFLAB_WORKERS or all cores)");
    sub->add_flag("--timing", cfg.timing, "fill wall_ms (breaks byte-identical output)");
    sub->add_option("--trace-rate", cfg.trace_rate, "fraction of shots whose decoding is kept");
    sub->add_option("--trace-out", trace_out, "JSON-lines file for the kept shots");
    common(sub);
  };
  auto* memory = app.add_subcommand("memory", "memory experiment at one (d, p)");
  memory->add_option("--d", mem_d, "code distance")->required();
  memory->add_option("--p", mem_p, "physical error rate")->required();
  experiment_opts(memory);

  std::vector<int> sweep_d;
  std::vector<double> sweep_p;
  auto* sweep = app.add_subcommand("sweep", "memory experiments over a grid of d and p");
  sweep->add_option("--d", sweep_d, "code distances")->required()->expected(1, -1);
  sweep->add_option("--p", sweep_p, "physical error rates")->required()->expected(1, -1);
  experiment_opts(sweep);

  // threshold
  std::string family = "uf";
  double beta = 1.2, gamma = 2.8, lambda = 107, xi = 1, Lambda = kLambdaSurface, thr_p = 0;
  int Delta = kDeltaSurface, thr_d = 0, levels = 8;
  std::vector<double> table_d, table_b;
  auto* threshold = app.add_subcommand("threshold", "analytical threshold report as JSON");
  auto schedule_opts = [&](CLI::App* sub) {
    sub->add_option("--family", family, "uf, greedy or table");
    sub->add_option("--beta", beta);
    sub->add_option("--gamma", gamma);
    sub->add_option("--lambda", lambda);
    sub->add_option("--table-d", table_d, "d_k values for a table schedule");
    sub->add_option("--table-b", table_b, "b_k values for a table schedule");
  };
  schedule_opts(threshold);
  threshold->add_option("--xi", xi);
  threshold->add_option("--Lambda", Lambda);
  threshold->add_option("--Delta", Delta);
  threshold->add_option("--d", thr_d, "distance for k0 and kbar");
  threshold->add_option("--p", thr_p, "physical error rate for kbar");
  threshold->add_option("--levels", levels, "schedule levels to list");
  common(threshold);

  // cluster-analyze
  int ca_d = 7, ca_rounds = 0;
  double ca_p = 1e-3;
  long long ca_shots = 1000;
  auto* cluster = app.add_subcommand("cluster-analyze", "level decompositions and stopping-guarantee checks");
  cluster->add_option("--d", ca_d);
  cluster->add_option("--rounds", ca_rounds);
  cluster->add_option("--p", ca_p);
  cluster->add_option("--shots", ca_shots);
  schedule_opts(cluster);
  common(cluster);

  // cantor
  int cantor_d = 23, cantor_rounds = 3;
  auto* cantor = app.add_subcommand("cantor", "Cantor error pattern against the greedy decoder");
  cantor->add_option("--d", cantor_d)->required();
  cantor->add_option("--rounds", cantor_rounds);
  common(cantor);

  // parallel-runtime
  std::vector<int> pr_d{7, 11, 15};
  double pr_p = 1e-3;
  long long pr_shots = 10000;
  int pr_rounds = 0, pr_workers = 0;
  auto* runtime = app.add_subcommand("parallel-runtime", "simulated parallel UF time as CSV");
  runtime->add_option("--d", pr_d)->expected(1, -1);
  runtime->add_option("--p", pr_p);
  runtime->add_option("--shots", pr_shots);
  runtime->add_option("--rounds", pr_rounds);
  runtime->add_option("--workers", pr_workers);
  common(runtime);

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*build_code) {
      emit(out, dump(code_json(SurfaceCode(code_d))));
    } else if (*build_graph) {
      const Circuit c = build_syndrome_circuit(SurfaceCode(graph_d), graph_rounds > 0 ? graph_rounds : graph_d);
      const auto g = build_detector_graph(c, parse_type(graph_type));
      Json j = graph_json(*g, with_edges, graph_p);
      if (certificate) j["certificate"] = certificate_json(verify_locality(*g, cert_radius));
      emit(out, dump(j));
    } else if (*memory || *sweep) {
      cfg.decoder = parse_decoder(decoder);
      cfg.seed = seed;
      if (*memory) {
        cfg.distances = {mem_d};
        cfg.ps = {mem_p};
      } else {
        cfg.distances = sweep_d;
        cfg.ps = sweep_p;
      }
      const MemoryResult r = run_memory(cfg);
      emit(out, sweep_csv(r.rows));
      if (!trace_out.empty()) emit(trace_out, trace_jsonl(r.traces));
    } else if (*threshold) {
      const ScaleSchedule s = make_schedule(family, beta, gamma, lambda, table_d, table_b);
      Json j = threshold_json(analytical_threshold(xi, Lambda, Delta, s, thr_d, thr_p));
      j["schedule"] = schedule_json(s, levels);
      emit(out, dump(j));
    } else if (*cluster) {
      const ScaleSchedule s = make_schedule(family, beta, gamma, lambda, table_d, table_b);
      const int rounds = ca_rounds > 0 ? ca_rounds : ca_d;
      const Circuit c = build_syndrome_circuit(SurfaceCode(ca_d), rounds);
      const auto g = build_detector_graph(c, CheckType::ZChecks);
      const DetectorGraphMetric m(*g);
      const std::uint64_t cs = cell_seed(seed, ca_d, rounds, ca_p);
      StoppingReport total;
      std::vector<long long> per_level;
      long long unassigned = 0, isolation_violations = 0, nesting_violations = 0;
      for (long long shot = 0; shot < ca_shots; ++shot) {
        const FaultSet fs = sample_faults(c, ca_p, RandomStream{cs, static_cast<std::uint64_t>(shot)});
        const Syndrome syn = g->syndrome_of(simulate_shot(c, fs));
        const std::vector<int> n = error_edges(*g, fs);
        const ClusterDecomposition cd = decompose_clustered(m, n, s);
        const IsolatedDecomposition id = decompose_isolated(m, n, s);
        isolation_violations += id.isolation_violations;
        if (!clustered_within_isolated(cd, id)) ++nesting_violations;
        if (!cd.unassigned.empty()) ++unassigned;
        for (const ClusterLevel& lv : cd.levels) {
          if (static_cast<int>(per_level.size()) < lv.level) per_level.resize(lv.level, 0);
          per_level[lv.level - 1] += static_cast<long long>(lv.clusters.size());
        }
        total.absorb(verify_stopping_guarantee(*g, syn, uf_decode(*g, syn, true).trace, cd, s));
      }
      Json j;
      j["d"] = ca_d;
      j["rounds"] = rounds;
      j["p"] = ca_p;
      j["shots"] = ca_shots;
      j["schedule"] = schedule_json(s, 4);
      j["clusters_per_level"] = per_level;
      j["shots_not_emptied"] = unassigned;
      j["isolation_violations"] = isolation_violations;
      j["nesting_violations"] = nesting_violations;
      j["stopping_guarantee"] = stopping_json(total);
      emit(out, dump(j));
    } else if (*cantor) {
      const Circuit c = build_syndrome_circuit(SurfaceCode(cantor_d), cantor_rounds);
      const auto g = build_detector_graph(c, CheckType::ZChecks);
      const CantorPattern p = cantor_pattern(c, *g);
      emit(out, dump(cantor_json(p, verify_greedy_failure(c, *g, p))));
    } else if (*runtime) {
      std::vector<RuntimeSummary> rows;
      for (int d : pr_d) rows.push_back(runtime_scaling(d, pr_rounds, pr_p, pr_shots, seed, pr_workers));
      emit(out, runtime_csv(rows));
    } else if (*verify) {
      const auto results = run_invariant_suite(seed);
      bool ok = true;
      Json j = Json::array();
      for (const auto& r : results) {
        ok = ok && r.ok;
        j.push_back({{"check", r.name}, {"ok", r.ok}, {"detail", r.detail}});
        std::cerr << (r.ok ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
      }
      emit(out, dump(j));
      return ok ? 0 : kExitInvariant;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return 0;
}
