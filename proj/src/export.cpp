#include "uflab/export.hpp"

namespace uflab {

namespace {

Json coord_json(Coord c) { return Json::array({c.x2, c.y2}); }

double ld(long double v) { return static_cast<double>(v); }

}  // namespace

Json code_json(const SurfaceCode& code) {
  Json j;
  j["d"] = code.distance();
  j["num_data"] = code.num_data();
  Json data = Json::array();
  for (int q = 0; q < code.num_data(); ++q) data.push_back(coord_json(code.data_coord(q)));
  j["qubits"] = data;
  Json faces = Json::array();
  for (const Face& f : code.faces()) {
    Json jf;
    jf["kind"] = to_string(f.type);
    jf["region"] = to_string(f.region);
    jf["qubits"] = f.qubits;
    jf["meas"] = coord_json(f.meas);
    faces.push_back(jf);
  }
  j["faces"] = faces;
  j["logical_z"] = code.logical_z_support();
  j["logical_x"] = code.logical_x_support();
  return j;
}

Json graph_json(const DetectorGraph& g, bool with_lists, double p) {
  Json j;
  j["type"] = to_string(g.type());
  j["d"] = g.distance();
  j["rounds"] = g.rounds();
  j["num_nodes"] = g.num_nodes();
  j["num_detectors"] = g.num_detectors();
  j["num_edges"] = g.num_edges();
  j["xi"] = g.xi();
  j["xi_bulk"] = g.xi_bulk();
  if (!with_lists) return j;
  j["p"] = p;
  Json nodes = Json::array();
  for (int v = 0; v < g.num_nodes(); ++v) {
    const DetectorNode& n = g.node(v);
    Json jn;
    jn["id"] = n.id;
    if (n.boundary) {
      jn["kind"] = "boundary";
      jn["coord"] = nullptr;
      jn["side"] = n.side;
    } else {
      jn["kind"] = n.synthetic ? "closing" : "detector";
      jn["coord"] = Json::array({n.meas.x2, n.meas.y2, n.row});
      jn["face"] = n.face;
    }
    nodes.push_back(jn);
  }
  j["nodes"] = nodes;
  Json edges = Json::array();
  for (const DetectorEdge& e : g.edges()) {
    Json je;
    je["id"] = e.id;
    je["u"] = e.u;
    je["v"] = e.v;
    je["sources"] = e.sources;
    je["p_tilde"] = e.p_tilde(p);
    je["groups"] = e.multiplicity();
    je["observable"] = e.observable;
    edges.push_back(je);
  }
  j["edges"] = edges;
  return j;
}

Json certificate_json(const LocalityCertificate& c) {
  Json j;
  j["c_observed"] = c.c_observed;
  j["long_edges"] = c.long_edges;
  j["max_degree"] = c.max_degree;
  j["max_boundary_degree"] = c.max_boundary_degree;
  j["xi_observed"] = c.xi_observed;
  j["xi_bulk"] = c.xi_bulk;
  j["ball_radius_checked"] = c.ball_radius_checked;
  j["worst_ball_ratio"] = c.worst_ball_ratio;
  j["length_ok"] = c.length_ok;
  j["degree_ok"] = c.degree_ok;
  j["xi_ok"] = c.xi_ok;
  j["ball_ok"] = c.ball_ok;
  return j;
}

Json schedule_json(const ScaleSchedule& s, int levels) {
  Json j;
  j["family"] = to_string(s.family());
  if (s.family() != ScheduleFamily::Table) {
    j["beta"] = ld(s.beta());
    j["gamma"] = ld(s.gamma());
    j["lambda"] = ld(s.lambda());
  }
  Json rows = Json::array();
  for (int k = 1; k <= std::min(levels, s.levels()); ++k) {
    rows.push_back({{"k", k}, {"d", ld(s.d(k))}, {"b", ld(s.b(k))}, {"f", ld(s.f(k))}});
  }
  j["levels"] = rows;
  return j;
}

Json threshold_json(const ThresholdReport& r) {
  Json j;
  j["defined"] = r.defined;
  if (r.defined) {
    j["p_th"] = ld(r.p_th);
    j["log10_p_th"] = ld(r.log10_p_th);
  } else {
    j["p_th"] = nullptr;
  }
  j["c"] = ld(r.c);
  j["xi"] = ld(r.xi);
  j["Lambda"] = ld(r.Lambda);
  j["Delta"] = r.Delta;
  Json cons = Json::array();
  for (const auto& c : r.constraints) cons.push_back({{"name", c.name}, {"ok", c.ok}});
  j["constraints"] = cons;
  j["k0"] = r.k0;
  if (r.kbar_unbounded) {
    j["kbar"] = "unbounded";
  } else {
    j["kbar"] = r.kbar;
  }
  j["eta_limit"] = ld(r.eta_limit);
  return j;
}

Json decomposition_json(const ClusterDecomposition& c) {
  Json j;
  j["errors"] = c.errors;
  Json levels = Json::array();
  for (const ClusterLevel& lv : c.levels) {
    Json jl;
    jl["k"] = lv.level;
    jl["d"] = ld(lv.d);
    jl["b"] = ld(lv.b);
    jl["clusters"] = lv.clusters;
    jl["diameters"] = lv.diameters;
    Json seps = Json::array();
    for (int s : lv.component_separation) {
      if (s == EdgeMetric::kUnreachable) {
        seps.push_back(nullptr);
      } else {
        seps.push_back(s);
      }
    }
    jl["separation"] = seps;
    jl["remaining"] = lv.output;
    levels.push_back(jl);
  }
  j["levels"] = levels;
  j["emptied"] = c.emptied;
  j["unassigned"] = c.unassigned;
  return j;
}

Json isolated_json(const IsolatedDecomposition& c) {
  Json j;
  Json levels = Json::array();
  for (const IsolatedLevel& lv : c.levels) {
    levels.push_back({{"k", lv.level}, {"r", ld(lv.r)}, {"R", ld(lv.R)}, {"removed", lv.removed}, {"remaining", lv.output}});
  }
  j["levels"] = levels;
  j["isolation_checks"] = c.isolation_checks;
  j["isolation_violations"] = c.isolation_violations;
  return j;
}

Json stopping_json(const StoppingReport& r) {
  Json j;
  j["rounds_checked"] = r.rounds_checked;
  j["classes_checked"] = r.classes_checked;
  j["skipped_classes"] = r.skipped_classes;
  j["merge_violations"] = r.merge_violations;
  j["margin_violations"] = r.margin_violations;
  j["round_violations"] = r.round_violations;
  j["max_overgrowth"] = r.max_overgrowth;
  j["max_reach"] = r.max_reach;
  j["worst_margin_ratio"] = r.worst_margin_ratio;
  j["notes"] = r.notes;
  j["ok"] = r.ok();
  return j;
}

Json witness_json(const WitnessReport& w) {
  Json j;
  j["k"] = w.k;
  j["edge"] = w.edge;
  j["min_size"] = w.min_size;
  j["expected_size"] = w.expected_size;
  j["witnesses"] = w.witnesses;
  j["example"] = w.example;
  j["size_ok"] = w.size_ok;
  j["containment_ok"] = w.containment_ok;
  j["containment_next_ok"] = w.containment_next_ok;
  j["log10_count_bound"] = ld(w.log10_count_bound);
  j["count_ok"] = w.count_ok;
  return j;
}

Json cantor_json(const CantorPattern& p, const GreedyFailureReport& r) {
  Json j;
  j["d"] = p.d;
  j["round"] = p.round;
  j["row"] = p.row;
  j["chain"] = p.chain;
  j["chain_nodes"] = p.chain_nodes;
  Json segs = Json::array();
  for (const Segment& s : p.segments) segs.push_back({{"start", s.start}, {"length", s.length}});
  j["segments"] = segs;
  j["error_edges"] = p.error_edges;
  j["N"] = p.N;
  j["N_bound"] = cantor_error_bound(p.d);
  j["depth"] = p.split.depth;
  j["rightmost_lengths"] = p.split.rightmost;
  j["failure"] = r.greedy_flip;
  j["failure_highest_ids"] = r.greedy_flip_highest;
  j["complement_ok"] = r.complement_ok;
  j["complement_edges_ok"] = r.complement_edges_ok;
  j["uf_applicable"] = r.uf_applicable;
  j["uf_failure"] = r.uf_flip;
  return j;
}

Json runtime_record_json(const ParallelRuntimeRecord& r) {
  Json j;
  j["d"] = r.d;
  j["p"] = r.p;
  j["shot"] = r.shot;
  j["growth_rounds"] = r.growth_rounds;
  j["peel_work"] = r.peel_work;
  j["parallel_time"] = r.parallel_time;
  j["max_rounds"] = r.max_rounds;
  return j;
}

std::string trace_jsonl(const std::vector<TraceSample>& samples) {
  std::string out;
  for (const TraceSample& s : samples) {
    for (const TraceRound& r : s.growth) {
      Json merges = Json::array();
      for (const MergeEvent& m : r.merges) merges.push_back(Json::array({m.a, m.b, m.result}));
      const Json line = {{"d", s.d},           {"p", s.p},           {"shot", s.shot},   {"round", r.round},
                         {"clusters", r.clusters}, {"invalid", r.invalid}, {"grown", r.grown}, {"merges", merges}};
      out += line.dump() + "\n";
    }
    const Json last = {{"d", s.d},           {"p", s.p},         {"shot", s.shot},
                       {"syndrome", s.syndrome}, {"rounds", s.rounds}, {"merges", s.merges},
                       {"correction", s.correction}, {"failure", s.failure}};
    out += last.dump() + "\n";
  }
  return out;
}

}  // namespace uflab
