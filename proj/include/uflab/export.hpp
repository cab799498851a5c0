#pragma once

#include "json.hpp"
#include "uflab/adversarial.hpp"
#include "uflab/clustering.hpp"
#include "uflab/experiments.hpp"
#include "uflab/lattice.hpp"

namespace uflab {

using Json = nlohmann::ordered_json;

Json code_json(const SurfaceCode& code);
// With `with_lists`, adds nodes [{id, kind, coord}] and edges
// [{id, u, v, sources, p_tilde}] with p_tilde evaluated at p.
Json graph_json(const DetectorGraph& g, bool with_lists, double p = 1e-3);
Json certificate_json(const LocalityCertificate& c);
Json schedule_json(const ScaleSchedule& s, int levels);
Json threshold_json(const ThresholdReport& r);
Json decomposition_json(const ClusterDecomposition& c);
Json isolated_json(const IsolatedDecomposition& c);
Json stopping_json(const StoppingReport& r);
Json witness_json(const WitnessReport& w);
Json cantor_json(const CantorPattern& p, const GreedyFailureReport& r);
Json runtime_record_json(const ParallelRuntimeRecord& r);
// JSON lines: per kept shot, one record per growth round and then one
// record with the correction.
std::string trace_jsonl(const std::vector<TraceSample>& samples);

}  // namespace uflab
