#include "uflab/frame_simulator.hpp"

#include <algorithm>
#include <stdexcept>

namespace uflab {

namespace {

struct LaneFault {
  int location;
  int lane;
  Pauli pauli;
};

void inject(std::vector<std::uint64_t>& fx, std::vector<std::uint64_t>& fz, int qubit, int lane, Pauli p) {
  const std::uint64_t bit = std::uint64_t{1} << lane;
  if (has_x(p)) fx[qubit] ^= bit;
  if (has_z(p)) fz[qubit] ^= bit;
}

template <typename Word, typename Meas, typename Data, typename Set>
void detectors_from(const Circuit& circuit, Meas meas, Data data, Set set) {
  const SurfaceCode& code = circuit.code();
  const int nf = code.num_faces();
  const int rounds = circuit.rounds();
  for (int f = 0; f < nf; ++f) {
    Word prev = 0;
    for (int r = 0; r < rounds; ++r) {
      const Word m = meas(circuit.measurement_index(f, r));
      set(circuit.detector_index(f, r), static_cast<Word>(prev ^ m));
      prev = m;
    }
    Word closing = 0;
    if (code.face(f).type == StabilizerType::Z) {
      Word parity = 0;
      for (int q : code.face(f).qubits) parity ^= data(q);
      closing = static_cast<Word>(parity ^ prev);
    }
    set(circuit.detector_index(f, rounds), closing);
  }
}

}  // namespace

FrameBatch simulate_batch(const Circuit& circuit, std::span<const FaultSet> faults) {
  if (faults.size() > 64) throw std::invalid_argument("a frame batch holds at most 64 shots");
  FrameBatch batch;
  batch.lanes = static_cast<int>(faults.size());
  batch.meas.assign(circuit.num_measurements(), 0);
  batch.final_data.assign(circuit.code().num_data(), 0);
  batch.detectors.assign(circuit.num_detector_slots(), 0);

  std::vector<LaneFault> pending;
  for (int lane = 0; lane < batch.lanes; ++lane) {
    for (const FaultEntry& e : faults[lane].entries) {
      if (e.location < 0 || e.location >= circuit.num_locations()) {
        throw std::out_of_range("fault location " + std::to_string(e.location) + " does not exist");
      }
      if (e.pauli != Pauli::I) pending.push_back({e.location, lane, e.pauli});
    }
  }
  std::sort(pending.begin(), pending.end(), [](const LaneFault& a, const LaneFault& b) {
    return a.location < b.location || (a.location == b.location && a.lane < b.lane);
  });

  const int n = circuit.num_qubits();
  const int nd = circuit.code().num_data();
  std::vector<std::uint64_t> fx(n, 0), fz(n, 0);
  const auto& locs = circuit.locations();
  std::size_t next = 0;

  auto flush = [&](int loc_end, bool before_measure_only) {
    while (next < pending.size() && pending[next].location < loc_end) {
      const FaultLocation& loc = locs[pending[next].location];
      if (before_measure_only && loc.slot != FaultSlot::BeforeMeasure) break;
      inject(fx, fz, loc.qubit, pending[next].lane, pending[next].pauli);
      ++next;
    }
  };

  const auto& ops = circuit.ops();
  for (int i = 0; i < static_cast<int>(ops.size()); ++i) {
    const CircuitOp& op = ops[i];
    const int loc_end = circuit.op_first_location(i) + circuit.op_location_count(i);
    const bool measure = op.kind == OpKind::MeasureZ || op.kind == OpKind::MeasureX;
    if (measure) flush(loc_end, true);
    switch (op.kind) {
      case OpKind::ResetZ:
      case OpKind::ResetX:
        fx[op.q0] = 0;
        fz[op.q0] = 0;
        break;
      case OpKind::Cnot:
        fx[op.q1] ^= fx[op.q0];
        fz[op.q0] ^= fz[op.q1];
        break;
      case OpKind::MeasureZ:
      case OpKind::MeasureX: {
        const std::uint64_t flip = op.kind == OpKind::MeasureZ ? fx[op.q0] : fz[op.q0];
        if (op.q0 < nd) {
          batch.final_data[op.q0] = flip;
        } else {
          batch.meas[circuit.measurement_index(op.q0 - nd, op.round)] = flip;
        }
        break;
      }
      case OpKind::Idle:
        break;
    }
    if (!measure) flush(loc_end, false);
  }
  batch.final_data_x.assign(fz.begin(), fz.begin() + nd);

  detectors_from<std::uint64_t>(
      circuit, [&](int i) { return batch.meas[i]; }, [&](int q) { return batch.final_data[q]; },
      [&](int i, std::uint64_t w) { batch.detectors[i] = w; });
  return batch;
}

ShotOutcome extract_lane(const Circuit& /*circuit*/, const FrameBatch& batch, int lane) {
  ShotOutcome out;
  out.meas.resize(batch.meas.size());
  out.final_data.resize(batch.final_data.size());
  out.detectors.resize(batch.detectors.size());
  for (std::size_t i = 0; i < batch.meas.size(); ++i) out.meas[i] = (batch.meas[i] >> lane) & 1u;
  for (std::size_t i = 0; i < batch.final_data.size(); ++i) out.final_data[i] = (batch.final_data[i] >> lane) & 1u;
  for (std::size_t i = 0; i < batch.detectors.size(); ++i) out.detectors[i] = (batch.detectors[i] >> lane) & 1u;
  out.final_data_x.resize(batch.final_data_x.size());
  for (std::size_t i = 0; i < batch.final_data_x.size(); ++i) out.final_data_x[i] = (batch.final_data_x[i] >> lane) & 1u;
  return out;
}

ShotOutcome simulate_shot(const Circuit& circuit, const FaultSet& faults) {
  const FrameBatch batch = simulate_batch(circuit, std::span<const FaultSet>(&faults, 1));
  return extract_lane(circuit, batch, 0);
}

void fill_detectors(const Circuit& circuit, ShotOutcome& outcome) {
  outcome.detectors.assign(circuit.num_detector_slots(), 0);
  detectors_from<std::uint8_t>(
      circuit, [&](int i) { return outcome.meas[i]; }, [&](int q) { return outcome.final_data[q]; },
      [&](int i, std::uint8_t b) { outcome.detectors[i] = b; });
}

}  // namespace uflab
