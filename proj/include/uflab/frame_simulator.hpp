#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uflab/circuit.hpp"

namespace uflab {

// Pauli-frame propagation over up to 64 shots at once, one bit lane per shot.
// Measurement results are flips relative to the noiseless reference run.
struct FrameBatch {
  int lanes = 0;
  std::vector<std::uint64_t> meas;        // per Circuit::measurement_index
  std::vector<std::uint64_t> final_data;  // per data qubit
  std::vector<std::uint64_t> detectors;   // per Circuit::detector_index
  std::vector<std::uint64_t> final_data_x;  // Z frame of the data after the last op

  bool lane_bit(const std::vector<std::uint64_t>& words, int i, int lane) const {
    return ((words[i] >> lane) & 1u) != 0;
  }
};

FrameBatch simulate_batch(const Circuit& circuit, std::span<const FaultSet> faults);

ShotOutcome extract_lane(const Circuit& circuit, const FrameBatch& batch, int lane);

ShotOutcome simulate_shot(const Circuit& circuit, const FaultSet& faults);

// Detector bits from measurement flips: row 0 copies the first round, later
// rows XOR consecutive rounds, and the last row closes the Z faces against
// the data readout.
void fill_detectors(const Circuit& circuit, ShotOutcome& outcome);

}  // namespace uflab
