#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uflab/lattice.hpp"
#include "uflab/pauli.hpp"

namespace uflab {

// Steps within one syndrome-extraction round.
inline constexpr int kResetStep = 0;
inline constexpr int kFirstCnotStep = 1;
inline constexpr int kLastCnotStep = 4;
inline constexpr int kMeasureStep = 5;
inline constexpr int kStepsPerRound = 6;

enum class OpKind : std::uint8_t { ResetZ, ResetX, Cnot, MeasureZ, MeasureX, Idle };

struct CircuitOp {
  int round = 0;
  int step = 0;
  OpKind kind = OpKind::Idle;
  int q0 = -1;  // the acted-on qubit, or the control of a CNOT
  int q1 = -1;  // CNOT target

  bool operator==(const CircuitOp&) const = default;
};

enum class FaultSlot : std::uint8_t { AfterReset, AfterGateControl, AfterGateTarget, BeforeMeasure, Idle };

// One place where a Pauli fault may occur. Locations of the same op form a
// noise group: a CNOT is afflicted as a whole and receives a two-qubit Pauli.
struct FaultLocation {
  int id = 0;
  int op = 0;
  FaultSlot slot = FaultSlot::Idle;
  int qubit = 0;
};

struct FaultEntry {
  int location = 0;
  Pauli pauli = Pauli::I;

  bool operator==(const FaultEntry&) const = default;
};

struct FaultSet {
  std::vector<FaultEntry> entries;  // sorted by location, ids distinct

  bool empty() const { return entries.empty(); }
  bool operator==(const FaultSet&) const = default;
};

class InvalidCircuit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Memory-experiment circuit: data reset to |0> at the start of round 0,
// `rounds` syndrome-extraction rounds, data read out in Z at the end of the
// last round. Qubit q < d^2 is a data qubit; d^2 + f is the measurement qubit
// of face f.
class Circuit {
 public:
  Circuit(SurfaceCode code, int rounds, std::vector<CircuitOp> ops);

  const SurfaceCode& code() const { return code_; }
  int rounds() const { return rounds_; }
  int num_qubits() const { return code_.num_data() + code_.num_faces(); }
  int ancilla(int face) const { return code_.num_data() + face; }
  bool is_data(int q) const { return q < code_.num_data(); }
  Coord qubit_coord(int q) const;
  int qubit_at(Coord c) const;  // -1 when no qubit sits there

  const std::vector<CircuitOp>& ops() const { return ops_; }
  const std::vector<FaultLocation>& locations() const { return locations_; }
  int num_locations() const { return static_cast<int>(locations_.size()); }
  // Locations of op i are [op_first_location(i), op_first_location(i + 1)).
  int op_first_location(int op) const { return op_loc_begin_[op]; }
  int op_location_count(int op) const { return op_loc_begin_[op + 1] - op_loc_begin_[op]; }

  // Number of stabilizer measurement records (faces x rounds) and their order.
  int num_measurements() const { return code_.num_faces() * rounds_; }
  int measurement_index(int face, int round) const { return round * code_.num_faces() + face; }

  // Detector rows: 0..rounds-1 from ancilla measurements, row `rounds`
  // synthesised from the final data readout (Z faces only).
  int detector_rows() const { return rounds_ + 1; }
  int detector_index(int face, int row) const { return row * code_.num_faces() + face; }
  int num_detector_slots() const { return detector_rows() * code_.num_faces(); }

 private:
  void index_qubits();
  void validate() const;

  SurfaceCode code_;
  int rounds_;
  std::vector<CircuitOp> ops_;
  std::vector<FaultLocation> locations_;
  std::vector<int> op_loc_begin_;
  std::vector<Coord> coords_;
};

// Standard schedule: reset, four CNOT layers, measurement, repeated `rounds`
// times. Data qubits idle whenever they are not touched.
Circuit build_syndrome_circuit(const SurfaceCode& code, int rounds);

// The ops of a single round in schedule order, for rounds >= 0.
std::vector<CircuitOp> round_ops(const SurfaceCode& code, int round, bool first, bool last);

struct ShotOutcome {
  std::vector<std::uint8_t> meas;        // flips of m_{f,i} relative to the noiseless reference
  std::vector<std::uint8_t> final_data;  // Z readout flips of the d^2 data qubits
  std::vector<std::uint8_t> detectors;   // indexed by Circuit::detector_index
  // X-basis flips of the data at the end of the circuit. Not a measurement;
  // only used to evaluate the logical X observable of the X-check graph.
  std::vector<std::uint8_t> final_data_x;

  bool operator==(const ShotOutcome&) const = default;
};

// Counter-based randomness keyed by (seed, shot, counter). Shots are
// reproducible and independent of the order in which they are drawn.
struct RandomStream {
  std::uint64_t seed = 0;
  std::uint64_t shot = 0;

  std::uint64_t bits(std::uint64_t counter, std::uint64_t salt = 0) const;
  double uniform(std::uint64_t counter, std::uint64_t salt = 0) const;
};

std::uint64_t splitmix64(std::uint64_t x);

// Each op is afflicted independently with probability p. A one-qubit op gets
// a uniform non-identity Pauli; a CNOT gets one of the 15 non-identity
// two-qubit Paulis, recorded on its control and target slots.
FaultSet sample_faults(const Circuit& circuit, double p, const RandomStream& stream);

// Number of ops that carry at least one location (the noise groups).
int count_noise_groups(const Circuit& circuit);

std::string to_text(const Circuit& circuit);
std::vector<CircuitOp> parse_circuit_ops(const SurfaceCode& code, const std::string& text);
Circuit parse_circuit(const SurfaceCode& code, const std::string& text);
std::string to_text(const FaultSet& faults);
FaultSet parse_fault_set(const std::string& text);

std::string to_string(OpKind kind);
std::string to_string(FaultSlot slot);

}  // namespace uflab
