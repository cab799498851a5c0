#include "uflab/circuit.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace uflab {

namespace {

struct Direction {
  int dx2;
  int dy2;
};

constexpr Direction kLT{-1, 1};
constexpr Direction kLB{-1, -1};
constexpr Direction kRT{1, 1};
constexpr Direction kRB{1, -1};

// Per CNOT layer: the corner each face type touches and which digons join in.
struct Layer {
  Direction x_dir;
  FaceRegion x_digons;
  Direction z_dir;
  FaceRegion z_digons;
};

constexpr Layer kLayers[4] = {
    {kLT, FaceRegion::RightEdge, kLT, FaceRegion::BottomEdge},
    {kLB, FaceRegion::RightEdge, kRT, FaceRegion::BottomEdge},
    {kRT, FaceRegion::LeftEdge, kLB, FaceRegion::TopEdge},
    {kRB, FaceRegion::LeftEdge, kRB, FaceRegion::TopEdge},
};

int corner_qubit(const SurfaceCode& code, const Face& f, Direction dir) {
  const int x2 = f.meas.x2 + dir.dx2;
  const int y2 = f.meas.y2 + dir.dy2;
  const int q = code.data_index(x2 / 2, y2 / 2);
  if (q < 0) throw InvalidCircuit("CNOT corner falls off the lattice");
  return q;
}

const std::map<OpKind, std::string>& kind_names() {
  static const std::map<OpKind, std::string> names = {
      {OpKind::ResetZ, "RZ"},   {OpKind::ResetX, "RX"},   {OpKind::Cnot, "CNOT"},
      {OpKind::MeasureZ, "MZ"}, {OpKind::MeasureX, "MX"}, {OpKind::Idle, "IDLE"},
  };
  return names;
}

}  // namespace

std::vector<CircuitOp> round_ops(const SurfaceCode& code, int round, bool first, bool last) {
  std::vector<CircuitOp> ops;
  const int nd = code.num_data();
  const int nf = code.num_faces();

  for (int f = 0; f < nf; ++f) {
    const auto kind = code.face(f).type == StabilizerType::X ? OpKind::ResetX : OpKind::ResetZ;
    ops.push_back({round, kResetStep, kind, nd + f});
  }
  for (int q = 0; q < nd; ++q) {
    ops.push_back({round, kResetStep, first ? OpKind::ResetZ : OpKind::Idle, q});
  }

  for (int layer = 0; layer < 4; ++layer) {
    const int step = kFirstCnotStep + layer;
    const Layer& L = kLayers[layer];
    std::vector<char> busy(nd, 0);
    for (int f = 0; f < nf; ++f) {
      const Face& face = code.face(f);
      if (face.type == StabilizerType::X) {
        if (face.is_digon() && face.region != L.x_digons) continue;
        const int q = corner_qubit(code, face, L.x_dir);
        ops.push_back({round, step, OpKind::Cnot, nd + f, q});
        busy[q] = 1;
      } else {
        if (face.is_digon() && face.region != L.z_digons) continue;
        const int q = corner_qubit(code, face, L.z_dir);
        ops.push_back({round, step, OpKind::Cnot, q, nd + f});
        busy[q] = 1;
      }
    }
    for (int q = 0; q < nd; ++q) {
      if (!busy[q]) ops.push_back({round, step, OpKind::Idle, q});
    }
  }

  for (int f = 0; f < nf; ++f) {
    const auto kind = code.face(f).type == StabilizerType::X ? OpKind::MeasureX : OpKind::MeasureZ;
    ops.push_back({round, kMeasureStep, kind, nd + f});
  }
  for (int q = 0; q < nd; ++q) {
    ops.push_back({round, kMeasureStep, last ? OpKind::MeasureZ : OpKind::Idle, q});
  }
  return ops;
}

Circuit build_syndrome_circuit(const SurfaceCode& code, int rounds) {
  if (rounds < 1) throw std::invalid_argument("rounds must be at least 1");
  std::vector<CircuitOp> ops;
  for (int r = 0; r < rounds; ++r) {
    auto layer = round_ops(code, r, r == 0, r == rounds - 1);
    ops.insert(ops.end(), layer.begin(), layer.end());
  }
  return Circuit(code, rounds, std::move(ops));
}

Circuit::Circuit(SurfaceCode code, int rounds, std::vector<CircuitOp> ops)
    : code_(std::move(code)), rounds_(rounds), ops_(std::move(ops)) {
  if (rounds_ < 1) throw std::invalid_argument("rounds must be at least 1");
  index_qubits();
  validate();

  op_loc_begin_.reserve(ops_.size() + 1);
  for (int i = 0; i < static_cast<int>(ops_.size()); ++i) {
    op_loc_begin_.push_back(static_cast<int>(locations_.size()));
    const CircuitOp& op = ops_[i];
    auto add = [&](FaultSlot slot, int q) {
      locations_.push_back({static_cast<int>(locations_.size()), i, slot, q});
    };
    switch (op.kind) {
      case OpKind::ResetZ:
      case OpKind::ResetX:
        add(FaultSlot::AfterReset, op.q0);
        break;
      case OpKind::Cnot:
        add(FaultSlot::AfterGateControl, op.q0);
        add(FaultSlot::AfterGateTarget, op.q1);
        break;
      case OpKind::MeasureZ:
      case OpKind::MeasureX:
        add(FaultSlot::BeforeMeasure, op.q0);
        break;
      case OpKind::Idle:
        add(FaultSlot::Idle, op.q0);
        break;
    }
  }
  op_loc_begin_.push_back(static_cast<int>(locations_.size()));
}

void Circuit::index_qubits() {
  coords_.clear();
  for (int q = 0; q < code_.num_data(); ++q) coords_.push_back(code_.data_coord(q));
  for (const Face& f : code_.faces()) coords_.push_back(f.meas);
}

Coord Circuit::qubit_coord(int q) const { return coords_.at(q); }

int Circuit::qubit_at(Coord c) const {
  for (int q = 0; q < num_qubits(); ++q) {
    if (coords_[q] == c) return q;
  }
  return -1;
}

void Circuit::validate() const {
  const int n = num_qubits();
  std::map<std::pair<int, int>, std::vector<char>> used;
  std::vector<int> measured(code_.num_faces() * rounds_, 0);
  for (const CircuitOp& op : ops_) {
    if (op.round < 0 || op.round >= rounds_) throw InvalidCircuit("op round out of range");
    if (op.step < 0 || op.step >= kStepsPerRound) throw InvalidCircuit("op step out of range");
    if (op.q0 < 0 || op.q0 >= n) throw InvalidCircuit("op qubit out of range");
    auto& busy = used[{op.round, op.step}];
    if (busy.empty()) busy.assign(n, 0);
    auto claim = [&](int q) {
      if (busy[q]) {
        throw InvalidCircuit("qubit " + std::to_string(q) + " used twice in round " + std::to_string(op.round) +
                             " step " + std::to_string(op.step));
      }
      busy[q] = 1;
    };
    claim(op.q0);
    if (op.kind == OpKind::Cnot) {
      if (op.q1 < 0 || op.q1 >= n || op.q1 == op.q0) throw InvalidCircuit("bad CNOT target");
      claim(op.q1);
    }
    if ((op.kind == OpKind::MeasureX || op.kind == OpKind::MeasureZ) && !is_data(op.q0)) {
      measured[measurement_index(op.q0 - code_.num_data(), op.round)]++;
    }
  }
  for (int m : measured) {
    if (m != 1) throw InvalidCircuit("every measurement qubit must be measured exactly once per round");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t RandomStream::bits(std::uint64_t counter, std::uint64_t salt) const {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ shot);
  return splitmix64(h ^ (counter << 2 | salt));
}

double RandomStream::uniform(std::uint64_t counter, std::uint64_t salt) const {
  return static_cast<double>(bits(counter, salt) >> 11) * 0x1.0p-53;
}

FaultSet sample_faults(const Circuit& circuit, double p, const RandomStream& stream) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("fault probability must lie in [0, 1]");
  FaultSet out;
  if (p == 0.0) return out;
  const int n_ops = static_cast<int>(circuit.ops().size());
  for (int op = 0; op < n_ops; ++op) {
    const int count = circuit.op_location_count(op);
    if (count == 0) continue;
    const int first = circuit.op_first_location(op);
    if (!(stream.uniform(first, 0) < p) && p < 1.0) continue;
    const std::uint64_t choice = stream.bits(first, 1);
    if (count == 1) {
      out.entries.push_back({first, static_cast<Pauli>(1 + choice % 3)});
    } else {
      const auto pair = static_cast<unsigned>(1 + choice % 15);
      const auto a = static_cast<Pauli>(pair & 3u);
      const auto b = static_cast<Pauli>(pair >> 2);
      if (a != Pauli::I) out.entries.push_back({first, a});
      if (b != Pauli::I) out.entries.push_back({first + 1, b});
    }
  }
  return out;
}

int count_noise_groups(const Circuit& circuit) {
  int groups = 0;
  for (int op = 0; op < static_cast<int>(circuit.ops().size()); ++op) {
    groups += circuit.op_location_count(op) > 0;
  }
  return groups;
}

std::string to_string(OpKind kind) { return kind_names().at(kind); }

std::string to_string(FaultSlot slot) {
  switch (slot) {
    case FaultSlot::AfterReset:
      return "after-reset";
    case FaultSlot::AfterGateControl:
      return "after-gate-control";
    case FaultSlot::AfterGateTarget:
      return "after-gate-target";
    case FaultSlot::BeforeMeasure:
      return "before-measure";
    case FaultSlot::Idle:
      return "idle";
  }
  return "?";
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream out;
  auto coord = [&](int q) {
    const Coord c = circuit.qubit_coord(q);
    return std::to_string(c.x2) + "," + std::to_string(c.y2);
  };
  for (const CircuitOp& op : circuit.ops()) {
    out << op.round << ' ' << op.step << ' ' << to_string(op.kind) << ' ' << coord(op.q0);
    if (op.kind == OpKind::Cnot) out << ' ' << coord(op.q1);
    out << '\n';
  }
  return out.str();
}

std::vector<CircuitOp> parse_circuit_ops(const SurfaceCode& code, const std::string& text) {
  std::map<std::string, OpKind> by_name;
  for (const auto& [k, name] : kind_names()) by_name[name] = k;
  std::map<Coord, int> by_coord;
  for (int q = 0; q < code.num_data(); ++q) by_coord[code.data_coord(q)] = q;
  for (int f = 0; f < code.num_faces(); ++f) by_coord[code.face(f).meas] = code.num_data() + f;

  auto parse_coord = [&](const std::string& tok) {
    const auto comma = tok.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad coordinate '" + tok + "'");
    const Coord c{std::stoi(tok.substr(0, comma)), std::stoi(tok.substr(comma + 1))};
    auto it = by_coord.find(c);
    if (it == by_coord.end()) throw std::invalid_argument("no qubit at '" + tok + "'");
    return it->second;
  };

  std::vector<CircuitOp> ops;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    CircuitOp op;
    std::string kind, a, b;
    if (!(ls >> op.round >> op.step >> kind >> a)) throw std::invalid_argument("bad circuit line: " + line);
    auto it = by_name.find(kind);
    if (it == by_name.end()) throw std::invalid_argument("unknown op kind: " + kind);
    op.kind = it->second;
    op.q0 = parse_coord(a);
    if (op.kind == OpKind::Cnot) {
      if (!(ls >> b)) throw std::invalid_argument("CNOT needs a target: " + line);
      op.q1 = parse_coord(b);
    }
    ops.push_back(op);
  }
  return ops;
}

Circuit parse_circuit(const SurfaceCode& code, const std::string& text) {
  auto ops = parse_circuit_ops(code, text);
  int rounds = 0;
  for (const auto& op : ops) rounds = std::max(rounds, op.round + 1);
  return Circuit(code, rounds, std::move(ops));
}

std::string to_text(const FaultSet& faults) {
  std::ostringstream out;
  for (const FaultEntry& e : faults.entries) out << e.location << ' ' << pauli_char(e.pauli) << '\n';
  return out.str();
}

FaultSet parse_fault_set(const std::string& text) {
  FaultSet out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int loc = 0;
    std::string p;
    if (!(ls >> loc >> p) || p.size() != 1) throw std::invalid_argument("bad fault line: " + line);
    out.entries.push_back({loc, parse_pauli(p[0])});
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const FaultEntry& a, const FaultEntry& b) { return a.location < b.location; });
  for (std::size_t i = 1; i < out.entries.size(); ++i) {
    if (out.entries[i].location == out.entries[i - 1].location) {
      throw std::invalid_argument("duplicate fault location " + std::to_string(out.entries[i].location));
    }
  }
  return out;
}

}  // namespace uflab
