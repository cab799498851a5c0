#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uflab/lattice.hpp"

namespace uflab {

// Single-qubit Pauli in symplectic form: bit 0 is the X part, bit 1 the Z part.
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline bool has_x(Pauli p) { return (static_cast<std::uint8_t>(p) & 1u) != 0; }
inline bool has_z(Pauli p) { return (static_cast<std::uint8_t>(p) & 2u) != 0; }
inline Pauli make_pauli(bool x, bool z) { return static_cast<Pauli>((x ? 1u : 0u) | (z ? 2u : 0u)); }

char pauli_char(Pauli p);
Pauli parse_pauli(char c);  // throws std::invalid_argument on anything but I, X, Y, Z

// Phase-free n-qubit Pauli operator.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n) : x_(n, 0), z_(n, 0) {}

  int size() const { return static_cast<int>(x_.size()); }
  Pauli at(int q) const { return make_pauli(x_[q], z_[q]); }
  void set(int q, Pauli p);

  bool x(int q) const { return x_[q] != 0; }
  bool z(int q) const { return z_[q] != 0; }

  int weight() const;
  bool is_identity() const { return weight() == 0; }
  bool commutes_with(const PauliString& other) const;

  PauliString& operator*=(const PauliString& other);
  bool operator==(const PauliString& other) const = default;

  std::string str() const;

 private:
  std::vector<std::uint8_t> x_;
  std::vector<std::uint8_t> z_;
};

PauliString operator*(PauliString a, const PauliString& b);

// X (resp. Z) on every qubit of an X (resp. Z) face.
PauliString stabilizer_of(const SurfaceCode& code, const Face& f);
PauliString logical_z(const SurfaceCode& code);
PauliString logical_x(const SurfaceCode& code);

}  // namespace uflab
