#include "uflab/pauli.hpp"

#include <stdexcept>

namespace uflab {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I:
      return 'I';
    case Pauli::X:
      return 'X';
    case Pauli::Z:
      return 'Z';
    case Pauli::Y:
      return 'Y';
  }
  return '?';
}

Pauli parse_pauli(char c) {
  switch (c) {
    case 'I':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
  }
}

void PauliString::set(int q, Pauli p) {
  x_[q] = has_x(p);
  z_[q] = has_z(p);
}

int PauliString::weight() const {
  int w = 0;
  for (std::size_t q = 0; q < x_.size(); ++q) w += (x_[q] | z_[q]) != 0;
  return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.size() != size()) throw std::invalid_argument("Pauli strings of different length");
  int overlap = 0;
  for (std::size_t q = 0; q < x_.size(); ++q) {
    overlap ^= (x_[q] & other.z_[q]) ^ (z_[q] & other.x_[q]);
  }
  return overlap == 0;
}

PauliString& PauliString::operator*=(const PauliString& other) {
  if (other.size() != size()) throw std::invalid_argument("Pauli strings of different length");
  for (std::size_t q = 0; q < x_.size(); ++q) {
    x_[q] ^= other.x_[q];
    z_[q] ^= other.z_[q];
  }
  return *this;
}

PauliString operator*(PauliString a, const PauliString& b) {
  a *= b;
  return a;
}

std::string PauliString::str() const {
  std::string s;
  s.reserve(x_.size());
  for (int q = 0; q < size(); ++q) s.push_back(pauli_char(at(q)));
  return s;
}

PauliString stabilizer_of(const SurfaceCode& code, const Face& f) {
  PauliString s(code.num_data());
  const Pauli p = f.type == StabilizerType::X ? Pauli::X : Pauli::Z;
  for (int q : f.qubits) s.set(q, p);
  return s;
}

PauliString logical_z(const SurfaceCode& code) {
  PauliString s(code.num_data());
  for (int q : code.logical_z_support()) s.set(q, Pauli::Z);
  return s;
}

PauliString logical_x(const SurfaceCode& code) {
  PauliString s(code.num_data());
  for (int q : code.logical_x_support()) s.set(q, Pauli::X);
  return s;
}

}  // namespace uflab
