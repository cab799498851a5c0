#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace uflab {

// Lattice position stored as doubled integers so that the half-integer
// offsets of measurement qubits are exact.
struct Coord {
  int x2 = 0;
  int y2 = 0;

  static constexpr Coord units(int x, int y) { return {2 * x, 2 * y}; }
  double x() const { return x2 / 2.0; }
  double y() const { return y2 / 2.0; }

  auto operator<=>(const Coord&) const = default;
};

enum class StabilizerType : std::uint8_t { X, Z };

// Where a face sits. Digons on x = 0 / x = d-1 carry X checks, digons on
// y = 0 / y = d-1 carry Z checks.
enum class FaceRegion : std::uint8_t { Bulk, LeftEdge, RightEdge, BottomEdge, TopEdge };

struct Face {
  StabilizerType type;
  FaceRegion region;
  std::vector<int> qubits;  // data-qubit indices, 4 for squares and 2 for digons
  Coord meas;               // measurement-qubit position
  int anchor_x = 0;         // (x, y) arguments of S(x, y), D_x(x, y) or D_y(x, y)
  int anchor_y = 0;

  bool is_digon() const { return region != FaceRegion::Bulk; }
};

class UnsupportedDistance : public std::invalid_argument {
 public:
  explicit UnsupportedDistance(int d);
};

// Rotated surface code on a d x d grid with 0-indexed qubits (x, y) in
// {0..d-1}^2; index(x, y) = y * d + x. Only odd d >= 3 is supported.
class SurfaceCode {
 public:
  explicit SurfaceCode(int distance);

  int distance() const { return d_; }
  int num_data() const { return d_ * d_; }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  int data_index(int x, int y) const;  // -1 when (x, y) is off the grid
  Coord data_coord(int q) const { return Coord::units(q % d_, q / d_); }

  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_.at(f); }

  // Face indices of one stabilizer type, in face order.
  const std::vector<int>& faces_of(StabilizerType t) const {
    return t == StabilizerType::X ? x_faces_ : z_faces_;
  }
  // Position of a face within faces_of(its type).
  int type_rank(int f) const { return type_rank_.at(f); }

  // Faces of the given type that contain data qubit q.
  std::vector<int> faces_containing(int q, StabilizerType t) const;

  // Z on the column x = 0 and X on the row y = 0.
  const std::vector<int>& logical_z_support() const { return logical_z_; }
  const std::vector<int>& logical_x_support() const { return logical_x_; }

 private:
  void add_face(StabilizerType t, FaceRegion r, int ax, int ay, std::vector<int> qubits, Coord meas);

  int d_;
  std::vector<Face> faces_;
  std::vector<int> x_faces_;
  std::vector<int> z_faces_;
  std::vector<int> type_rank_;
  std::vector<int> logical_z_;
  std::vector<int> logical_x_;
};

SurfaceCode build_surface_code(int d);

std::string to_string(StabilizerType t);
std::string to_string(FaceRegion r);

}  // namespace uflab
