#include "uflab/lattice.hpp"

namespace uflab {

UnsupportedDistance::UnsupportedDistance(int d)
    : std::invalid_argument("distance " + std::to_string(d) +
                            " is not supported: only odd distances d >= 3 are built") {}

SurfaceCode::SurfaceCode(int distance) : d_(distance) {
  if (distance < 3 || distance % 2 == 0) {
    throw UnsupportedDistance(distance);
  }
  const int d = d_;
  const int half = (d - 1) / 2;

  // Bulk squares S(x, y), (x, y) in [d-1]^2: X when x + y is odd.
  for (int y = 0; y < d - 1; ++y) {
    for (int x = 0; x < d - 1; ++x) {
      const auto t = (x + y) % 2 == 1 ? StabilizerType::X : StabilizerType::Z;
      add_face(t, FaceRegion::Bulk, x, y,
               {data_index(x, y), data_index(x + 1, y), data_index(x, y + 1), data_index(x + 1, y + 1)},
               Coord{2 * x + 1, 2 * y + 1});
    }
  }
  for (int i = 0; i < half; ++i) {
    // D_y(0, 2i) with measurement qubit at (-1/2, 2i + 1/2).
    add_face(StabilizerType::X, FaceRegion::LeftEdge, 0, 2 * i,
             {data_index(0, 2 * i), data_index(0, 2 * i + 1)}, Coord{-1, 4 * i + 1});
  }
  for (int i = 0; i < half; ++i) {
    // D_y(d-1, 2i+1) with measurement qubit at (d - 1/2, 2i + 3/2).
    add_face(StabilizerType::X, FaceRegion::RightEdge, d - 1, 2 * i + 1,
             {data_index(d - 1, 2 * i + 1), data_index(d - 1, 2 * i + 2)}, Coord{2 * d - 1, 4 * i + 3});
  }
  for (int i = 0; i < half; ++i) {
    // D_x(2i+1, 0) with measurement qubit at (2i + 3/2, -1/2).
    add_face(StabilizerType::Z, FaceRegion::BottomEdge, 2 * i + 1, 0,
             {data_index(2 * i + 1, 0), data_index(2 * i + 2, 0)}, Coord{4 * i + 3, -1});
  }
  for (int i = 0; i < half; ++i) {
    // D_x(2i, d-1) with measurement qubit at (2i + 1/2, d - 1/2).
    add_face(StabilizerType::Z, FaceRegion::TopEdge, 2 * i, d - 1,
             {data_index(2 * i, d - 1), data_index(2 * i + 1, d - 1)}, Coord{4 * i + 1, 2 * d - 1});
  }

  for (int y = 0; y < d; ++y) logical_z_.push_back(data_index(0, y));
  for (int x = 0; x < d; ++x) logical_x_.push_back(data_index(x, 0));
}

void SurfaceCode::add_face(StabilizerType t, FaceRegion r, int ax, int ay, std::vector<int> qubits, Coord meas) {
  const int f = static_cast<int>(faces_.size());
  auto& bucket = t == StabilizerType::X ? x_faces_ : z_faces_;
  type_rank_.push_back(static_cast<int>(bucket.size()));
  bucket.push_back(f);
  faces_.push_back(Face{t, r, std::move(qubits), meas, ax, ay});
}

int SurfaceCode::data_index(int x, int y) const {
  if (x < 0 || y < 0 || x >= d_ || y >= d_) return -1;
  return y * d_ + x;
}

std::vector<int> SurfaceCode::faces_containing(int q, StabilizerType t) const {
  std::vector<int> out;
  for (int f : faces_of(t)) {
    for (int member : faces_[f].qubits) {
      if (member == q) {
        out.push_back(f);
        break;
      }
    }
  }
  return out;
}

SurfaceCode build_surface_code(int d) { return SurfaceCode(d); }

std::string to_string(StabilizerType t) { return t == StabilizerType::X ? "X" : "Z"; }

std::string to_string(FaceRegion r) {
  switch (r) {
    case FaceRegion::Bulk:
      return "bulk";
    case FaceRegion::LeftEdge:
      return "x=0";
    case FaceRegion::RightEdge:
      return "x=d-1";
    case FaceRegion::BottomEdge:
      return "y=0";
    case FaceRegion::TopEdge:
      return "y=d-1";
  }
  return "?";
}

}  // namespace uflab
