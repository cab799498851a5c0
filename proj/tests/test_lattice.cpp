#include <gtest/gtest.h>

#include <set>

#include "uflab/lattice.hpp"
#include "uflab/pauli.hpp"

using namespace uflab;

namespace {

// GF(2) rank of a set of symplectic vectors, by elimination.
int gf2_rank(std::vector<std::vector<std::uint8_t>> rows) {
  int rank = 0;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][c]) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r != rank && rows[r][c]) {
        for (int k = 0; k < cols; ++k) rows[r][k] ^= rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

std::vector<std::uint8_t> symplectic(const PauliString& p) {
  std::vector<std::uint8_t> v(2 * p.size(), 0);
  for (int q = 0; q < p.size(); ++q) {
    v[q] = has_x(p.at(q));
    v[p.size() + q] = has_z(p.at(q));
  }
  return v;
}

}  // namespace

class LatticeByDistance : public ::testing::TestWithParam<int> {};

TEST_P(LatticeByDistance, FaceCounts) {
  const int d = GetParam();
  SurfaceCode code(d);
  EXPECT_EQ(code.num_data(), d * d);
  EXPECT_EQ(code.num_faces(), d * d - 1);
  EXPECT_EQ(code.faces_of(StabilizerType::X).size(), static_cast<std::size_t>((d * d - 1) / 2));
  EXPECT_EQ(code.faces_of(StabilizerType::Z).size(), static_cast<std::size_t>((d * d - 1) / 2));
  int digons = 0;
  for (const Face& f : code.faces()) {
    EXPECT_EQ(f.qubits.size(), f.is_digon() ? 2u : 4u);
    digons += f.is_digon();
  }
  EXPECT_EQ(digons, 2 * (d - 1));
}

TEST_P(LatticeByDistance, GeneratorsCommuteAndAreIndependent) {
  const int d = GetParam();
  SurfaceCode code(d);
  std::vector<std::vector<std::uint8_t>> rows;
  for (const Face& a : code.faces()) {
    const PauliString pa = stabilizer_of(code, a);
    rows.push_back(symplectic(pa));
    for (const Face& b : code.faces()) EXPECT_TRUE(pa.commutes_with(stabilizer_of(code, b)));
  }
  EXPECT_EQ(gf2_rank(rows), d * d - 1);
}

TEST_P(LatticeByDistance, LogicalOperators) {
  const int d = GetParam();
  SurfaceCode code(d);
  const PauliString lz = logical_z(code), lx = logical_x(code);
  EXPECT_EQ(lz.weight(), d);
  EXPECT_EQ(lx.weight(), d);
  EXPECT_FALSE(lz.commutes_with(lx));
  std::vector<std::vector<std::uint8_t>> rows;
  for (const Face& f : code.faces()) {
    const PauliString s = stabilizer_of(code, f);
    EXPECT_TRUE(s.commutes_with(lz));
    EXPECT_TRUE(s.commutes_with(lx));
    rows.push_back(symplectic(s));
  }
  // Neither logical lies in the stabilizer group.
  rows.push_back(symplectic(lz));
  EXPECT_EQ(gf2_rank(rows), d * d);
  rows.back() = symplectic(lx);
  EXPECT_EQ(gf2_rank(rows), d * d);
}

TEST_P(LatticeByDistance, EachQubitInAtMostTwoFacesPerType) {
  const int d = GetParam();
  SurfaceCode code(d);
  for (int q = 0; q < code.num_data(); ++q) {
    for (auto t : {StabilizerType::X, StabilizerType::Z}) {
      const auto fs = code.faces_containing(q, t);
      EXPECT_GE(fs.size(), 1u);
      EXPECT_LE(fs.size(), 2u);
    }
  }
}

TEST_P(LatticeByDistance, MeasurementCoordinatesAreDistinct) {
  SurfaceCode code(GetParam());
  std::set<Coord> seen;
  for (const Face& f : code.faces()) {
    EXPECT_TRUE(f.meas.x2 % 2 != 0 && f.meas.y2 % 2 != 0);
    EXPECT_TRUE(seen.insert(f.meas).second);
  }
}

INSTANTIATE_TEST_SUITE_P(OddDistances, LatticeByDistance, ::testing::Values(3, 5, 7, 9, 11));

TEST(Lattice, DigonTypesFollowTheirSides) {
  SurfaceCode code(5);
  for (const Face& f : code.faces()) {
    if (f.region == FaceRegion::LeftEdge || f.region == FaceRegion::RightEdge) {
      EXPECT_EQ(f.type, StabilizerType::X);
    }
    if (f.region == FaceRegion::TopEdge || f.region == FaceRegion::BottomEdge) {
      EXPECT_EQ(f.type, StabilizerType::Z);
    }
  }
}

TEST(Lattice, RejectsUnsupportedDistances) {
  for (int d : {-3, 0, 1, 2, 4, 6}) EXPECT_THROW(SurfaceCode{d}, UnsupportedDistance);
}

TEST(Lattice, DataIndexRoundTrip) {
  SurfaceCode code(7);
  for (int q = 0; q < code.num_data(); ++q) {
    const Coord c = code.data_coord(q);
    EXPECT_EQ(code.data_index(c.x2 / 2, c.y2 / 2), q);
  }
  EXPECT_EQ(code.data_index(-1, 0), -1);
  EXPECT_EQ(code.data_index(0, 7), -1);
}

TEST(Pauli, ParseAndMultiply) {
  EXPECT_EQ(parse_pauli('Y'), Pauli::Y);
  EXPECT_THROW(parse_pauli('Q'), std::invalid_argument);
  PauliString a(2), b(2);
  a.set(0, Pauli::X);
  b.set(0, Pauli::Z);
  EXPECT_FALSE(a.commutes_with(b));
  const PauliString c = a * b;
  EXPECT_EQ(c.at(0), Pauli::Y);
  EXPECT_EQ(c.weight(), 1);
}
