#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toricneg/pauli.hpp"

using namespace toricneg;

TEST_CASE("single-site algebra") {
  PauliString X = PauliString::sigma_x({0});
  PauliString Z = PauliString::sigma_z({0});
  CHECK_FALSE(X.commutes(Z));
  PauliString XZ = X * Z;
  PauliString ZX = Z * X;
  CHECK(XZ.x == ZX.x);
  CHECK(XZ.z == ZX.z);
  CHECK((XZ.phase - ZX.phase + 4) % 4 == 2);  // XZ = -ZX
}

TEST_CASE("stabilizers commute") {
  Lattice lat = build_torus(4, 3);
  for (int v = 0; v < lat.num_vertices(); ++v)
    for (int p = 0; p < lat.num_faces(); ++p)
      CHECK(star_operator(lat, v).commutes(plaquette_operator(lat, p)));
}

TEST_CASE("loop operators commute with all stabilizers") {
  Lattice lat = build_torus(4, 3);
  for (LoopKind k : {LoopKind::ZDirect, LoopKind::XDual}) {
    for (LoopDirection d : {LoopDirection::Vertical, LoopDirection::Horizontal}) {
      PauliString w = loop_operator(lat, k, d, 1);
      for (int v = 0; v < lat.num_vertices(); ++v)
        CHECK(w.commutes(star_operator(lat, v)));
      for (int p = 0; p < lat.num_faces(); ++p)
        CHECK(w.commutes(plaquette_operator(lat, p)));
    }
  }
}

TEST_CASE("conjugate loop pairs anticommute") {
  Lattice lat = build_torus(4, 3);
  PauliString wz1 = loop_operator(lat, LoopKind::ZDirect, LoopDirection::Vertical, 0);
  PauliString wx2 = loop_operator(lat, LoopKind::XDual, LoopDirection::Horizontal, 0);
  PauliString wz2 = loop_operator(lat, LoopKind::ZDirect, LoopDirection::Horizontal, 0);
  PauliString wx1 = loop_operator(lat, LoopKind::XDual, LoopDirection::Vertical, 0);
  CHECK_FALSE(wz1.commutes(wx2));
  CHECK_FALSE(wz2.commutes(wx1));
  CHECK(wz1.commutes(wx1));
  CHECK(wz2.commutes(wx2));
  CHECK(wz1.commutes(wz2));
}

TEST_CASE("loop supports") {
  Lattice lat = build_torus(4, 3);
  PauliString wz1 = loop_operator(lat, LoopKind::ZDirect, LoopDirection::Vertical, 2);
  std::uint64_t expect = 0;
  for (int y = 0; y < 3; ++y) expect |= 1ull << lat.v(2, y);
  CHECK(wz1.z == expect);
  CHECK(wz1.x == 0);
  PauliString wx1 = loop_operator(lat, LoopKind::XDual, LoopDirection::Vertical, 2);
  expect = 0;
  for (int y = 0; y < 3; ++y) expect |= 1ull << lat.h(2, y);
  CHECK(wx1.x == expect);
}

TEST_CASE("no loops on planar topology") {
  Lattice lat = build_planar(3, 3);
  CHECK_THROWS_AS(
      loop_operator(lat, LoopKind::ZDirect, LoopDirection::Vertical, 0), LoopError);
}
