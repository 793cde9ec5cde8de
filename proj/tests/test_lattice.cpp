#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "toricneg/lattice.hpp"

using namespace toricneg;

namespace {

std::vector<int> complement(const Lattice& lat, const std::vector<int>& A) {
  std::set<int> a(A.begin(), A.end());
  std::vector<int> out;
  for (int e = 0; e < lat.n; ++e)
    if (!a.count(e)) out.push_back(e);
  return out;
}

std::vector<int> sizes_sorted(const BoundaryReport& rep, const std::string& pair) {
  auto v = rep.counts_for_pair(pair);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("torus construction") {
  Lattice lat = build_torus(4, 3);
  CHECK(lat.n == 24);
  CHECK(lat.num_vertices() == 12);
  CHECK(lat.num_faces() == 12);
  for (const auto& st : lat.vertex_edges) CHECK(st.size() == 4);
  for (const auto& f : lat.face_edges) CHECK(f.size() == 4);
  // edge id convention
  CHECK(lat.h(1, 2) == 2 * (2 * 4 + 1));
  CHECK(lat.v(1, 2) == 2 * (2 * 4 + 1) + 1);
  // wrap-around
  CHECK(lat.h(4, 3) == lat.h(0, 0));
  // face (x,y) support
  std::set<int> f(lat.face_edges[lat.vid(1, 1)].begin(),
                  lat.face_edges[lat.vid(1, 1)].end());
  CHECK(f == std::set<int>{lat.h(1, 1), lat.h(1, 2), lat.v(1, 1), lat.v(2, 1)});
  // star support
  std::set<int> s(lat.vertex_edges[lat.vid(1, 1)].begin(),
                  lat.vertex_edges[lat.vid(1, 1)].end());
  CHECK(s == std::set<int>{lat.h(1, 1), lat.h(0, 1), lat.v(1, 1), lat.v(1, 0)});
}

TEST_CASE("planar construction") {
  Lattice lat = build_planar(3, 3);
  CHECK(lat.n == 12);                // 2*Lx*Ly - Lx - Ly
  CHECK(lat.num_faces() == 4);
  CHECK(lat.num_vertices() == 9);
  int boundary_vertices = 0;
  for (const auto& st : lat.vertex_edges)
    if (st.size() < 4) ++boundary_vertices;
  CHECK(boundary_vertices == 8);
  CHECK_THROWS_AS(build_planar(1, 3), LatticeError);
}

TEST_CASE("contractibility and winding") {
  Lattice lat = build_torus(4, 3);
  CHECK(is_contractible(lat, {lat.h(1, 1)}).contractible);
  std::vector<int> plaquette = lat.face_edges[lat.vid(1, 1)];
  CHECK(is_contractible(lat, plaquette).contractible);
  std::vector<int> zloop;  // horizontal direct loop
  for (int x = 0; x < 4; ++x) zloop.push_back(lat.h(x, 0));
  auto rep = is_contractible(lat, zloop);
  CHECK_FALSE(rep.contractible);
  CHECK(rep.winds_horizontal);
  CHECK_FALSE(rep.winds_vertical);
  std::vector<int> vloop;
  for (int y = 0; y < 3; ++y) vloop.push_back(lat.v(1, y));
  rep = is_contractible(lat, vloop);
  CHECK(rep.winds_vertical);
  CHECK_FALSE(rep.winds_horizontal);
}

TEST_CASE("boundary of a single edge: one curve, two plaquettes") {
  Lattice lat = build_torus(3, 3);
  std::vector<int> A = {lat.h(1, 1)};
  auto rep = boundary_report(lat, {{A, "A"}, {complement(lat, A), "B"}});
  CHECK(sizes_sorted(rep, "A|B") == std::vector<int>{2});
}

TEST_CASE("boundary of a domino: one curve of six plaquettes") {
  Lattice lat = build_torus(4, 3);
  std::set<int> A;
  for (int e : lat.face_edges[lat.vid(0, 0)]) A.insert(e);
  for (int e : lat.face_edges[lat.vid(1, 0)]) A.insert(e);
  std::vector<int> Av(A.begin(), A.end());
  CHECK(Av.size() == 7);
  auto rep = boundary_report(lat, {{Av, "A"}, {complement(lat, Av), "B"}});
  CHECK(sizes_sorted(rep, "A|B") == std::vector<int>{6});
}

TEST_CASE("two distant patches: two separate curves") {
  Lattice lat = build_torus(4, 3);
  std::vector<int> A = {lat.h(0, 0), lat.h(2, 1)};
  auto rep = boundary_report(lat, {{A, "A"}, {complement(lat, A), "B"}});
  CHECK(sizes_sorted(rep, "A|B") == std::vector<int>{2, 2});
}

TEST_CASE("one-column region: two curves despite shared vertices") {
  Lattice lat = build_torus(4, 2);
  std::vector<int> A;
  for (int y = 0; y < 2; ++y) {
    A.push_back(lat.h(0, y));
    A.push_back(lat.v(0, y));
  }
  auto rep = boundary_report(lat, {{A, "A"}, {complement(lat, A), "B"}});
  CHECK(sizes_sorted(rep, "A|B") == std::vector<int>{2, 2});
}

TEST_CASE("partition validation") {
  Lattice lat = build_torus(3, 3);
  std::vector<int> A = {0, 1};
  CHECK_THROWS_AS(boundary_report(lat, {{A, "A"}, {A, "B"}}), PartitionError);
  CHECK_THROWS_AS(boundary_report(lat, {{A, "A"}}), PartitionError);
}

TEST_CASE("two-region rule flags three-region stars") {
  Lattice lat = build_torus(3, 3);
  // three regions meeting at vertex (1,1)
  std::vector<int> A = {lat.h(1, 1)};
  std::vector<int> B = {lat.h(0, 1)};
  std::vector<int> rest = complement(lat, {lat.h(1, 1), lat.h(0, 1)});
  auto res = validate_two_region_rule(lat, {{A, "A"}, {B, "B"}, {rest, "C"}});
  CHECK_FALSE(res.ok);
  CHECK_FALSE(res.star_violations.empty());
}
