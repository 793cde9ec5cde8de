#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gf2.hpp"

namespace toricneg {

enum class Topology { Torus, Planar };

struct LatticeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Square-lattice toric-code graph. Qubits live on edges.
//
// Torus indexing (documented, load-bearing for all reproducible examples):
//   vertex id v(x,y) = y*Lx + x
//   edge id          = 2*(y*Lx + x) + o, o=0 horizontal (x,y)->(x+1,y),
//                                        o=1 vertical   (x,y)->(x,y+1)
//   face id f(x,y)   = y*Lx + x, support {h(x,y), h(x,y+1), v(x,y), v(x+1,y)}
// Basis convention: edge k is bit k of the amplitude index; bit 1 = |1>,
// i.e. sigma^z eigenvalue -1.
struct Lattice {
  Topology topology = Topology::Torus;
  int Lx = 0, Ly = 0;
  int n = 0;  // edge count

  struct Edge {
    int u = 0, v = 0;
    int orientation = 0;  // 0 horizontal, 1 vertical
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> vertex_edges;  // star supports
  std::vector<std::vector<int>> face_edges;    // plaquette supports
  std::vector<std::vector<int>> face_vertices; // corner vertices of each face

  // Cyclic structure around each vertex, slot order right/up/left/down:
  // slot_edges[v][i] is the edge leaving v in direction i (-1 if absent),
  // slot_faces[v][i] is the face in the corner between directions i and i+1
  // (-1 if absent). Used to trace boundary curves through vertices.
  std::vector<std::array<int, 4>> slot_edges;
  std::vector<std::array<int, 4>> slot_faces;

  int num_vertices() const { return static_cast<int>(vertex_edges.size()); }
  int num_faces() const { return static_cast<int>(face_edges.size()); }

  // Torus helpers (throw on planar where meaningless).
  int vid(int x, int y) const { return mod(y, Ly) * Lx + mod(x, Lx); }
  int h(int x, int y) const { return 2 * vid(x, y); }
  int v(int x, int y) const { return 2 * vid(x, y) + 1; }

  static int mod(int a, int m) { return ((a % m) + m) % m; }
};

struct Region {
  std::vector<int> edge_set;
  std::string label;
};

inline Lattice build_torus(int Lx, int Ly) {
  if (Lx < 2 || Ly < 2)
    throw LatticeError("build_torus: dimensions must be >= 2 (degenerate wrap)");
  Lattice lat;
  lat.topology = Topology::Torus;
  lat.Lx = Lx;
  lat.Ly = Ly;
  lat.n = 2 * Lx * Ly;
  lat.edges.resize(lat.n);
  lat.vertex_edges.assign(Lx * Ly, {});
  lat.face_edges.assign(Lx * Ly, {});
  lat.face_vertices.assign(Lx * Ly, {});
  for (int y = 0; y < Ly; ++y) {
    for (int x = 0; x < Lx; ++x) {
      int he = lat.h(x, y), ve = lat.v(x, y);
      lat.edges[he] = {lat.vid(x, y), lat.vid(x + 1, y), 0};
      lat.edges[ve] = {lat.vid(x, y), lat.vid(x, y + 1), 1};
    }
  }
  for (int e = 0; e < lat.n; ++e) {
    lat.vertex_edges[lat.edges[e].u].push_back(e);
    lat.vertex_edges[lat.edges[e].v].push_back(e);
  }
  for (int y = 0; y < Ly; ++y) {
    for (int x = 0; x < Lx; ++x) {
      int f = lat.vid(x, y);
      lat.face_edges[f] = {lat.h(x, y), lat.h(x, y + 1), lat.v(x, y),
                           lat.v(x + 1, y)};
      lat.face_vertices[f] = {lat.vid(x, y), lat.vid(x + 1, y),
                              lat.vid(x, y + 1), lat.vid(x + 1, y + 1)};
    }
  }
  lat.slot_edges.resize(Lx * Ly);
  lat.slot_faces.resize(Lx * Ly);
  for (int y = 0; y < Ly; ++y) {
    for (int x = 0; x < Lx; ++x) {
      int vtx = lat.vid(x, y);
      lat.slot_edges[vtx] = {lat.h(x, y), lat.v(x, y), lat.h(x - 1, y),
                             lat.v(x, y - 1)};
      lat.slot_faces[vtx] = {lat.vid(x, y), lat.vid(x - 1, y),
                             lat.vid(x - 1, y - 1), lat.vid(x, y - 1)};
    }
  }
  return lat;
}

// Open patch: Lx x Ly vertices, no wrap, no outer face. kappa = 0.
inline Lattice build_planar(int Lx, int Ly) {
  if (Lx < 2 || Ly < 2) throw LatticeError("build_planar: dimensions must be >= 2");
  Lattice lat;
  lat.topology = Topology::Planar;
  lat.Lx = Lx;
  lat.Ly = Ly;
  lat.vertex_edges.assign(Lx * Ly, {});
  auto vid = [&](int x, int y) { return y * Lx + x; };
  std::map<std::pair<int, int>, int> eid;  // (min vid, max vid) -> edge
  auto add_edge = [&](int u, int v, int o) {
    int e = static_cast<int>(lat.edges.size());
    lat.edges.push_back({u, v, o});
    lat.vertex_edges[u].push_back(e);
    lat.vertex_edges[v].push_back(e);
    eid[{std::min(u, v), std::max(u, v)}] = e;
  };
  for (int y = 0; y < Ly; ++y)
    for (int x = 0; x + 1 < Lx; ++x) add_edge(vid(x, y), vid(x + 1, y), 0);
  for (int y = 0; y + 1 < Ly; ++y)
    for (int x = 0; x < Lx; ++x) add_edge(vid(x, y), vid(x, y + 1), 1);
  lat.n = static_cast<int>(lat.edges.size());
  for (int y = 0; y + 1 < Ly; ++y) {
    for (int x = 0; x + 1 < Lx; ++x) {
      std::vector<int> fe = {
          eid[{std::min(vid(x, y), vid(x + 1, y)), std::max(vid(x, y), vid(x + 1, y))}],
          eid[{std::min(vid(x, y + 1), vid(x + 1, y + 1)),
               std::max(vid(x, y + 1), vid(x + 1, y + 1))}],
          eid[{std::min(vid(x, y), vid(x, y + 1)), std::max(vid(x, y), vid(x, y + 1))}],
          eid[{std::min(vid(x + 1, y), vid(x + 1, y + 1)),
               std::max(vid(x + 1, y), vid(x + 1, y + 1))}]};
      lat.face_edges.push_back(fe);
      lat.face_vertices.push_back(
          {vid(x, y), vid(x + 1, y), vid(x, y + 1), vid(x + 1, y + 1)});
    }
  }
  lat.slot_edges.assign(Lx * Ly, {-1, -1, -1, -1});
  lat.slot_faces.assign(Lx * Ly, {-1, -1, -1, -1});
  auto face_id = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= Lx - 1 || y >= Ly - 1) return -1;
    return y * (Lx - 1) + x;
  };
  auto edge_id = [&](int u, int v) {
    auto it = eid.find({std::min(u, v), std::max(u, v)});
    return it == eid.end() ? -1 : it->second;
  };
  for (int y = 0; y < Ly; ++y) {
    for (int x = 0; x < Lx; ++x) {
      int vtx = vid(x, y);
      if (x + 1 < Lx) lat.slot_edges[vtx][0] = edge_id(vtx, vid(x + 1, y));
      if (y + 1 < Ly) lat.slot_edges[vtx][1] = edge_id(vtx, vid(x, y + 1));
      if (x > 0) lat.slot_edges[vtx][2] = edge_id(vtx, vid(x - 1, y));
      if (y > 0) lat.slot_edges[vtx][3] = edge_id(vtx, vid(x, y - 1));
      lat.slot_faces[vtx] = {face_id(x, y), face_id(x - 1, y),
                             face_id(x - 1, y - 1), face_id(x, y - 1)};
    }
  }
  return lat;
}

inline std::vector<int> star_support(const Lattice& lat, int v) {
  if (v < 0 || v >= lat.num_vertices()) throw LatticeError("star_support: bad vertex");
  return lat.vertex_edges[v];
}

inline std::vector<int> plaquette_support(const Lattice& lat, int p) {
  if (p < 0 || p >= lat.num_faces()) throw LatticeError("plaquette_support: bad face");
  return lat.face_edges[p];
}

struct BoundaryComponent {
  std::string pair;            // e.g. "A|B"
  int plaquette_count = 0;     // n^(m)
  std::vector<int> face_indices;
};

struct BoundaryReport {
  std::vector<BoundaryComponent> components;
  int total_boundary_plaquettes = 0;
  std::vector<int> star_violations;      // vertices whose star meets >= 3 regions
  std::vector<int> plaquette_violations; // faces whose support meets >= 3 regions

  int total_for_pair(const std::string& pair) const {
    int t = 0;
    for (const auto& c : components)
      if (c.pair == pair) t += c.plaquette_count;
    return t;
  }
  std::vector<int> counts_for_pair(const std::string& pair) const {
    std::vector<int> out;
    for (const auto& c : components)
      if (c.pair == pair) out.push_back(c.plaquette_count);
    return out;
  }
};

struct PartitionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void check_partition(const Lattice& lat, const std::vector<Region>& parts) {
  std::vector<int> owner(lat.n, -1);
  for (size_t r = 0; r < parts.size(); ++r) {
    for (int e : parts[r].edge_set) {
      if (e < 0 || e >= lat.n) throw PartitionError("partition: edge id out of range");
      if (owner[e] != -1) throw PartitionError("partition: regions overlap");
      owner[e] = static_cast<int>(r);
    }
  }
  for (int e = 0; e < lat.n; ++e)
    if (owner[e] == -1) throw PartitionError("partition: edges left uncovered");
}

// For each unordered region pair, boundary plaquettes (faces whose support
// intersects both regions) grouped into the separating curves they lie on.
//
// Curve tracing: the boundary curve of region `a` against region `b` hugs
// the a-edges. Around each vertex, pick every maximal cyclic run of a-owned
// edges whose two flanking edges are b-owned; the curve strand wrapping that
// run links the two corner plaquettes flanking it, so those boundary faces
// belong to the same curve. (Merely sharing a vertex is not enough: a
// one-column region has two distinct boundary curves whose plaquettes touch
// the same vertices.)
inline BoundaryReport boundary_report(const Lattice& lat,
                                      const std::vector<Region>& parts) {
  check_partition(lat, parts);
  std::vector<int> owner(lat.n, -1);
  for (size_t r = 0; r < parts.size(); ++r)
    for (int e : parts[r].edge_set) owner[e] = static_cast<int>(r);

  BoundaryReport rep;
  for (int vtx = 0; vtx < lat.num_vertices(); ++vtx) {
    std::set<int> touched;
    for (int e : lat.vertex_edges[vtx]) touched.insert(owner[e]);
    if (touched.size() >= 3) rep.star_violations.push_back(vtx);
  }
  for (int f = 0; f < lat.num_faces(); ++f) {
    std::set<int> touched;
    for (int e : lat.face_edges[f]) touched.insert(owner[e]);
    if (touched.size() >= 3) rep.plaquette_violations.push_back(f);
  }

  for (size_t a = 0; a < parts.size(); ++a) {
    for (size_t b = a + 1; b < parts.size(); ++b) {
      std::vector<int> bf;
      std::map<int, int> bf_index;
      for (int f = 0; f < lat.num_faces(); ++f) {
        bool hit_a = false, hit_b = false;
        for (int e : lat.face_edges[f]) {
          if (owner[e] == static_cast<int>(a)) hit_a = true;
          if (owner[e] == static_cast<int>(b)) hit_b = true;
        }
        if (hit_a && hit_b) {
          bf_index[f] = static_cast<int>(bf.size());
          bf.push_back(f);
        }
      }
      if (bf.empty()) continue;

      std::vector<int> parent(bf.size());
      for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      auto link = [&](int f1, int f2) {
        auto i1 = bf_index.find(f1), i2 = bf_index.find(f2);
        if (i1 == bf_index.end() || i2 == bf_index.end()) return;
        parent[find(i1->second)] = find(i2->second);
      };
      const int oa = static_cast<int>(a), ob = static_cast<int>(b);
      for (int vtx = 0; vtx < lat.num_vertices(); ++vtx) {
        std::array<int, 4> o;
        for (int s = 0; s < 4; ++s) {
          int e = lat.slot_edges[vtx][s];
          o[s] = (e < 0) ? -2 : owner[e];
        }
        for (int s = 0; s < 4; ++s) {
          if (o[s] != oa || o[(s + 3) % 4] == oa) continue;  // run start
          int end = s;
          while (o[(end + 1) % 4] == oa) end = (end + 1) % 4;
          if (o[(s + 3) % 4] != ob || o[(end + 1) % 4] != ob) continue;
          int f1 = lat.slot_faces[vtx][(s + 3) % 4];
          int f2 = lat.slot_faces[vtx][end];
          if (f1 >= 0 && f2 >= 0) link(f1, f2);
        }
      }

      std::string pair = parts[a].label + "|" + parts[b].label;
      std::map<int, BoundaryComponent> comps;
      for (size_t i = 0; i < bf.size(); ++i) {
        auto& bc = comps[find(static_cast<int>(i))];
        bc.pair = pair;
        bc.face_indices.push_back(bf[i]);
      }
      for (auto& [root, bc] : comps) {
        bc.plaquette_count = static_cast<int>(bc.face_indices.size());
        rep.total_boundary_plaquettes += bc.plaquette_count;
        rep.components.push_back(std::move(bc));
      }
    }
  }
  return rep;
}

struct ContractibilityReport {
  bool contractible = true;
  bool winds_horizontal = false;  // supports a cycle with odd horizontal winding
  bool winds_vertical = false;
};

// Winding parities of an edge-set cycle: horizontal winding = parity of
// crossings of the vertical cut between x=Lx-1 and x=0 (h-edges at x=Lx-1),
// vertical winding = parity of v-edges at y=Ly-1.
inline ContractibilityReport is_contractible(const Lattice& lat,
                                             const std::vector<int>& region) {
  ContractibilityReport rep;
  if (lat.topology == Topology::Planar) return rep;  // all cycles trivial
  // spanning forest over the subgraph induced by region edges
  std::vector<int> parent(lat.num_vertices());
  for (int i = 0; i < lat.num_vertices(); ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> tree;           // tree edge ids
  std::vector<int> nontree;
  for (int e : region) {
    int ru = find(lat.edges[e].u), rv = find(lat.edges[e].v);
    if (ru == rv) {
      nontree.push_back(e);
    } else {
      parent[ru] = rv;
      tree.push_back(e);
    }
  }
  if (nontree.empty()) return rep;  // forest: contractible by decision

  // for each non-tree edge, recover the fundamental cycle by BFS in the tree
  std::vector<std::vector<std::pair<int, int>>> adj(lat.num_vertices());
  for (int e : tree) {
    adj[lat.edges[e].u].push_back({lat.edges[e].v, e});
    adj[lat.edges[e].v].push_back({lat.edges[e].u, e});
  }
  auto winding = [&](const std::vector<int>& cycle) {
    int wh = 0, wv = 0;
    for (int e : cycle) {
      int base = e / 2;
      int x = base % lat.Lx, y = base / lat.Lx;
      if (lat.edges[e].orientation == 0 && x == lat.Lx - 1) wh ^= 1;
      if (lat.edges[e].orientation == 1 && y == lat.Ly - 1) wv ^= 1;
    }
    return std::pair<int, int>{wh, wv};
  };
  for (int e : nontree) {
    int src = lat.edges[e].u, dst = lat.edges[e].v;
    std::vector<int> prev_edge(lat.num_vertices(), -1), prev_vertex(lat.num_vertices(), -1);
    std::vector<bool> seen(lat.num_vertices(), false);
    std::vector<int> queue{src};
    seen[src] = true;
    for (size_t qi = 0; qi < queue.size() && !seen[dst]; ++qi) {
      int cur = queue[qi];
      for (auto [nxt, via] : adj[cur]) {
        if (!seen[nxt]) {
          seen[nxt] = true;
          prev_edge[nxt] = via;
          prev_vertex[nxt] = cur;
          queue.push_back(nxt);
        }
      }
    }
    std::vector<int> cycle{e};
    for (int cur = dst; cur != src; cur = prev_vertex[cur]) cycle.push_back(prev_edge[cur]);
    auto [wh, wv] = winding(cycle);
    if (wh) rep.winds_horizontal = true;
    if (wv) rep.winds_vertical = true;
  }
  rep.contractible = !rep.winds_horizontal && !rep.winds_vertical;
  return rep;
}

struct TwoRegionRuleResult {
  bool ok = true;
  std::vector<int> star_violations;
  std::vector<int> plaquette_violations;
};

inline TwoRegionRuleResult validate_two_region_rule(const Lattice& lat,
                                                    const std::vector<Region>& parts) {
  auto rep = boundary_report(lat, parts);
  TwoRegionRuleResult res;
  res.star_violations = rep.star_violations;
  res.plaquette_violations = rep.plaquette_violations;
  res.ok = res.star_violations.empty() && res.plaquette_violations.empty();
  return res;
}

}  // namespace toricneg
