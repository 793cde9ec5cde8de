#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace toricneg {

// Pauli string on <= 64 qubits with symplectic (x, z) bitmask encoding and an
// integer phase exponent: operator = i^phase * prod_k X_k^{x_k} Z_k^{z_k},
// with the convention that within one site X acts to the left of Z.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int phase = 0;  // power of i, mod 4

  static PauliString sigma_x(const std::vector<int>& support) {
    PauliString p;
    for (int q : support) p.x |= (1ull << q);
    return p;
  }
  static PauliString sigma_z(const std::vector<int>& support) {
    PauliString p;
    for (int q : support) p.z |= (1ull << q);
    return p;
  }

  bool commutes(const PauliString& o) const {
    return (std::popcount(x & o.z) + std::popcount(z & o.x)) % 2 == 0;
  }

  // (XZ-ordered) product: this * other picks up (-1)^(|z1 & x2|).
  PauliString operator*(const PauliString& o) const {
    PauliString r;
    r.x = x ^ o.x;
    r.z = z ^ o.z;
    r.phase = (phase + o.phase + 2 * std::popcount(z & o.x)) % 4;
    return r;
  }
};

enum class LoopKind { ZDirect, XDual };
enum class LoopDirection { Vertical, Horizontal };

struct LoopError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-contractible cycle operators on the torus.
//   ZDirect + Vertical  at offset x0: sigma^z on {v(x0, y) for all y}  (W^z_1)
//   XDual   + Vertical  at offset x0: sigma^x on {h(x0, y) for all y}  (W^x_1)
//   ZDirect + Horizontal at offset y0: sigma^z on {h(x, y0) for all x} (W^z_2)
//   XDual   + Horizontal at offset y0: sigma^x on {v(x, y0) for all x} (W^x_2)
inline PauliString loop_operator(const Lattice& lat, LoopKind kind,
                                 LoopDirection dir, int offset) {
  if (lat.topology != Topology::Torus)
    throw LoopError("loop_operator: no non-contractible cycles on planar topology");
  std::vector<int> support;
  if (dir == LoopDirection::Vertical) {
    if (offset < 0 || offset >= lat.Lx) throw LoopError("loop_operator: bad offset");
    for (int y = 0; y < lat.Ly; ++y)
      support.push_back(kind == LoopKind::ZDirect ? lat.v(offset, y)
                                                  : lat.h(offset, y));
  } else {
    if (offset < 0 || offset >= lat.Ly) throw LoopError("loop_operator: bad offset");
    for (int x = 0; x < lat.Lx; ++x)
      support.push_back(kind == LoopKind::ZDirect ? lat.h(x, offset)
                                                  : lat.v(x, offset));
  }
  return kind == LoopKind::ZDirect ? PauliString::sigma_z(support)
                                   : PauliString::sigma_x(support);
}

inline PauliString star_operator(const Lattice& lat, int v) {
  return PauliString::sigma_x(star_support(lat, v));
}

inline PauliString plaquette_operator(const Lattice& lat, int p) {
  return PauliString::sigma_z(plaquette_support(lat, p));
}

}  // namespace toricneg
