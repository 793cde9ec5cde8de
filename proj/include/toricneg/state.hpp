#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "lattice.hpp"
#include "pauli.hpp"

namespace toricneg {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double norm2(const StateVector& psi) {
  double s = 0;
  for (const auto& a : psi) s += std::norm(a);
  return s;
}

inline void normalize(StateVector& psi) {
  double n = std::sqrt(norm2(psi));
  if (n == 0) throw StateError("normalize: zero vector");
  for (auto& a : psi) a /= n;
}

inline Complex inner(const StateVector& a, const StateVector& b) {
  Complex s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline StateVector apply_pauli(const StateVector& psi, const PauliString& p, int n) {
  static const Complex iphase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  StateVector out(psi.size());
  const std::uint64_t dim = 1ull << n;
  for (std::uint64_t i = 0; i < dim; ++i) {
    // column i maps to row i ^ x with sign from Z acting on the input bits
    Complex amp = psi[i];
    if (amp == Complex(0)) continue;
    int sgn = std::popcount(i & p.z) & 1;
    out[i ^ p.x] = (sgn ? -amp : amp) * iphase[p.phase & 3];
  }
  return out;
}

namespace detail {

// All diagonal-in-Z parity constraints selecting the zero-flux sector with
// trivial W^z_1 (vertical direct Z-loop) eigenvalue +1.
inline std::vector<std::uint64_t> flux_sector_masks(const Lattice& lat) {
  std::vector<std::uint64_t> masks;
  for (int f = 0; f < lat.num_faces(); ++f) {
    std::uint64_t m = 0;
    for (int e : lat.face_edges[f]) m |= 1ull << e;
    masks.push_back(m);
  }
  if (lat.topology == Topology::Torus) {
    auto w = loop_operator(lat, LoopKind::ZDirect, LoopDirection::Vertical, 0);
    masks.push_back(w.z);
  }
  return masks;
}

}  // namespace detail

// Minimal-weight ground state psi_I: the uniform superposition over closed
// direct Z-loop configurations filtered to B_p = +1 for every plaquette and
// W^z_1 = +1. Its W^x loop eigenvalues are +1 automatically.
inline StateVector flux_sector_state(const Lattice& lat) {
  if (lat.n > 30) throw StateError("flux_sector_state: too many qubits");
  auto masks = detail::flux_sector_masks(lat);
  const std::uint64_t dim = 1ull << lat.n;
  StateVector psi(dim, Complex(0));
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    bool ok = true;
    for (auto m : masks)
      if (std::popcount(i & m) & 1) {
        ok = false;
        break;
      }
    if (ok) {
      psi[i] = 1;
      ++count;
    }
  }
  if (count == 0) throw StateError("flux_sector_state: empty sector");
  double amp = 1.0 / std::sqrt(static_cast<double>(count));
  for (auto& a : psi)
    if (a != Complex(0)) a = amp;
  return psi;
}

// Flux-sector basis state psi_{s} for s in {I, e, m, em}:
//   psi_e  = W^x_2 psi_I   (horizontal dual X-loop at y=0)
//   psi_m  = W^z_2 psi_I   (horizontal direct Z-loop at y=0)
//   psi_em = W^x_2 W^z_2 psi_I
enum class FluxSector { I = 0, E = 1, M = 2, EM = 3 };

inline StateVector flux_state(const Lattice& lat, FluxSector s) {
  StateVector psi = flux_sector_state(lat);
  if (lat.topology != Topology::Torus) {
    if (s != FluxSector::I)
      throw StateError("flux_state: planar topology has a single sector");
    return psi;
  }
  auto wx2 = loop_operator(lat, LoopKind::XDual, LoopDirection::Horizontal, 0);
  auto wz2 = loop_operator(lat, LoopKind::ZDirect, LoopDirection::Horizontal, 0);
  if (s == FluxSector::M || s == FluxSector::EM) psi = apply_pauli(psi, wz2, lat.n);
  if (s == FluxSector::E || s == FluxSector::EM) psi = apply_pauli(psi, wx2, lat.n);
  return psi;
}

// Normalized superposition sum_s c_s psi_s over the four torus flux sectors,
// ordered {I, e, m, em}. The four sectors are exactly orthogonal.
inline StateVector generic_state(const Lattice& lat, std::array<Complex, 4> c) {
  double cn = 0;
  for (auto& x : c) cn += std::norm(x);
  if (cn == 0) throw StateError("generic_state: zero coefficient vector");
  cn = std::sqrt(cn);

  StateVector base = flux_sector_state(lat);
  auto wx2 = loop_operator(lat, LoopKind::XDual, LoopDirection::Horizontal, 0);
  auto wz2 = loop_operator(lat, LoopKind::ZDirect, LoopDirection::Horizontal, 0);
  const std::uint64_t dim = 1ull << lat.n;
  StateVector psi(dim, Complex(0));
  for (std::uint64_t i = 0; i < dim; ++i) {
    Complex b = base[i];
    if (b == Complex(0)) continue;
    int msgn = std::popcount(i & wz2.z) & 1;
    Complex bm = msgn ? -b : b;
    std::uint64_t ie = i ^ wx2.x;
    psi[i] += (c[0] / cn) * b;          // I
    psi[ie] += (c[1] / cn) * b;         // e  = W^x_2 psi_I
    psi[i] += (c[2] / cn) * bm;         // m  = W^z_2 psi_I
    psi[ie] += (c[3] / cn) * bm;        // em
  }
  return psi;
}

// Standard ground state psi0 = (psi_I + psi_m)/sqrt(2); equals the
// star-projector construction applied to |0...0>.
inline StateVector ground_state(const Lattice& lat) {
  if (lat.topology == Topology::Planar) return flux_sector_state(lat);
  return generic_state(lat, {Complex(1), Complex(0), Complex(1), Complex(0)});
}

// Independent construction for cross-checks: product of (1 + A_s)/2 star
// projectors applied to |0...0>, normalized.
inline StateVector ground_state_projected(const Lattice& lat) {
  if (lat.n > 30) throw StateError("ground_state_projected: too many qubits");
  const std::uint64_t dim = 1ull << lat.n;
  StateVector psi(dim, Complex(0));
  psi[0] = 1;
  for (int v = 0; v < lat.num_vertices(); ++v) {
    StateVector flipped = apply_pauli(psi, star_operator(lat, v), lat.n);
    for (std::uint64_t i = 0; i < dim; ++i) psi[i] = 0.5 * (psi[i] + flipped[i]);
  }
  normalize(psi);
  return psi;
}

inline std::array<Complex, 4> random_coefficients(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::array<Complex, 4> c;
  for (auto& x : c) x = Complex(g(rng), g(rng));
  double n = 0;
  for (auto& x : c) n += std::norm(x);
  n = std::sqrt(n);
  for (auto& x : c) x /= n;
  return c;
}

namespace detail {

// expand[r] scatters the bits of r into the qubit positions listed in `qubits`
// (bit j of r lands on qubit qubits[j]).
inline std::vector<std::uint64_t> expand_table(const std::vector<int>& qubits) {
  std::vector<std::uint64_t> tab(1ull << qubits.size());
  tab[0] = 0;
  for (std::uint64_t r = 1; r < tab.size(); ++r) {
    std::uint64_t low = r & (~r + 1);
    int j = std::countr_zero(low);
    tab[r] = tab[r & (r - 1)] | (1ull << qubits[j]);
  }
  return tab;
}

}  // namespace detail

// Reshape psi into a (2^|keep|) x (2^|tr|) row-major matrix with row bit j
// given by qubit keep[j] and column bit j by the j-th traced qubit.
struct GatheredState {
  std::vector<Complex> mat;  // row-major
  std::uint64_t rows = 0, cols = 0;
};

inline GatheredState gather(const StateVector& psi, int n,
                            const std::vector<int>& keep) {
  std::vector<bool> in_keep(n, false);
  for (int q : keep) {
    if (q < 0 || q >= n || in_keep[q]) throw StateError("gather: bad keep list");
    in_keep[q] = true;
  }
  std::vector<int> tr;
  for (int q = 0; q < n; ++q)
    if (!in_keep[q]) tr.push_back(q);
  auto ek = detail::expand_table(keep);
  auto et = detail::expand_table(tr);
  GatheredState g;
  g.rows = ek.size();
  g.cols = et.size();
  g.mat.resize(g.rows * g.cols);
  for (std::uint64_t r = 0; r < g.rows; ++r) {
    Complex* row = g.mat.data() + r * g.cols;
    std::uint64_t base = ek[r];
    for (std::uint64_t c = 0; c < g.cols; ++c) row[c] = psi[base | et[c]];
  }
  return g;
}

}  // namespace toricneg
