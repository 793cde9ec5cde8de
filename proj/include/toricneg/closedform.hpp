#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "entanglement.hpp"
#include "gf2.hpp"
#include "lattice.hpp"

namespace toricneg {

enum class SettingClass {
  PureContractible,
  RefinedContractible,
  PureNonContractible,
  TraceOneSide,
  TraceBothSides,
  NoSharedBoundaryClassical,
  NoSharedBoundaryProduct,
};

inline const char* to_string(SettingClass c) {
  switch (c) {
    case SettingClass::PureContractible: return "pure_contractible";
    case SettingClass::RefinedContractible: return "refined_contractible";
    case SettingClass::PureNonContractible: return "pure_non_contractible";
    case SettingClass::TraceOneSide: return "trace_one_side";
    case SettingClass::TraceBothSides: return "trace_both_sides";
    case SettingClass::NoSharedBoundaryClassical: return "no_shared_boundary_classical";
    case SettingClass::NoSharedBoundaryProduct: return "no_shared_boundary_product";
  }
  return "?";
}

struct UnsupportedSetting : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A lattice plus labeled edge regions. Labels recognized: the untraced pair is
// (A,B), (A1,B1) or (A,B1); every edge not in the pair is traced out.
struct Setting {
  Lattice lat;
  std::map<std::string, std::vector<int>> regions;
};

struct Classification {
  SettingClass cls = SettingClass::PureContractible;
  std::string first, second;            // resolved pair labels
  std::vector<int> component_sizes;     // boundary plaquettes per component, pair boundary
  bool long_range_destroyed = false;    // traced set cuts the horizontal loops
};

namespace detail {

// Does the edge set `avail` support a cycle with odd horizontal winding in
// the direct graph (paths for Z-loop operators)?
inline bool has_horizontal_direct_cycle(const Lattice& lat,
                                        const std::vector<bool>& avail) {
  std::vector<int> edges;
  for (int e = 0; e < lat.n; ++e)
    if (avail[e]) edges.push_back(e);
  return is_contractible(lat, edges).winds_horizontal;
}

// Same question on the dual graph (paths for X-loop operators). Dual vertices
// are faces; edge e joins its two adjacent faces. A dual cycle winds
// horizontally iff it crosses the x = Lx-1 | x = 0 seam an odd number of
// times, i.e. uses an odd number of v-edges at x = 0.
inline bool has_horizontal_dual_cycle(const Lattice& lat,
                                      const std::vector<bool>& avail) {
  if (lat.topology != Topology::Torus) return false;
  struct DEdge {
    int u, v;
    int cross;
  };
  std::vector<DEdge> de;
  for (int y = 0; y < lat.Ly; ++y) {
    for (int x = 0; x < lat.Lx; ++x) {
      int he = lat.h(x, y), ve = lat.v(x, y);
      if (avail[he]) de.push_back({lat.vid(x, y - 1), lat.vid(x, y), 0});
      if (avail[ve]) de.push_back({lat.vid(x - 1, y), lat.vid(x, y), x == 0 ? 1 : 0});
    }
  }
  int nv = lat.num_faces();
  std::vector<int> parent(nv), wt(nv, 0);  // wt = seam-crossing parity to root
  for (int i = 0; i < nv; ++i) parent[i] = i;
  auto find = [&](int x) {
    int r = x;
    while (parent[r] != r) r = parent[r];
    int w = 0;
    for (int cur = x; cur != r;) {
      w ^= wt[cur];
      cur = parent[cur];
    }
    return std::pair<int, int>{r, w};
  };
  for (const auto& d : de) {
    auto [ru, wu] = find(d.u);
    auto [rv, wv] = find(d.v);
    if (ru == rv) {
      if ((wu ^ wv ^ d.cross) & 1) return true;  // odd-winding dual cycle
    } else {
      parent[ru] = rv;
      wt[ru] = wu ^ wv ^ d.cross;
    }
  }
  return false;
}

inline std::vector<std::vector<int>> edge_components(const Lattice& lat,
                                                     const std::vector<int>& edges) {
  std::vector<int> parent(lat.num_vertices());
  for (int i = 0; i < lat.num_vertices(); ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e : edges) parent[find(lat.edges[e].u)] = find(lat.edges[e].v);
  std::map<int, std::vector<int>> by_root;
  for (int e : edges) by_root[find(lat.edges[e].u)].push_back(e);
  std::vector<std::vector<int>> out;
  for (auto& [r, es] : by_root) out.push_back(es);
  return out;
}

}  // namespace detail

// Boundary components between exactly two edge sets (shared-vertex face
// adjacency, as in boundary_report).
inline std::vector<int> pair_boundary_components(const Lattice& lat,
                                                 const std::vector<int>& X,
                                                 const std::vector<int>& Y) {
  std::vector<Region> parts;
  parts.push_back({X, "X"});
  parts.push_back({Y, "Y"});
  std::set<int> used(X.begin(), X.end());
  used.insert(Y.begin(), Y.end());
  std::vector<int> rest;
  for (int e = 0; e < lat.n; ++e)
    if (!used.count(e)) rest.push_back(e);
  if (!rest.empty()) parts.push_back({rest, "rest"});
  return boundary_report(lat, parts).counts_for_pair("X|Y");
}

// Closed-world classifier. Throws UnsupportedSetting for geometries with no
// applicable closed-form prediction (three-region stars/plaquettes, traced
// bulk patches that pin the fundamental loops, mixed-topology separated
// pairs, ...).
inline Classification classify(const Setting& s) {
  const Lattice& lat = s.lat;
  auto pick = [&](const char* a, const char* b) {
    return s.regions.count(a) && s.regions.count(b);
  };
  std::string la, lb;
  if (pick("A", "B")) la = "A", lb = "B";
  else if (pick("A1", "B1")) la = "A1", lb = "B1";
  else if (pick("A", "B1")) la = "A", lb = "B1";
  else throw UnsupportedSetting("classify: need region pair (A,B), (A1,B1) or (A,B1)");
  bool refined = (la == "A1");
  bool half_refined = (la == "A" && lb == "B1");

  const auto& X = s.regions.at(la);
  const auto& Y = s.regions.at(lb);
  std::set<int> used(X.begin(), X.end());
  for (int e : Y)
    if (!used.insert(e).second)
      throw UnsupportedSetting("classify: pair regions overlap");
  std::vector<int> traced;
  for (int e = 0; e < lat.n; ++e)
    if (!used.count(e)) traced.push_back(e);

  Classification out;
  out.first = la;
  out.second = lb;
  out.component_sizes = pair_boundary_components(lat, X, Y);

  // two-region rule on the pair: no star or plaquette may touch three of
  // {X, Y, traced}; specifically none may straddle X, Y and the environment.
  {
    std::vector<int> owner(lat.n, 2);
    for (int e : X) owner[e] = 0;
    for (int e : Y) owner[e] = 1;
    auto check = [&](const std::vector<std::vector<int>>& supports, const char* what) {
      for (const auto& sup : supports) {
        bool hx = false, hy = false, he = false;
        for (int e : sup) {
          if (owner[e] == 0) hx = true;
          else if (owner[e] == 1) hy = true;
          else he = true;
        }
        if (hx && hy && he)
          throw UnsupportedSetting(std::string("classify: ") + what +
                                   " operator straddles the pair and the environment");
      }
    };
    check(lat.vertex_edges, "star");
    check(lat.face_edges, "plaquette");
  }

  if (traced.empty()) {
    bool xc = is_contractible(lat, X).contractible;
    bool yc = is_contractible(lat, Y).contractible;
    if (refined || half_refined)
      throw UnsupportedSetting("classify: refined labels with nothing traced");
    if (out.component_sizes.empty())
      throw UnsupportedSetting("classify: pure bipartition with empty boundary");
    out.cls = (xc || yc) ? SettingClass::PureContractible
                         : SettingClass::PureNonContractible;
    return out;
  }

  // available edges after tracing; do the horizontal loops survive?
  std::vector<bool> avail(lat.n, true);
  for (int e : traced) avail[e] = false;
  bool direct_ok = detail::has_horizontal_direct_cycle(lat, avail);
  bool dual_ok = detail::has_horizontal_dual_cycle(lat, avail);
  out.long_range_destroyed = !(direct_ok && dual_ok);

  // traced components that are contractible, away from the pair boundary and
  // leave the horizontal loops deformable are ignorable bulk
  bool all_ignorable = true;
  {
    std::set<int> boundary_support;
    std::vector<Region> parts{{X, "X"}, {Y, "Y"}, {traced, "rest"}};
    for (const auto& bc : boundary_report(lat, parts).components) {
      if (bc.pair != "X|Y") continue;
      for (int f : bc.face_indices)
        for (int e : lat.face_edges[f]) boundary_support.insert(e);
    }
    for (const auto& comp : detail::edge_components(lat, traced)) {
      if (!is_contractible(lat, comp).contractible) {
        all_ignorable = false;
        break;
      }
      bool adjacent = false;
      for (int e : comp)
        if (boundary_support.count(e)) adjacent = true;
      if (adjacent) {
        all_ignorable = false;
        break;
      }
    }
    if (all_ignorable && out.long_range_destroyed)
      throw UnsupportedSetting(
          "classify: traced bulk patch pins a fundamental loop; no closed form");
  }

  if (all_ignorable) {
    if (refined || half_refined)
      throw UnsupportedSetting("classify: refined labels with ignorable traced bulk");
    if (out.component_sizes.empty())
      throw UnsupportedSetting("classify: pure-like bipartition with empty boundary");
    bool xc = is_contractible(lat, X).contractible;
    bool yc = is_contractible(lat, Y).contractible;
    out.cls = (xc || yc) ? SettingClass::PureContractible
                         : SettingClass::PureNonContractible;
    return out;
  }

  if (!out.component_sizes.empty()) {
    if (refined) {
      // Prop-5 regime: every star/plaquette touching A1 must fit in A1 u B1
      std::vector<bool> in_pair(lat.n, false), in_x(lat.n, false);
      for (int e : X) in_pair[e] = in_x[e] = true;
      for (int e : Y) in_pair[e] = true;
      auto contained = [&](const std::vector<std::vector<int>>& supports) {
        for (const auto& sup : supports) {
          bool touch = false, inside = true;
          for (int e : sup) {
            if (in_x[e]) touch = true;
            if (!in_pair[e]) inside = false;
          }
          if (touch && !inside) return false;
        }
        return true;
      };
      if (!contained(lat.vertex_edges) || !contained(lat.face_edges))
        throw UnsupportedSetting(
            "classify: refined pair does not enclose the operator neighborhood of A1");
      out.cls = SettingClass::RefinedContractible;
      return out;
    }
    out.cls = SettingClass::TraceOneSide;
    return out;
  }

  // no shared boundary
  if (refined || half_refined) {
    out.cls = SettingClass::TraceBothSides;
    return out;
  }
  bool xc = is_contractible(lat, X).contractible;
  bool yc = is_contractible(lat, Y).contractible;
  if (!xc && !yc) {
    out.cls = SettingClass::NoSharedBoundaryClassical;
    return out;
  }
  if (xc && yc) {
    out.cls = SettingClass::NoSharedBoundaryProduct;
    return out;
  }
  throw UnsupportedSetting("classify: separated pair of mixed topology");
}

// Long-range contribution 2 log2 sum_i |c_i| of a four-sector superposition;
// equals S_{1/2} of the distribution {|c_i|^2}.
inline double long_range_term(const std::array<Complex, 4>& c) {
  double nrm = 0, s = 0;
  for (const auto& x : c) nrm += std::norm(x);
  nrm = std::sqrt(nrm);
  for (const auto& x : c) s += std::abs(x) / nrm;
  return 2 * std::log2(s);
}

inline double predict_log_negativity(const Classification& cl,
                                     const std::array<Complex, 4>& c) {
  double boundary = 0;
  for (int ncomp : cl.component_sizes) boundary += ncomp - 1;
  switch (cl.cls) {
    case SettingClass::PureContractible:
    case SettingClass::RefinedContractible:
    case SettingClass::TraceOneSide:
      return boundary;
    case SettingClass::PureNonContractible:
      return boundary + long_range_term(c);
    case SettingClass::TraceBothSides:
    case SettingClass::NoSharedBoundaryClassical:
    case SettingClass::NoSharedBoundaryProduct:
      return 0.0;
  }
  return 0.0;
}

struct SchmidtPrediction {
  bool flat = false;
  std::uint64_t count = 0;  // Schmidt rank when flat
  double value = 0;         // common eigenvalue when flat
};

// Flat-spectrum prediction for the A | complement cut of a pure state. Valid
// for contractible regions (any ground state) and for flux-basis states or
// uniform superpositions across non-contractible cuts.
inline SchmidtPrediction predict_schmidt(const Classification& cl,
                                         const std::array<Complex, 4>& c) {
  double e = predict_log_negativity(cl, c);
  double r = std::round(e);
  SchmidtPrediction p;
  if (std::fabs(e - r) > 1e-9) return p;  // not flat for generic coefficients
  p.flat = true;
  p.count = 1ull << static_cast<std::uint64_t>(r);
  p.value = 1.0 / static_cast<double>(p.count);
  return p;
}

// ---------------------------------------------------------------------------
// Anyon-model closed forms (section-V generalization).

struct AnyonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AnyonModel {
  std::vector<double> quantum_dims;  // d_i per flux sector
  double total_dimension() const {
    double s = 0;
    for (double d : quantum_dims) s += d * d;
    return std::sqrt(s);
  }
  bool abelian() const {
    for (double d : quantum_dims)
      if (std::fabs(d - 1.0) > 1e-12) return false;
    return true;
  }
};

struct AnyonInput {
  AnyonModel model;
  std::vector<double> boundary_lengths;  // |Gamma_m| per boundary component
  std::vector<double> probs;             // p_i = |c_i|^2, normalized
  double a = 1.0;                        // area-law slope for entropies
  double a_prime = 1.0;                  // area-law slope for negativities
};

inline void validate_anyon_input(const AnyonInput& in) {
  if (in.model.quantum_dims.empty()) throw AnyonError("anyon: empty model");
  for (double d : in.model.quantum_dims)
    if (d < 1.0) throw AnyonError("anyon: quantum dimensions must be >= 1");
  if (in.probs.size() != in.model.quantum_dims.size())
    throw AnyonError("anyon: probability vector size mismatch");
  double s = 0;
  for (double p : in.probs) {
    if (p < -1e-15) throw AnyonError("anyon: negative probability");
    s += p;
  }
  if (std::fabs(s - 1.0) > 1e-9) throw AnyonError("anyon: probabilities must sum to 1");
}

// S(rho_A) = sum_m (a |Gamma_m| - gamma_bar) + S({p_i}),
// gamma_i = log2(D / d_i), gamma_bar = sum_i p_i gamma_i.
inline double anyon_entropy(const AnyonInput& in) {
  validate_anyon_input(in);
  double D = in.model.total_dimension();
  double gbar = 0, shannon = 0;
  for (size_t i = 0; i < in.probs.size(); ++i) {
    double gi = std::log2(D / in.model.quantum_dims[i]);
    gbar += in.probs[i] * gi;
    if (in.probs[i] > 0) shannon -= in.probs[i] * std::log2(in.probs[i]);
  }
  double area = 0;
  for (double g : in.boundary_lengths) area += in.a * g - gbar;
  return area + shannon;
}

// Fixed-flux negativity E_N = sum_m (a' |Gamma_m| - gamma_i) for sector i.
inline double anyon_negativity_fixed_flux(const AnyonInput& in, size_t sector) {
  validate_anyon_input(in);
  if (sector >= in.model.quantum_dims.size()) throw AnyonError("anyon: bad sector");
  double gi = std::log2(in.model.total_dimension() / in.model.quantum_dims[sector]);
  double out = 0;
  for (double g : in.boundary_lengths) out += in.a_prime * g - gi;
  return out;
}

// Superposition negativity E_N = sum_m (a' |Gamma_m| - gamma) + S_{1/2}({p_i}).
// Only proven for abelian models (all d_i = 1, so gamma is sector-independent);
// rejected otherwise.
inline double anyon_negativity_superposition(const AnyonInput& in) {
  validate_anyon_input(in);
  if (!in.model.abelian())
    throw AnyonError(
        "anyon: the S_{1/2} superposition formula is only valid for abelian models");
  double gamma = std::log2(in.model.total_dimension());
  double out = 0;
  for (double g : in.boundary_lengths) out += in.a_prime * g - gamma;
  double s = 0;
  for (double p : in.probs) s += std::sqrt(p);
  return out + 2 * std::log2(s);
}

}  // namespace toricneg
