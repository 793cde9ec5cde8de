#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <cblas.h>
#include <lapacke.h>

#include "state.hpp"

namespace toricneg {

struct EntanglementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense Hermitian matrix, row-major.
struct HermitianMatrix {
  std::vector<Complex> data;
  std::uint64_t dim = 0;

  Complex& at(std::uint64_t i, std::uint64_t j) { return data[i * dim + j]; }
  const Complex& at(std::uint64_t i, std::uint64_t j) const { return data[i * dim + j]; }
};

constexpr int kDenseKeptCap = 13;          // 2^13 x 2^13 dense matrices, ~1 GB
constexpr double kSpectrumCutoff = 1e-12;  // relative eigenvalue floor

// rho on `keep` via M M^H where M = gather(psi, keep). Index bit j of rho is
// qubit keep[j].
inline HermitianMatrix reduced_density_matrix(const StateVector& psi, int n,
                                              const std::vector<int>& keep) {
  if (static_cast<int>(keep.size()) > kDenseKeptCap)
    throw EntanglementError("reduced_density_matrix: kept set exceeds dense cap");
  GatheredState g = gather(psi, n, keep);
  HermitianMatrix rho;
  rho.dim = g.rows;
  rho.data.assign(g.rows * g.rows, Complex(0));
  cblas_zherk(CblasRowMajor, CblasUpper, CblasNoTrans, static_cast<int>(g.rows),
              static_cast<int>(g.cols), 1.0, g.mat.data(), static_cast<int>(g.cols),
              0.0, rho.data.data(), static_cast<int>(g.rows));
  for (std::uint64_t i = 0; i < rho.dim; ++i)
    for (std::uint64_t j = 0; j < i; ++j) rho.at(i, j) = std::conj(rho.at(j, i));
  return rho;
}

inline std::vector<double> eigvalsh(const HermitianMatrix& m) {
  HermitianMatrix work = m;
  std::vector<double> ev(m.dim);
  int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'U', static_cast<int>(m.dim),
                            reinterpret_cast<lapack_complex_double*>(work.data.data()),
                            static_cast<int>(m.dim), ev.data());
  if (info != 0) throw EntanglementError("eigvalsh: zheevd failed");
  return ev;
}

// Eigen-decomposition with vectors; columns of `vectors` (row-major dim x dim)
// are eigenvectors, ascending eigenvalues.
inline void eigh(const HermitianMatrix& m, std::vector<double>& ev,
                 std::vector<Complex>& vectors) {
  vectors = m.data;
  ev.assign(m.dim, 0.0);
  int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', static_cast<int>(m.dim),
                            reinterpret_cast<lapack_complex_double*>(vectors.data()),
                            static_cast<int>(m.dim), ev.data());
  if (info != 0) throw EntanglementError("eigh: zheevd failed");
}

// In-place partial transpose over the qubits selected by amask (bit j of the
// matrix index = j-th kept qubit): rho'[i,j] = rho[swapA(i,j)].
inline void partial_transpose(HermitianMatrix& rho, std::uint64_t amask) {
  const std::uint64_t d = rho.dim;
  const std::uint64_t rest = ~amask;
  for (std::uint64_t i = 0; i < d; ++i) {
    for (std::uint64_t j = 0; j < d; ++j) {
      std::uint64_t i2 = (i & rest) | (j & amask);
      std::uint64_t j2 = (j & rest) | (i & amask);
      if (i2 * d + j2 > i * d + j) std::swap(rho.at(i, j), rho.at(i2, j2));
    }
  }
}

inline double trace_norm_log2(const std::vector<double>& ev) {
  double s = 0;
  for (double v : ev) s += std::fabs(v);
  return std::log2(s);
}

inline double negativity_from_eigs(const std::vector<double>& ev) {
  double s = 0;
  for (double v : ev)
    if (v < 0) s -= v;
  return s;
}

inline double renyi_entropy(std::vector<double> ev, double alpha) {
  double mx = 0;
  for (double v : ev) mx = std::max(mx, v);
  double floor = kSpectrumCutoff * std::max(1.0, mx);
  if (std::fabs(alpha - 1.0) < 1e-14) {
    double s = 0;
    for (double v : ev)
      if (v > floor) s -= v * std::log2(v);
    return s;
  }
  double s = 0;
  for (double v : ev)
    if (v > floor) s += std::pow(v, alpha);
  return std::log2(s) / (1.0 - alpha);
}

inline double von_neumann_entropy(const std::vector<double>& ev) {
  return renyi_entropy(ev, 1.0);
}

// Schmidt spectrum (descending squared singular values) of the A|rest cut of a
// pure state, zeros dropped at the relative cutoff.
inline std::vector<double> schmidt_spectrum(const StateVector& psi, int n,
                                            const std::vector<int>& region) {
  std::vector<int> side = region;
  if (2 * static_cast<int>(side.size()) > n) {
    std::vector<bool> in(n, false);
    for (int q : side) in[q] = true;
    side.clear();
    for (int q = 0; q < n; ++q)
      if (!in[q]) side.push_back(q);
  }
  auto ev = eigvalsh(reduced_density_matrix(psi, n, side));
  double mx = 0;
  for (double v : ev) mx = std::max(mx, v);
  double floor = kSpectrumCutoff * std::max(1.0, mx);
  std::vector<double> out;
  for (double v : ev)
    if (v > floor) out.push_back(v);
  std::sort(out.rbegin(), out.rend());
  return out;
}

// Orthonormal basis of supp(rho_region) as a row-major (2^|region| x r)
// matrix. Uses whichever Gram matrix (M M^H or M^H M) fits the dense cap.
struct SupportBasis {
  std::vector<Complex> mat;  // row-major, rows x rank
  std::uint64_t rows = 0;
  std::uint64_t rank = 0;
};

inline SupportBasis support_basis(const StateVector& psi, int n,
                                  const std::vector<int>& region) {
  GatheredState g = gather(psi, n, region);
  SupportBasis sb;
  sb.rows = g.rows;
  if (g.rows <= g.cols && g.rows <= (1ull << kDenseKeptCap)) {
    HermitianMatrix rho;
    rho.dim = g.rows;
    rho.data.assign(g.rows * g.rows, Complex(0));
    cblas_zherk(CblasRowMajor, CblasUpper, CblasNoTrans, static_cast<int>(g.rows),
                static_cast<int>(g.cols), 1.0, g.mat.data(), static_cast<int>(g.cols),
                0.0, rho.data.data(), static_cast<int>(g.rows));
    for (std::uint64_t i = 0; i < rho.dim; ++i)
      for (std::uint64_t j = 0; j < i; ++j) rho.at(i, j) = std::conj(rho.at(j, i));
    std::vector<double> ev;
    std::vector<Complex> U;
    eigh(rho, ev, U);
    double mx = std::max(1.0, *std::max_element(ev.begin(), ev.end()));
    std::vector<int> sel;
    for (std::uint64_t k = 0; k < rho.dim; ++k)
      if (ev[k] > kSpectrumCutoff * mx) sel.push_back(static_cast<int>(k));
    sb.rank = sel.size();
    sb.mat.resize(sb.rows * sb.rank);
    for (std::uint64_t i = 0; i < sb.rows; ++i)
      for (std::uint64_t c = 0; c < sb.rank; ++c)
        sb.mat[i * sb.rank + c] = U[i * rho.dim + sel[c]];
    return sb;
  }
  if (g.cols > (1ull << kDenseKeptCap))
    throw EntanglementError("support_basis: both sides exceed the dense cap");
  // Gram trick: G = M^H M, eigh, basis = M W / sqrt(ev).
  HermitianMatrix gram;
  gram.dim = g.cols;
  gram.data.assign(g.cols * g.cols, Complex(0));
  cblas_zherk(CblasRowMajor, CblasUpper, CblasConjTrans, static_cast<int>(g.cols),
              static_cast<int>(g.rows), 1.0, g.mat.data(), static_cast<int>(g.cols),
              0.0, gram.data.data(), static_cast<int>(g.cols));
  for (std::uint64_t i = 0; i < gram.dim; ++i)
    for (std::uint64_t j = 0; j < i; ++j) gram.at(i, j) = std::conj(gram.at(j, i));
  std::vector<double> ev;
  std::vector<Complex> W;
  eigh(gram, ev, W);
  double mx = std::max(1.0, *std::max_element(ev.begin(), ev.end()));
  std::vector<int> sel;
  for (std::uint64_t k = 0; k < gram.dim; ++k)
    if (ev[k] > kSpectrumCutoff * mx) sel.push_back(static_cast<int>(k));
  sb.rank = sel.size();
  // columns of W to keep, scaled
  std::vector<Complex> Wsel(g.cols * sb.rank);
  for (std::uint64_t i = 0; i < g.cols; ++i)
    for (std::uint64_t c = 0; c < sb.rank; ++c)
      Wsel[i * sb.rank + c] = W[i * gram.dim + sel[c]] / std::sqrt(ev[sel[c]]);
  sb.mat.assign(sb.rows * sb.rank, Complex(0));
  Complex one(1, 0), zero(0, 0);
  cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(sb.rows),
              static_cast<int>(sb.rank), static_cast<int>(g.cols), &one, g.mat.data(),
              static_cast<int>(g.cols), Wsel.data(), static_cast<int>(sb.rank), &zero,
              sb.mat.data(), static_cast<int>(sb.rank));
  return sb;
}

// Eigenvalues of rho_{AB}^{T_A} (all other qubits traced) computed inside
// supp(rho_A) (x) supp(rho_B). The restriction is exact: the range of the
// partial transpose lies in conj(supp rho_A) (x) supp(rho_B), and the support
// projection preserves the nonzero spectrum.
inline std::vector<double> partial_transpose_eigs_projected(
    const StateVector& psi, int n, const std::vector<int>& A,
    const std::vector<int>& B) {
  SupportBasis PA = support_basis(psi, n, A);
  SupportBasis PB = support_basis(psi, n, B);
  std::vector<int> keep = B;  // B low bits, A high bits
  keep.insert(keep.end(), A.begin(), A.end());
  GatheredState V = gather(psi, n, keep);
  const std::uint64_t dA = 1ull << A.size(), dB = 1ull << B.size();
  const std::uint64_t t = V.cols;
  const std::uint64_t rA = PA.rank, rB = PB.rank;

  // G_t[x,z] = sum_{a,b} conj(PA[a,x]) V[a,b,t] conj(PB[b,z])
  std::vector<Complex> G(t * rA * rB);
  std::vector<Complex> Vt(dA * dB), tmp(rA * dB), PBconj(PB.mat.size());
  for (std::uint64_t i = 0; i < PB.mat.size(); ++i) PBconj[i] = std::conj(PB.mat[i]);
  Complex one(1, 0), zero(0, 0);
  for (std::uint64_t ti = 0; ti < t; ++ti) {
    for (std::uint64_t a = 0; a < dA; ++a)
      for (std::uint64_t b = 0; b < dB; ++b)
        Vt[a * dB + b] = V.mat[(a * dB + b) * t + ti];
    // tmp = PA^H Vt  (rA x dB)
    cblas_zgemm(CblasRowMajor, CblasConjTrans, CblasNoTrans, static_cast<int>(rA),
                static_cast<int>(dB), static_cast<int>(dA), &one, PA.mat.data(),
                static_cast<int>(rA), Vt.data(), static_cast<int>(dB), &zero,
                tmp.data(), static_cast<int>(dB));
    // G_t = tmp * conj(PB)  (rA x rB)
    cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(rA),
                static_cast<int>(rB), static_cast<int>(dB), &one, tmp.data(),
                static_cast<int>(dB), PBconj.data(), static_cast<int>(rB), &zero,
                G.data() + ti * rA * rB, static_cast<int>(rB));
  }

  // T[(a,b),(c,d)] = sum_t G_t[c,b] conj(G_t[a,d]) is an index permutation of
  // W = G^H G with G viewed as a (t x rA*rB) matrix: T[(a,b),(c,d)] =
  // W[(a,d),(c,b)].
  HermitianMatrix W;
  W.dim = rA * rB;
  W.data.assign(W.dim * W.dim, Complex(0));
  cblas_zherk(CblasRowMajor, CblasUpper, CblasConjTrans, static_cast<int>(W.dim),
              static_cast<int>(t), 1.0, G.data(), static_cast<int>(W.dim), 0.0,
              W.data.data(), static_cast<int>(W.dim));
  for (std::uint64_t i = 0; i < W.dim; ++i)
    for (std::uint64_t j = 0; j < i; ++j) W.at(i, j) = std::conj(W.at(j, i));
  HermitianMatrix T;
  T.dim = rA * rB;
  T.data.assign(T.dim * T.dim, Complex(0));
  for (std::uint64_t a = 0; a < rA; ++a)
    for (std::uint64_t b = 0; b < rB; ++b)
      for (std::uint64_t c = 0; c < rA; ++c)
        for (std::uint64_t d = 0; d < rB; ++d)
          T.at(a * rB + b, c * rB + d) = W.at(a * rB + d, c * rB + b);
  return eigvalsh(T);
}

// Crossover below the dense cap: for stabilizer-like states the support ranks
// are far below 2^|A|, 2^|B|, so the projected path wins early.
constexpr int kDenseKeptPreferred = 10;

// Eigenvalues of rho_{AB}^{T_A}; dense for small kept sets, otherwise the
// support-projected path.
inline std::vector<double> partial_transpose_eigs(const StateVector& psi, int n,
                                                  const std::vector<int>& A,
                                                  const std::vector<int>& B) {
  if (A.size() + B.size() <= static_cast<size_t>(kDenseKeptPreferred)) {
    std::vector<int> keep = A;
    keep.insert(keep.end(), B.begin(), B.end());
    std::sort(keep.begin(), keep.end());
    HermitianMatrix rho = reduced_density_matrix(psi, n, keep);
    std::uint64_t amask = 0;
    for (size_t j = 0; j < keep.size(); ++j)
      if (std::find(A.begin(), A.end(), keep[j]) != A.end()) amask |= 1ull << j;
    partial_transpose(rho, amask);
    return eigvalsh(rho);
  }
  return partial_transpose_eigs_projected(psi, n, A, B);
}

struct NegativityResult {
  double log_negativity = 0;    // log2 tr|rho^{T_A}|
  double negativity = 0;        // sum of |negative eigenvalues|
  double min_eigenvalue = 0;
  std::vector<double> pt_eigs;  // ascending
};

inline NegativityResult log_negativity(const StateVector& psi, int n,
                                       const std::vector<int>& A,
                                       const std::vector<int>& B) {
  NegativityResult r;
  r.pt_eigs = partial_transpose_eigs(psi, n, A, B);
  r.log_negativity = trace_norm_log2(r.pt_eigs);
  r.negativity = negativity_from_eigs(r.pt_eigs);
  r.min_eigenvalue = *std::min_element(r.pt_eigs.begin(), r.pt_eigs.end());
  return r;
}

// Pure-state shortcut E_N = S_{1/2}(rho_A); valid when A u B covers every
// qubit of psi.
inline double log_negativity_pure(const StateVector& psi, int n,
                                  const std::vector<int>& A) {
  return renyi_entropy(eigvalsh(reduced_density_matrix(
                           psi, n,
                           [&] {
                             std::vector<int> side = A;
                             if (2 * side.size() > static_cast<size_t>(n)) {
                               std::vector<bool> in(n, false);
                               for (int q : side) in[q] = true;
                               side.clear();
                               for (int q = 0; q < n; ++q)
                                 if (!in[q]) side.push_back(q);
                             }
                             return side;
                           }())),
                       0.5);
}

// Appendix-style extensions evaluated on the partial-transpose spectrum.
inline double extended_negativity_plus(const std::vector<double>& pt_eigs,
                                       double alpha) {
  double s = 0;
  for (double v : pt_eigs) s += std::pow(std::fabs(v), 2 * alpha);
  return std::log2(s) / (2 * (1 - alpha));
}

inline double extended_negativity_minus(const std::vector<double>& pt_eigs,
                                        double alpha) {
  if (std::fabs(1 - 2 * alpha) < 1e-12) {
    // alpha -> 1/2 limit (tr rho^{T_A} = 1): -sum_k lambda_k log2|lambda_k|
    double s = 0;
    for (double v : pt_eigs)
      if (std::fabs(v) > 1e-300) s -= v * std::log2(std::fabs(v));
    return s;
  }
  double s = 0;
  for (double v : pt_eigs) {
    double a = std::fabs(v);
    if (a > 0) s += (v < 0 ? -1.0 : 1.0) * std::pow(a, 2 * alpha);
  }
  return std::log2(s) / (1 - 2 * alpha);
}

inline double mutual_information(const StateVector& psi, int n,
                                 const std::vector<int>& A,
                                 const std::vector<int>& B) {
  std::vector<int> AB = A;
  AB.insert(AB.end(), B.begin(), B.end());
  double sA = von_neumann_entropy(eigvalsh(reduced_density_matrix(psi, n, A)));
  double sB = von_neumann_entropy(eigvalsh(reduced_density_matrix(psi, n, B)));
  double sAB = von_neumann_entropy(eigvalsh(reduced_density_matrix(psi, n, AB)));
  return sA + sB - sAB;
}

// kron in this codebase's bit order: kept-index bit layout [A low, B high]
// corresponds to kron(rhoB, rhoA) in row-major matrix terms.
inline HermitianMatrix kron(const HermitianMatrix& high, const HermitianMatrix& low) {
  HermitianMatrix out;
  out.dim = high.dim * low.dim;
  out.data.assign(out.dim * out.dim, Complex(0));
  for (std::uint64_t i = 0; i < high.dim; ++i)
    for (std::uint64_t j = 0; j < high.dim; ++j)
      for (std::uint64_t k = 0; k < low.dim; ++k)
        for (std::uint64_t l = 0; l < low.dim; ++l)
          out.at(i * low.dim + k, j * low.dim + l) = high.at(i, j) * low.at(k, l);
  return out;
}

}  // namespace toricneg
