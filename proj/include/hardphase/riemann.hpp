//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file riemann.hpp
//  \brief curvature storage (antisymmetric-pair layout), Ricci contractions, the matter
//         Ricci substitution, and the algebraic decompose/recover maps between the full
//         tensor and the six two-forms carried by the hyperbolic system.
//
//  Conventions (fixed project-wide):
//    R(W,Z,X,Y) = g(W, R(X,Y)Z),  R_{IJKL} antisymmetric in (IJ) and (KL) by storage;
//    Ric_{IJ} = sum_K eps_K R_{IKJK};  indices raised/lowered with eps_I only.

#ifndef HARDPHASE_RIEMANN_HPP_
#define HARDPHASE_RIEMANN_HPP_

#include "dual.hpp"
#include "types.hpp"

namespace hardphase {

//! 4D curvature-type tensor with both pairs antisymmetric, stored on 6x6 pair indices.
//! Pair symmetry R_{IJKL} = R_{KLIJ} is NOT enforced; it is a monitored quantity.
template <class S>
struct Riem {
  std::array<S, 36> m{};  // m[p*6+q], p = first pair, q = second pair

  S& pq(int p, int q) { return m[p * 6 + q]; }
  const S& pq(int p, int q) const { return m[p * 6 + q]; }

  S get(int i, int j, int k, int l) const {
    if (i == j || k == l) return S(0.0);
    int p = kPairIdx[i][j], q = kPairIdx[k][l];
    S v = m[p * 6 + q];
    Real s = Real(kPairSgn[i][j] * kPairSgn[k][l]);
    return (s > 0) ? v : S(0.0) - v;
  }
  void set(int i, int j, int k, int l, const S& v) {
    int p = kPairIdx[i][j], q = kPairIdx[k][l];
    Real s = Real(kPairSgn[i][j] * kPairSgn[k][l]);
    m[p * 6 + q] = (s > 0) ? v : S(0.0) - v;
  }
  void add(int i, int j, int k, int l, const S& v) {
    int p = kPairIdx[i][j], q = kPairIdx[k][l];
    Real s = Real(kPairSgn[i][j] * kPairSgn[k][l]);
    m[p * 6 + q] = (s > 0) ? m[p * 6 + q] + v : m[p * 6 + q] - v;
  }
};

using RiemR = Riem<Real>;

//! Ricci contraction Ric_{IJ} = sum_K eps_K R_{IKJK}
template <class S>
M4<S> ricci_of(const Riem<S>& r) {
  M4<S> ric{};
  for (int I = 0; I < 4; ++I)
    for (int J = 0; J < 4; ++J) {
      S s(0.0);
      for (int K = 0; K < 4; ++K)
        if (K != I && K != J) s = s + sgn(K) * r.get(I, K, J, K);
      ric[I][J] = s;
    }
  return ric;
}

//! matter Ricci: R_{IJ} = Theta_I Theta_J + (1/2) eps_I delta_IJ in the fluid, 0 outside
template <class S>
M4<S> einstein_ricci(const V4<S>& theta, bool interior) {
  M4<S> ric{};
  if (!interior) return ric;
  for (int I = 0; I < 4; ++I) {
    for (int J = 0; J < 4; ++J) {
      S tI = sgn(I) * theta[I];  // Theta_I
      S tJ = sgn(J) * theta[J];
      ric[I][J] = tI * tJ;
    }
    ric[I][I] = ric[I][I] + S(0.5 * sgn(I));
  }
  return ric;
}

//----------------------------------------------------------------------------------------
//! per-node tetrad adapted to the interface: three tangential legs X_A (X_0 timelike)
//! and the unit spacelike normal direction n, all in frame components.
template <class S>
struct Tetrad {
  std::array<V4<S>, 3> X{};
  V4<S> n{};
  V4<S>& leg(int a) { return a < 3 ? X[a] : n; }
  const V4<S>& leg(int a) const { return a < 3 ? X[a] : n; }
  static constexpr Real eta(int a) { return (a == 0) ? -1.0 : 1.0; }  // signature of (X0,X1,X2,n)
};

using TetradR = Tetrad<Real>;

// W storage: per pair (A,B) in {(0,1),(0,2),(1,2)}, W = (E_1,E_2,E_3,H^1,H^2,H^3)
inline constexpr int kWPairA[3] = {0, 0, 1};
inline constexpr int kWPairB[3] = {1, 2, 2};

//! two-form components F_{IJ} (pair storage, 6 reals) from W = (E,H)
template <class S>
std::array<S, 6> w_to_form(const std::array<S, 6>& w) {
  std::array<S, 6> f{};
  // pairs: 0:(01) 1:(02) 2:(03) 3:(12) 4:(13) 5:(23)
  f[0] = S(0.0) - w[0];  // F_{01} = -E_1
  f[1] = S(0.0) - w[1];
  f[2] = S(0.0) - w[2];
  f[3] = S(0.0) - w[5];  // F_{12} = -H^3
  f[4] = w[4];           // F_{13} = +H^2
  f[5] = S(0.0) - w[3];  // F_{23} = -H^1
  return f;
}

template <class S>
std::array<S, 6> form_to_w(const std::array<S, 6>& f) {
  std::array<S, 6> w{};
  w[0] = S(0.0) - f[0];
  w[1] = S(0.0) - f[1];
  w[2] = S(0.0) - f[2];
  w[3] = S(0.0) - f[5];
  w[4] = f[4];
  w[5] = S(0.0) - f[3];
  return w;
}

//----------------------------------------------------------------------------------------
//! \fn decompose_curvature
//  \brief W^{AB} = (E,H) of F^{AB}_{IJ} = R_{IJKL} X_A^K X_B^L for the three pairs

template <class S>
std::array<std::array<S, 6>, 3> decompose_curvature(const Riem<S>& r, const Tetrad<S>& tet) {
  std::array<std::array<S, 6>, 3> w{};
  for (int p = 0; p < 3; ++p) {
    const V4<S>& XA = tet.X[kWPairA[p]];
    const V4<S>& XB = tet.X[kWPairB[p]];
    std::array<S, 6> f{};
    for (int ij = 0; ij < 6; ++ij) {
      S s(0.0);
      for (int kl = 0; kl < 6; ++kl) {
        int K = kPairI[kl], L = kPairJ[kl];
        s = s + r.pq(ij, kl) * (XA[K] * XB[L] - XA[L] * XB[K]);
      }
      f[ij] = s;
    }
    w[p] = form_to_w(f);
  }
  return w;
}

//----------------------------------------------------------------------------------------
//! \fn recover_curvature
//  \brief full R_{IJKL} from the three two-forms: tangential-tangential blocks directly,
//         mixed blocks by the imposed pair symmetry, normal-normal block from the Ricci
//         substitution (matter form inside the fluid, vacuum outside).
//  theta enters only through the Ricci substitution; pass interior=false outside.

template <class S>
Riem<S> recover_curvature(const std::array<std::array<S, 6>, 3>& w, const Tetrad<S>& tet,
                          const V4<S>& theta, bool interior) {
  // two-forms evaluated on tetrad legs: FT[p][a][b] = F^{pair p}(Y_a, Y_b)
  std::array<std::array<S, 6>, 3> f;
  for (int p = 0; p < 3; ++p) f[p] = w_to_form(w[p]);
  auto Fab = [&](int p, int a, int b) {
    const V4<S>& Ya = tet.leg(a);
    const V4<S>& Yb = tet.leg(b);
    S s(0.0);
    for (int ij = 0; ij < 6; ++ij) {
      int I = kPairI[ij], J = kPairJ[ij];
      s = s + f[p][ij] * (Ya[I] * Yb[J] - Ya[J] * Yb[I]);
    }
    return s;
  };
  // M in the tetrad-pair basis: tetrad order (X0,X1,X2,n); pair index same table
  std::array<S, 36> M{};
  auto Mpq = [&](int p, int q) -> S& { return M[p * 6 + q]; };
  // columns with tangential last pair: (AB) in {(01)->0,(02)->1,(12)->3}
  const int tt_pair[3] = {kPairIdx[0][1], kPairIdx[0][2], kPairIdx[1][2]};
  for (int p = 0; p < 3; ++p) {
    int col = tt_pair[p];
    for (int row = 0; row < 6; ++row) {
      int a = kPairI[row], b = kPairJ[row];
      Mpq(row, col) = Fab(p, a, b);
    }
  }
  // columns (A,n): rows with tangential pair by pair symmetry,
  // R(Y_B,Y_C, X_A, n) = -R(n, X_A, Y_B, Y_C) = -F^{BC}(n, X_A)
  for (int A = 0; A < 3; ++A) {
    int col = kPairIdx[A][3];
    for (int p = 0; p < 3; ++p) {
      int row = tt_pair[p];
      Mpq(row, col) = S(0.0) - Fab(p, 3, A);
    }
  }
  // Ricci substitution for the (Bn),(An) block:
  // R(X_B,n,X_A,n) = -sum_C eps_C F^{CA}(X_C, X_B) + Ric(X_B, X_A), symmetrized over (A,B)
  V4<S> v{};  // v_A = g(V, X_A) with V = Theta^I e_I
  for (int A = 0; A < 3; ++A) {
    S s(0.0);
    for (int I = 0; I < 4; ++I) s = s + sgn(I) * theta[I] * tet.X[A][I];
    v[A] = s;
  }
  for (int A = 0; A < 3; ++A) {
    for (int B = A; B < 3; ++B) {
      S s(0.0);
      for (int C = 0; C < 3; ++C) {
        if (C == A) continue;  // F^{AA} = 0
        int p = (C < A) ? kPairIdx[C][A] : kPairIdx[A][C];
        Real sign = (C < A) ? 1.0 : -1.0;  // F^{CA} = -F^{AC}
        s = s - Tetrad<S>::eta(C) * sign * Fab(p, C, B);
      }
      if (interior) {
        s = s + v[A] * v[B];
        if (A == B) s = s + S(0.5);  // (1/2) eta_A delta_AB with eta_A = +1 for A=1,2; -1 for A=0
        if (A == 0 && B == 0) s = s - S(1.0);
      }
      int rowB = kPairIdx[B][3];
      int colA = kPairIdx[A][3];
      Mpq(rowB, colA) = s;
      Mpq(kPairIdx[A][3], kPairIdx[B][3]) = s;
    }
  }
  // transform to the frame: e_I = c_I^alpha Y_alpha, c_I^alpha = eta_alpha eps_I Y_alpha^I
  M4<S> c{};
  for (int I = 0; I < 4; ++I)
    for (int a = 0; a < 4; ++a) c[I][a] = Tetrad<S>::eta(a) * sgn(I) * tet.leg(a)[I];
  std::array<S, 36> lam{};  // lam[pairIJ][pair_ab] = c_I^a c_J^b - c_I^b c_J^a
  for (int p = 0; p < 6; ++p) {
    int I = kPairI[p], J = kPairJ[p];
    for (int q = 0; q < 6; ++q) {
      int a = kPairI[q], b = kPairJ[q];
      lam[p * 6 + q] = c[I][a] * c[J][b] - c[I][b] * c[J][a];
    }
  }
  Riem<S> out;
  for (int p = 0; p < 6; ++p) {
    for (int q = 0; q < 6; ++q) {
      S s(0.0);
      for (int a = 0; a < 6; ++a)
        for (int bq = 0; bq < 6; ++bq) s = s + lam[p * 6 + a] * M[a * 6 + bq] * lam[q * 6 + bq];
      out.pq(p, q) = s;
    }
  }
  return out;
}

//! change frame of a curvature tensor: out_{IJKL} = R_{PQRS} c_I^P c_J^Q c_K^R c_L^S
template <class S>
Riem<S> transform_riemann(const Riem<S>& r, const M4<S>& c) {
  std::array<S, 36> lam{};
  for (int p = 0; p < 6; ++p) {
    int I = kPairI[p], J = kPairJ[p];
    for (int q = 0; q < 6; ++q) {
      int P = kPairI[q], Q = kPairJ[q];
      lam[p * 6 + q] = c[I][P] * c[J][Q] - c[I][Q] * c[J][P];
    }
  }
  Riem<S> out;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      S s(0.0);
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) s = s + lam[p * 6 + a] * r.pq(a, b) * lam[q * 6 + b];
      out.pq(p, q) = s;
    }
  return out;
}

}  // namespace hardphase

#endif  // HARDPHASE_RIEMANN_HPP_
