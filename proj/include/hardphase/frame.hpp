//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file frame.hpp
//  \brief orthonormal-frame algebra: metric reconstruction, algebraic closures for the
//         time leg and the time-row of the connection, and the time-adapted (checked)
//         frame built by Gram-Schmidt against dt.
//
//  All kernels are pointwise and templated on the scalar so dual numbers can push
//  time derivatives through them.

#ifndef HARDPHASE_FRAME_HPP_
#define HARDPHASE_FRAME_HPP_

#include "dual.hpp"
#include "linalg.hpp"
#include "types.hpp"

namespace hardphase {

//----------------------------------------------------------------------------------------
//! \fn reconstruct_metric_inverse
//  \brief (g^-1)^{mu nu} = sum_I eps_I e_I^mu e_I^nu

template <class S>
M4<S> reconstruct_metric_inverse(const M4<S>& e) {
  M4<S> gi{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      S s(0.0);
      for (int I = 0; I < 4; ++I) s = s + sgn(I) * e[I][m] * e[I][n];
      gi[m][n] = s;
    }
  }
  return gi;
}

//! pointwise inversion of g^-1 to g; throws DegenerateFrame below the det floor
template <class S>
M4<S> invert_metric(const M4<S>& gi, Real det_floor = 1e-8) {
  S det = det4(gi);
  if (abs_s(det) < S(det_floor)) throw DegenerateFrame("metric inverse determinant below floor");
  return inverse4(gi, det);
}

//! sqrt(|det g|) from the reconstructed inverse metric
template <class S>
S sqrt_det_g(const M4<S>& gi) {
  S det = det4(gi);
  return S(1.0) / sqrt_s(abs_s(det));
}

//----------------------------------------------------------------------------------------
//! \fn close_e0
//  \brief e_0^mu = (delta_0^mu - That^It e_It^mu)/That^0; guarantees That^I e_I = dt

template <class S>
V4<S> close_e0(const V4<S>& that, const std::array<V4<S>, 3>& eS, Real theta0_floor = 1e-6) {
  if (value(that[0]) <= theta0_floor) throw NonpositiveTheta0("hat Theta^0 below floor in close_e0");
  V4<S> e0;
  for (int m = 0; m < 4; ++m) {
    S s = S((m == 0) ? 1.0 : 0.0);
    for (int It = 0; It < 3; ++It) s = s - that[It + 1] * eS[It][m];
    e0[m] = s / that[0];
  }
  return e0;
}

//----------------------------------------------------------------------------------------
//! \fn close_gamma0
//  \brief Gamma_{0J}^K = -(That^It/That^0) Gamma_{It J}^K; fills the I=0 slab in place

template <class S>
void close_gamma0(const V4<S>& that, C4<S>& gm, Real theta0_floor = 1e-6) {
  if (value(that[0]) <= theta0_floor) throw NonpositiveTheta0("hat Theta^0 below floor in close_gamma0");
  for (int J = 0; J < 4; ++J) {
    for (int K = 0; K < 4; ++K) {
      S s(0.0);
      for (int It = 1; It < 4; ++It) s = s + that[It] * gm[conn_idx(It, J, K)];
      gm[conn_idx(0, J, K)] = S(0.0) - s / that[0];
    }
  }
}

//! frame components of dt: solve That^I e_I^mu = delta_0^mu (valid on all of Sigma)
template <class S>
V4<S> theta_hat_of_dt(const M4<S>& e) {
  S a[16];
  S b[4];
  for (int m = 0; m < 4; ++m) {
    for (int I = 0; I < 4; ++I) a[m * 4 + I] = e[I][m];
    b[m] = S((m == 0) ? 1.0 : 0.0);
  }
  // dense 4x4 solve with partial pivoting on scalar values
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (abs_s(a[r * 4 + col]) > abs_s(a[piv * 4 + col])) piv = r;
    if (value(abs_s(a[piv * 4 + col])) < 1e-300) throw DegenerateFrame("singular frame matrix");
    if (piv != col) {
      for (int c = 0; c < 4; ++c) std::swap(a[col * 4 + c], a[piv * 4 + c]);
      std::swap(b[col], b[piv]);
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      S f = a[r * 4 + col] / a[col * 4 + col];
      for (int c = col; c < 4; ++c) a[r * 4 + c] = a[r * 4 + c] - f * a[col * 4 + c];
      b[r] = b[r] - f * b[col];
    }
  }
  V4<S> that;
  for (int i = 0; i < 4; ++i) that[i] = b[i] / a[i * 4 + i];
  return that;
}

//----------------------------------------------------------------------------------------
//! \fn checked_frame
//  \brief time-adapted frame: che_0 = dt, che_3/che_2/che_1 by Gram-Schmidt of the spatial
//         legs against it. Returns the expansion coefficients c with che_I = c[I][J] e_J.
//
//  The coordinate components follow as che_I^mu = sum_J c[I][J] e_J^mu. Expressed in the
//  (orthonormal) e-frame all inner products reduce to eps-weighted component sums except
//  those involving che_0 = dt, which uses the metric through That = components of dt.

template <class S>
M4<S> checked_frame_coeffs(const V4<S>& that, Real gram_floor = 1e-8) {
  // che_0 = dt = That^J e_J
  M4<S> c{};
  for (int J = 0; J < 4; ++J) c[0][J] = that[J];
  // inner product helper in frame components
  auto ip = [](const V4<S>& u, const V4<S>& v) {
    S s(0.0);
    for (int I = 0; I < 4; ++I) s = s + sgn(I) * u[I] * v[I];
    return s;
  };
  V4<S> che0 = c[0];
  S n0 = ip(che0, che0);  // = g(dt,dt), equals -1 in the fluid, negative on all of Sigma
  if (value(n0) >= -1e-10) throw DegenerateFrame("dt not timelike in checked_frame");
  // Gram-Schmidt order 3, 2, 1 against che_0 (and previously built legs)
  int order[3] = {3, 2, 1};
  V4<S> built[3];
  for (int k = 0; k < 3; ++k) {
    int It = order[k];
    V4<S> v{};
    v[It] = S(1.0);
    // remove the dt part: v -> v - g(v,che0)/g(che0,che0) * che0
    S p0 = ip(v, che0) / n0;
    for (int J = 0; J < 4; ++J) v[J] = v[J] - p0 * che0[J];
    for (int m = 0; m < k; ++m) {
      S pm = ip(v, built[m]);  // previous legs are unit spacelike
      for (int J = 0; J < 4; ++J) v[J] = v[J] - pm * built[m][J];
    }
    S nv = ip(v, v);
    if (value(nv) < gram_floor) throw DegenerateFrame("degenerate spatial leg in checked_frame");
    S inv = S(1.0) / sqrt_s(nv);
    for (int J = 0; J < 4; ++J) v[J] = v[J] * inv;
    built[k] = v;
    for (int J = 0; J < 4; ++J) c[It][J] = v[J];
  }
  return c;
}

//! coordinate components of the checked frame from coefficients
template <class S>
M4<S> checked_frame_components(const M4<S>& c, const M4<S>& e) {
  M4<S> che{};
  for (int I = 0; I < 4; ++I)
    for (int m = 0; m < 4; ++m) {
      S s(0.0);
      for (int J = 0; J < 4; ++J) s = s + c[I][J] * e[J][m];
      che[I][m] = s;
    }
  // che_0 = dt exactly by construction
  for (int m = 0; m < 4; ++m) che[0][m] = S((m == 0) ? 1.0 : 0.0);
  return che;
}

//----------------------------------------------------------------------------------------
//! \fn frame_connection_change
//  \brief connection coefficients of a transformed frame f_I = c_I^J e_J:
//         Gf_{IJ}^K = eps_K sum_M eps_M c_K^M ( c_I^L Dc[L][J][M] + c_I^L c_J^N G_{LN}^M )
//  where Dc[L][J][M] = D_L c_J^M (derivatives of the coefficients along the e-frame).

template <class S>
C4<S> frame_connection_change(const M4<S>& c, const C4<S>& gm,
                              const std::array<std::array<V4<S>, 4>, 4>& Dc) {
  C4<S> out{};
  for (int I = 0; I < 4; ++I) {
    for (int J = 0; J < 4; ++J) {
      // nabla_{f_I} f_J in e-frame components
      V4<S> cov{};
      for (int M = 0; M < 4; ++M) {
        S s(0.0);
        for (int L = 0; L < 4; ++L) {
          s = s + c[I][L] * Dc[L][J][M];
          for (int N = 0; N < 4; ++N) s = s + c[I][L] * c[J][N] * gm[conn_idx(L, N, M)];
        }
        cov[M] = s;
      }
      for (int K = 0; K < 4; ++K) {
        S s(0.0);
        for (int M = 0; M < 4; ++M) s = s + sgn(M) * c[K][M] * cov[M];
        out[conn_idx(I, J, K)] = sgn(K) * s;
      }
    }
  }
  return out;
}

//----------------------------------------------------------------------------------------
//! \fn transport_e_rhs
//  \brief dt e_It^mu = -e_J^mu D_It That^J - That^J Gamma_{It J}^K e_K^mu
//  DThat[It][J] = D_It That^J must be supplied (stencil + stored time derivatives).

template <class S>
std::array<V4<S>, 3> transport_e_rhs(const M4<S>& e, const C4<S>& gm, const V4<S>& that,
                                     const std::array<V4<S>, 3>& DThat) {
  std::array<V4<S>, 3> out{};
  for (int It = 1; It < 4; ++It) {
    for (int m = 0; m < 4; ++m) {
      S s(0.0);
      for (int J = 0; J < 4; ++J) {
        s = s - e[J][m] * DThat[It - 1][J];
        for (int K = 0; K < 4; ++K) s = s - that[J] * gm[conn_idx(It, J, K)] * e[K][m];
      }
      out[It - 1][m] = s;
    }
  }
  return out;
}

//! dt e_0^mu = -D_0 That^J e_J^mu - That^J Gamma_{0J}^K e_K^mu (time leg transport)
template <class S>
V4<S> transport_e0_rhs(const M4<S>& e, const C4<S>& gm, const V4<S>& that, const V4<S>& D0That) {
  V4<S> out{};
  for (int m = 0; m < 4; ++m) {
    S s(0.0);
    for (int J = 0; J < 4; ++J) {
      s = s - e[J][m] * D0That[J];
      for (int K = 0; K < 4; ++K) s = s - that[J] * gm[conn_idx(0, J, K)] * e[K][m];
    }
    out[m] = s;
  }
  return out;
}

}  // namespace hardphase

#endif  // HARDPHASE_FRAME_HPP_
