//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file tetrad.hpp
//  \brief interface-adapted tetrads: the boundary frame built from the enthalpy gradient
//         (diagnostics, spec-exact) and the smooth global tetrad field used by the
//         curvature evolution, built from a fixed reference covector aligned with the
//         interface conormal near the interface and blended to a constant direction in
//         the deep interior.
//
//  The fluid velocity is parallel to dt and the reference covectors have no dt component,
//  so g(V, n) = 0 holds identically for the global tetrad.

#ifndef HARDPHASE_TETRAD_HPP_
#define HARDPHASE_TETRAD_HPP_

#include "riemann.hpp"
#include "types.hpp"

namespace hardphase {

//! quintic smoothstep on [0,1]
inline Real smoothstep5(Real s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

//! reference covectors (coordinate components, time independent) at position x:
//! w ~ -d(radius) near the interface, blended to dz deep inside; v = in-plane rotation;
//! y = dy. Returns w, v, y as 4-covectors.
inline void reference_covectors(const Vec3& x, Vec4& w, Vec4& v, Vec4& y) {
  Real rho = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  Real beta = smoothstep5((rho - 0.25) / 0.25);
  Vec3 xhat = {0.0, 0.0, 0.0};
  if (rho > 1e-14) xhat = {x[0] / rho, x[1] / rho, x[2] / rho};
  w = {0.0, -beta * xhat[0], -beta * xhat[1], -beta * xhat[2] + (1.0 - beta)};
  v = {0.0, w[3], 0.0, -w[1]};  // y-axis cross product with the spatial part of w
  Real v2 = v[1] * v[1] + v[3] * v[3];
  Real w2 = w[1] * w[1] + w[2] * w[2] + w[3] * w[3];
  if (v2 < 1e-6 * w2) v = {0.0, w[2], -w[1], 0.0};  // 3d fallback off the y-axis
  y = {0.0, 0.0, 1.0, 0.0};
}

//----------------------------------------------------------------------------------------
//! \fn tetrad_from_covectors
//  \brief orthonormal (X_0,X_1,X_2,n) in frame components from reference covectors.
//  ef[I][mu] are the coordinate components of the frame the output is expressed in.

template <class S>
Tetrad<S> tetrad_from_covectors(const M4<S>& ef, const Vec4& wc, const Vec4& vc, const Vec4& yc,
                                Real gram_floor = 1e-8) {
  auto frame_comp = [&](const Vec4& cov) {
    V4<S> out;
    for (int I = 0; I < 4; ++I) {
      S s(0.0);
      for (int m = 0; m < 4; ++m) s = s + S(cov[m]) * ef[I][m];
      out[I] = sgn(I) * s;  // raise: vector components of the covector
    }
    return out;
  };
  auto ip = [](const V4<S>& a, const V4<S>& b) {
    S s(0.0);
    for (int I = 0; I < 4; ++I) s = s + sgn(I) * a[I] * b[I];
    return s;
  };
  Tetrad<S> tet;
  V4<S> n = frame_comp(wc);
  S n2 = ip(n, n);
  if (value(n2) < gram_floor) throw DegenerateProjection("reference normal not spacelike");
  S inv = S(1.0) / sqrt_s(n2);
  for (int I = 0; I < 4; ++I) tet.n[I] = n[I] * inv;

  auto project = [&](V4<S> u) {
    S p = ip(u, tet.n);
    for (int I = 0; I < 4; ++I) u[I] = u[I] - p * tet.n[I];
    return u;
  };
  // X0: projection of e_0 (frame components delta_0), timelike
  V4<S> x0 = project(V4<S>{S(1.0), S(0.0), S(0.0), S(0.0)});
  S m0 = ip(x0, x0);
  if (value(m0) > -gram_floor) throw DegenerateProjection("timelike leg degenerate");
  S i0 = S(1.0) / sqrt_s(S(0.0) - m0);
  for (int I = 0; I < 4; ++I) tet.X[0][I] = x0[I] * i0;
  // X1, X2 from the reference covectors v, y
  const Vec4* cands[2] = {&vc, &yc};
  for (int k = 0; k < 2; ++k) {
    V4<S> u = project(frame_comp(*cands[k]));
    S p0 = ip(u, tet.X[0]);
    for (int I = 0; I < 4; ++I) u[I] = u[I] + p0 * tet.X[0][I];  // X0 unit timelike
    for (int m = 1; m <= k; ++m) {
      S pm = ip(u, tet.X[m]);
      for (int I = 0; I < 4; ++I) u[I] = u[I] - pm * tet.X[m][I];
    }
    S nu = ip(u, u);
    if (value(nu) < gram_floor) throw DegenerateProjection("tangential leg degenerate");
    S iu = S(1.0) / sqrt_s(nu);
    for (int I = 0; I < 4; ++I) tet.X[k + 1][I] = u[I] * iu;
  }
  return tet;
}

//----------------------------------------------------------------------------------------
//! boundary-adapted frame at a fluid-boundary node, built from the enthalpy gradient
struct BoundaryFrame {
  TetradR tet;       // X_A and n = grad(sigma^2)/a, frame components
  Real a = 0.0;      // |grad sigma^2|
  Real gamma = 0.0;  // a / (2 sigma^2)
  int legs[2] = {1, 2};  // selected spatial legs
};

//! ds2[I] = D_I sigma^2 at the node; taylor_floor = c0^2
inline BoundaryFrame build_boundary_frame(const Vec4& ds2, Real sigma2, Real c0sq,
                                          Real gram_floor = 1e-8) {
  BoundaryFrame bf;
  Real a2 = 0.0;
  for (int I = 0; I < 4; ++I) a2 += sgn(I) * ds2[I] * ds2[I];
  if (a2 < c0sq) throw TaylorViolation("Taylor sign condition fails at boundary node");
  bf.a = std::sqrt(a2);
  for (int I = 0; I < 4; ++I) bf.tet.n[I] = sgn(I) * ds2[I] / bf.a;
  bf.gamma = bf.a / (2.0 * sigma2);

  auto ip = [](const Vec4& a, const Vec4& b) {
    Real s = 0.0;
    for (int I = 0; I < 4; ++I) s += sgn(I) * a[I] * b[I];
    return s;
  };
  // select the two spatial legs with the largest projection norms (ties: lowest index)
  Real pn[4] = {0, 0, 0, 0};
  for (int It = 1; It < 4; ++It) pn[It] = 1.0 - bf.tet.n[It] * bf.tet.n[It];
  int l1 = 1, l2 = 2;
  {
    int idx[3] = {1, 2, 3};
    std::sort(idx, idx + 3, [&](int a_, int b_) {
      return pn[a_] > pn[b_] + 1e-15 || (std::abs(pn[a_] - pn[b_]) <= 1e-15 && a_ < b_);
    });
    l1 = std::min(idx[0], idx[1]);
    l2 = std::max(idx[0], idx[1]);
  }
  bf.legs[0] = l1;
  bf.legs[1] = l2;
  int order[3] = {0, l1, l2};
  for (int k = 0; k < 3; ++k) {
    Vec4 u{};
    u[order[k]] = 1.0;
    Real p = ip(u, bf.tet.n);
    for (int I = 0; I < 4; ++I) u[I] -= p * bf.tet.n[I];
    for (int m = 0; m < k; ++m) {
      Real pm = ip(u, bf.tet.X[m]) * ((m == 0) ? -1.0 : 1.0);  // divide by eta_m
      for (int I = 0; I < 4; ++I) u[I] -= pm * bf.tet.X[m][I];
    }
    Real nu = ip(u, u);
    Real want = (k == 0) ? -1.0 : 1.0;
    if (want * nu < gram_floor) throw DegenerateProjection("boundary frame leg degenerate");
    Real inv = 1.0 / std::sqrt(want * nu);
    for (int I = 0; I < 4; ++I) bf.tet.X[k][I] = u[I] * inv;
  }
  return bf;
}

}  // namespace hardphase

#endif  // HARDPHASE_TETRAD_HPP_
