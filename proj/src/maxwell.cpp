//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file maxwell.cpp
//  \brief first-order symmetric hyperbolic curvature system: constant matrices, sources,
//         time stepping kernel, and the coordinate-space div-curl diagnostics

#include "hardphase/maxwell.hpp"

#include <cmath>

#include "hardphase/linalg.hpp"

namespace hardphase {

namespace {
inline int ci(int i, int j, int k) { return conn_idx(i, j, k); }

//! two-form value F(I,J) from pair storage
inline Real fval(const std::array<Real, 6>& f, int i, int j) {
  if (i == j) return 0.0;
  Real v = f[kPairIdx[i][j]];
  return kPairSgn[i][j] > 0 ? v : -v;
}
}  // namespace

//----------------------------------------------------------------------------------------
const std::array<std::array<std::array<Real, 6>, 6>, 3>& curl_matrices() {
  static const auto mats = [] {
    std::array<std::array<std::array<Real, 6>, 6>, 3> a{};
    auto set = [&](int m, int r, int c, Real v) {
      a[m][r - 1][c - 1] = v;
      a[m][c - 1][r - 1] = v;
    };
    set(0, 2, 6, -1.0);
    set(0, 3, 5, 1.0);
    set(1, 1, 6, 1.0);
    set(1, 3, 4, -1.0);
    set(2, 1, 5, -1.0);
    set(2, 2, 4, 1.0);
    return a;
  }();
  return mats;
}

std::array<std::array<Real, 6>, 6> assemble_b_matrix(Real c0, const Vec3& cIt) {
  const auto& A = curl_matrices();
  std::array<std::array<Real, 6>, 6> b{};
  for (int r = 0; r < 6; ++r) {
    b[r][r] = c0;
    for (int c = 0; c < 6; ++c)
      for (int m = 0; m < 3; ++m) b[r][c] += cIt[m] * A[m][r][c];
  }
  return b;
}

HyperbolicPoint assemble_hyperbolic(const Mat4& frame, bool checked, Real kappa_min) {
  HyperbolicPoint hp;
  Real e00 = checked ? 1.0 : frame[0][0];
  Vec3 ei0 = {frame[1][0], frame[2][0], frame[3][0]};
  hp.b0 = assemble_b_matrix(e00, ei0);
  for (int j = 0; j < 3; ++j) {
    Real e0j = checked ? 0.0 : frame[0][1 + j];
    Vec3 eij = {frame[1][1 + j], frame[2][1 + j], frame[3][1 + j]};
    hp.bj[j] = assemble_b_matrix(e0j, eij);
  }
  hp.kappa = e00 - std::sqrt(ei0[0] * ei0[0] + ei0[1] * ei0[1] + ei0[2] * ei0[2]);
  (void)kappa_min;
  return hp;
}

//----------------------------------------------------------------------------------------
//! sources per pair in the checked frame. Interior adds the matter term.
void maxwell_sources(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& s,
                     const DerivedCache& c, Field& K) {
  (void)cfg;
  const int N = g.nnodes();
  // spatial gradients of tetrad and checked Theta
  Field dxtet(N, 48), dxthch(N, 12);
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < 16; ++a) g.dx(c.tet, a, i, dxtet, i * 16 + a);
    for (int J = 0; J < 4; ++J) g.dx(c.thch, J, i, dxthch, i * 4 + J);
  }
  K.fill(0.0);
  for (int n = 0; n < N; ++n) {
    const bool interior = (g.region(n) == Region::kInterior);
    // gather checked-frame data
    RiemR r;
    for (int i = 0; i < 36; ++i) r.m[i] = c.riem_ch(n, i);
    C4<Real> gm;
    for (int i = 0; i < 64; ++i) gm[i] = c.gmch(n, i);
    // covariant derivatives of the tetrad legs along checked directions:
    // nX[a][J][L] = D_J X_a^L + Gamma_{JM}^L X_a^M  (a = 0..2 tangential legs)
    Real nX[3][4][4];
    for (int a = 0; a < 3; ++a)
      for (int J = 0; J < 4; ++J)
        for (int L = 0; L < 4; ++L) {
          Real d = c.che(n, J * 4 + 0) * c.dttet(n, a * 4 + L);
          for (int i = 0; i < 3; ++i)
            d += c.che(n, J * 4 + 1 + i) * dxtet(n, i * 16 + a * 4 + L);
          for (int M = 0; M < 4; ++M) d += gm[ci(J, M, L)] * c.tet(n, a * 4 + M);
          nX[a][J][L] = d;
        }
    // nabla_J Theta^K in the checked frame (fluid region only)
    Real nTh[4][4] = {};
    Real xv[3] = {0.0, 0.0, 0.0};
    if (interior) {
      for (int J = 0; J < 4; ++J)
        for (int Kc = 0; Kc < 4; ++Kc) {
          Real d = c.che(n, J * 4 + 0) * c.dtthch(n, Kc);
          for (int i = 0; i < 3; ++i) d += c.che(n, J * 4 + 1 + i) * dxthch(n, i * 4 + Kc);
          for (int L = 0; L < 4; ++L) d += gm[ci(J, L, Kc)] * c.thch(n, L);
          nTh[J][Kc] = d;
        }
      for (int a = 0; a < 3; ++a) {
        Real v = 0.0;
        for (int I = 0; I < 4; ++I) v += sgn(I) * c.thch(n, I) * c.tet(n, a * 4 + I);
        xv[a] = v;
      }
    }
    for (int p = 0; p < 3; ++p) {
      const int A = kWPairA[p], B = kWPairB[p];
      std::array<Real, 6> w;
      for (int k = 0; k < 6; ++k) w[k] = s.w(n, p * 6 + k);
      std::array<Real, 6> f = w_to_form(w);
      // electric rows: I_K for K = 1..3
      for (int Kc = 1; Kc < 4; ++Kc) {
        Real v = 0.0;
        if (interior) {
          for (int J = 0; J < 4; ++J) {
            Real pref = xv[B] * c.tet(n, A * 4 + J) - xv[A] * c.tet(n, B * 4 + J);
            v += sgn(Kc) * pref * nTh[J][Kc];
          }
        }
        for (int I = 0; I < 4; ++I) {
          for (int J = 0; J < 4; ++J) {
            v += sgn(I) * (gm[ci(I, I, J)] * fval(f, J, Kc) + gm[ci(I, Kc, J)] * fval(f, I, J));
          }
        }
        for (int J = 0; J < 4; ++J)
          for (int L = 0; L < 4; ++L)
            for (int I = 0; I < 4; ++I) {
              if (J == Kc || L == I) continue;
              v += sgn(J) * r.get(J, Kc, L, I) *
                   (c.tet(n, A * 4 + I) * nX[B][J][L] + c.tet(n, B * 4 + I) * nX[A][J][L]);
            }
        K(n, p * 6 + (Kc - 1)) = v;
      }
      // magnetic rows: -Jcyc(0,2,3), -Jcyc(0,3,1), -Jcyc(0,1,2)
      const int rows[3][3] = {{0, 2, 3}, {0, 3, 1}, {0, 1, 2}};
      for (int h = 0; h < 3; ++h) {
        Real v = 0.0;
        const int* q = rows[h];
        for (int cdx = 0; cdx < 3; ++cdx) {
          int I = q[cdx], J = q[(cdx + 1) % 3], Kc = q[(cdx + 2) % 3];
          for (int M = 0; M < 4; ++M)
            v += gm[ci(I, J, M)] * fval(f, M, Kc) + gm[ci(I, Kc, M)] * fval(f, J, M);
          for (int M = 0; M < 4; ++M)
            for (int L = 0; L < 4; ++L) {
              if (J == Kc || M == L) continue;
              v += r.get(J, Kc, M, L) * (nX[A][I][M] * c.tet(n, B * 4 + L) +
                                         c.tet(n, A * 4 + M) * nX[B][I][L]);
            }
        }
        K(n, p * 6 + 3 + h) = -v;
      }
    }
  }
}

//----------------------------------------------------------------------------------------
void curvature_rhs(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& coeff,
                   const DerivedCache& cc, const EvolutionState& lin, const Field& K,
                   Field& dw, Real* kappa_min_out) {
  (void)coeff;
  const int N = g.nnodes();
  Field dxw(N, 54);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 18; ++a) g.dx(lin.w, a, i, dxw, i * 18 + a);
  Real kmin = 1.0;
  for (int n = 0; n < N; ++n) {
    Mat4 che;
    for (int I = 0; I < 4; ++I)
      for (int m = 0; m < 4; ++m) che[I][m] = cc.che(n, I * 4 + m);
    HyperbolicPoint hp = assemble_hyperbolic(che, true, cfg.thr.kappa_min);
    kmin = std::min(kmin, hp.kappa);
    if (hp.kappa <= cfg.thr.kappa_min)
      throw HyperbolicityLoss("checked time matrix margin below kappa_min");
    for (int p = 0; p < 3; ++p) {
      std::array<Real, 6> rhs;
      for (int r = 0; r < 6; ++r) {
        Real v = K(n, p * 6 + r);
        for (int j = 0; j < 3; ++j)
          for (int c2 = 0; c2 < 6; ++c2) v -= hp.bj[j][r][c2] * dxw(n, j * 18 + p * 6 + c2);
        rhs[r] = v;
      }
      auto x = solve_spd6(hp.b0, rhs);
      for (int r = 0; r < 6; ++r) dw(n, p * 6 + r) = x[r];
    }
  }
  if (kappa_min_out != nullptr) *kappa_min_out = kmin;
}

//----------------------------------------------------------------------------------------
void coordinate_em(const std::array<Real, 6>& f, Vec3& ebar, Vec3& hbar) {
  // coordinate pairs with index 0 = t: Ebar_i = F_{it} = -F_{0i}
  ebar = {-fval(f, 0, 1), -fval(f, 0, 2), -fval(f, 0, 3)};
  hbar = {-fval(f, 2, 3), fval(f, 1, 3), -fval(f, 1, 2)};
}

//----------------------------------------------------------------------------------------
//! residuals of the four div-curl systems in un-regrouped form: the covariant divergence
//! and cyclic identities evaluated with spatial stencils, stored time derivatives of the
//! two-form, and the coordinate Christoffels of the metric jet, minus the sources.
void divcurl_residuals(const DomainGrid& g, const DerivedCache& c, const Field& ebar,
                       const Field& hbar, const Field& dtebar, const Field& dthbar,
                       const Field& jt, const Field& ji, const Field& iijk, Field& out) {
  const int N = g.nnodes();
  // coordinate two-form (pair storage) and its jets from E/H
  Field f6(N, 6), dtf6(N, 6);
  for (int n = 0; n < N; ++n) {
    // F_{0i} = -Ebar_i; F_{12} = -Hbar^3, F_{13} = +Hbar^2, F_{23} = -Hbar^1
    f6(n, 0) = -ebar(n, 0);
    f6(n, 1) = -ebar(n, 1);
    f6(n, 2) = -ebar(n, 2);
    f6(n, 3) = -hbar(n, 2);
    f6(n, 4) = hbar(n, 1);
    f6(n, 5) = -hbar(n, 0);
    dtf6(n, 0) = -dtebar(n, 0);
    dtf6(n, 1) = -dtebar(n, 1);
    dtf6(n, 2) = -dtebar(n, 2);
    dtf6(n, 3) = -dthbar(n, 2);
    dtf6(n, 4) = dthbar(n, 1);
    dtf6(n, 5) = -dthbar(n, 0);
  }
  Field dxf6(N, 18);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 6; ++a) g.dx(f6, a, i, dxf6, i * 6 + a);
  // metric jet: spatial derivatives of g_{mu nu}, time derivative from the cache
  Field dxg(N, 48);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 16; ++a) g.dx(c.gmet, a, i, dxg, i * 16 + a);

  for (int n = 0; n < N; ++n) {
    Mat4 gmet, ginv, dtg{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        gmet[a][b] = c.gmet(n, a * 4 + b);
        ginv[a][b] = c.ginv(n, a * 4 + b);
      }
    // dt g = -g (dt ginv) g
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        Real v = 0.0;
        for (int m = 0; m < 4; ++m)
          for (int l = 0; l < 4; ++l) v += gmet[a][m] * c.dtginv(n, m * 4 + l) * gmet[l][b];
        dtg[a][b] = -v;
      }
    auto dg = [&](int mu, int a, int b) {  // d_mu g_{ab}
      return (mu == 0) ? dtg[a][b] : dxg(n, (mu - 1) * 16 + a * 4 + b);
    };
    Real gam[4][4][4];  // Gamma^k_{mn}
    for (int k = 0; k < 4; ++k)
      for (int m = 0; m < 4; ++m)
        for (int nu = m; nu < 4; ++nu) {
          Real v = 0.0;
          for (int d = 0; d < 4; ++d)
            v += 0.5 * ginv[k][d] * (dg(m, d, nu) + dg(nu, d, m) - dg(d, m, nu));
          gam[k][m][nu] = v;
          gam[k][nu][m] = v;
        }
    auto F = [&](int a, int b) {
      if (a == b) return 0.0;
      Real v = f6(n, kPairIdx[a][b]);
      return kPairSgn[a][b] > 0 ? v : -v;
    };
    auto dF = [&](int mu, int a, int b) {  // d_mu F_{ab}
      if (a == b) return 0.0;
      Real v = (mu == 0) ? dtf6(n, kPairIdx[a][b]) : dxf6(n, (mu - 1) * 6 + kPairIdx[a][b]);
      return kPairSgn[a][b] > 0 ? v : -v;
    };
    auto nabF = [&](int mu, int a, int b) {
      Real v = dF(mu, a, b);
      for (int al = 0; al < 4; ++al)
        v -= gam[al][mu][a] * F(al, b) + gam[al][mu][b] * F(a, al);
      return v;
    };
    // (div F)_nu - J_nu for nu = t and nu = i
    for (int nu = 0; nu < 4; ++nu) {
      Real v = 0.0;
      for (int m = 0; m < 4; ++m)
        for (int l = 0; l < 4; ++l) v += ginv[m][l] * nabF(l, m, nu);
      if (nu == 0)
        out(n, 0) = v - jt(n, 0);
      else
        out(n, 2 + (nu - 1)) = v - ji(n, nu - 1);
    }
    // cyclic identities: (123) for div H, (0ij) for curl E
    out(n, 1) = nabF(1, 2, 3) + nabF(2, 3, 1) + nabF(3, 1, 2) - iijk(n, 0);
    const int rows[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    for (int rI = 0; rI < 3; ++rI) {
      int i = rows[rI][0], j = rows[rI][1];
      out(n, 5 + rI) = nabF(0, i, j) + nabF(i, j, 0) + nabF(j, 0, i) - iijk(n, 1 + rI);
    }
  }
}

}  // namespace hardphase
