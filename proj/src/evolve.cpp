//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file evolve.cpp
//  \brief algebraic closures, derived caches, and the coupled RK4/Picard stepper

#include "hardphase/evolve.hpp"

#include <cmath>

#include "hardphase/fluid.hpp"
#include "hardphase/maxwell.hpp"

namespace hardphase {

namespace {

M4<Real> get_m4(const Field& f, int n) {
  M4<Real> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = f(n, i * 4 + j);
  return m;
}
void set_m4(Field& f, int n, const M4<Real>& m) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) f(n, i * 4 + j) = m[i][j];
}
V4<Real> get_v4(const Field& f, int n, int base = 0) {
  return {f(n, base), f(n, base + 1), f(n, base + 2), f(n, base + 3)};
}
C4<Real> get_c4(const Field& f, int n) {
  C4<Real> g;
  for (int i = 0; i < 64; ++i) g[i] = f(n, i);
  return g;
}

M4<Dual> dual_m4(const Field& v, const Field& d, int n) {
  M4<Dual> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = Dual(v(n, i * 4 + j), d(n, i * 4 + j));
  return m;
}

}  // namespace

DerivedCache::DerivedCache(const DomainGrid& g) {
  int N = g.nnodes();
  that = Field(N, 4);
  dthat = Field(N, 4);
  gmfull = Field(N, 64);
  dte = Field(N, 16);
  dtgm = Field(N, 64);
  ginv = Field(N, 16);
  gmet = Field(N, 16);
  sqg = Field(N, 1);
  dtsqg = Field(N, 1);
  dtginv = Field(N, 16);
  chec = Field(N, 16);
  dtchec = Field(N, 16);
  che = Field(N, 16);
  dtche = Field(N, 16);
  gmch = Field(N, 64);
  thch = Field(N, 4);
  dtthch = Field(N, 4);
  tet = Field(N, 16);
  dttet = Field(N, 16);
  riem_ch = Field(N, 36);
  riem = Field(N, 36);
  kappa = Field(N, 1);
  dth = Field(N, 16);
  ds2 = Field(N, 4);
  dlamf = Field(N, 4);
  nT = Field(N, 16);
  dthat_dir = Field(N, 16);
  cIJ = Field(N, 16);
  dds2 = Field(N, 16);
}

//----------------------------------------------------------------------------------------
void refresh_derived(const DomainGrid& g, const StepConfig& cfg, EvolutionState& s,
                     DerivedCache& c) {
  const int N = g.nnodes();
  if (c.that.nnodes() != N) c = DerivedCache(g);
  if (!s.e.finite() || !s.gm.finite() || !s.w.finite() || !s.th.finite() || !s.s2.finite())
    throw NonfiniteState("non-finite evolved field");

  // --- hat Theta and the interior time-leg closure
  for (int n = 0; n < N; ++n) {
    if (g.region(n) == Region::kInterior) {
      Real s2v = s.s2(n, 0);
      if (s2v < cfg.thr.division_floor) throw NonfiniteState("sigma^2 below floor");
      Real inv = 1.0 / std::sqrt(s2v);
      for (int I = 0; I < 4; ++I) c.that(n, I) = s.th(n, I) * inv;
      V4<Real> that = get_v4(c.that, n);
      std::array<V4<Real>, 3> eS;
      for (int It = 0; It < 3; ++It) eS[It] = get_v4(s.e, n, 4 * (It + 1));
      V4<Real> e0 = close_e0(that, eS, cfg.thr.theta0);
      for (int m = 0; m < 4; ++m) s.e(n, m) = e0[m];
    } else {
      V4<Real> that = theta_hat_of_dt(get_m4(s.e, n));
      for (int I = 0; I < 4; ++I) c.that(n, I) = that[I];
    }
  }

  // --- connection with closed time row
  for (int n = 0; n < N; ++n) {
    C4<Real> gm{};
    for (int It = 1; It < 4; ++It)
      for (int J = 0; J < 4; ++J)
        for (int K = 0; K < 4; ++K)
          gm[conn_idx(It, J, K)] = s.gm(n, ((It - 1) * 4 + J) * 4 + K);
    V4<Real> that = get_v4(c.that, n);
    close_gamma0(that, gm, cfg.thr.theta0);
    for (int i = 0; i < 64; ++i) c.gmfull(n, i) = gm[i];
  }

  // --- metric
  for (int n = 0; n < N; ++n) {
    M4<Real> e = get_m4(s.e, n);
    M4<Real> gi = reconstruct_metric_inverse(e);
    M4<Real> gmet = invert_metric(gi, cfg.thr.frame_det);
    set_m4(c.ginv, n, gi);
    set_m4(c.gmet, n, gmet);
    c.sqg(n, 0) = sqrt_det_g(gi);
  }

  // --- spatial gradients of state scalars
  const int dim = 3;  // dx handles collapsed axes with zeros
  Field dxth(N, 12), dxs2(N, 3), dxlam(N, 3), dxthat(N, 12);
  for (int i = 0; i < dim; ++i) {
    for (int J = 0; J < 4; ++J) g.dx(s.th, J, i, dxth, i * 4 + J);
    g.dx(s.s2, 0, i, dxs2, i);
    g.dx(s.lam, 0, i, dxlam, i);
  }

  // --- interior fluid gradients and pointwise workspace; interior dthat
  for (int n = 0; n < N; ++n) {
    if (g.region(n) != Region::kInterior) continue;
    M4<Real> e = get_m4(s.e, n);
    Real s2v = s.s2(n, 0);
    Real sig = std::sqrt(s2v);
    for (int I = 0; I < 4; ++I) {
      for (int J = 0; J < 4; ++J) {
        Real d = e[I][0] * s.tht(n, J);
        for (int i = 0; i < 3; ++i) d += e[I][1 + i] * dxth(n, i * 4 + J);
        c.dth(n, I * 4 + J) = d;
      }
      Real d2 = e[I][0] * s.lam(n, 0);
      for (int i = 0; i < 3; ++i) d2 += e[I][1 + i] * dxs2(n, i);
      c.ds2(n, I) = d2;
      Real dl = e[I][0] * s.lamt(n, 0);
      for (int i = 0; i < 3; ++i) dl += e[I][1 + i] * dxlam(n, i);
      c.dlamf(n, I) = dl;
    }
    C4<Real> gm = get_c4(c.gmfull, n);
    for (int I = 0; I < 4; ++I)
      for (int J = 0; J < 4; ++J) {
        Real v = c.dth(n, I * 4 + J);
        for (int M = 0; M < 4; ++M) v += gm[conn_idx(I, M, J)] * s.th(n, M);
        c.nT(n, I * 4 + J) = v;
      }
    // dthat interior: dt(Theta/sigma)
    for (int J = 0; J < 4; ++J)
      c.dthat(n, J) = s.tht(n, J) / sig - s.th(n, J) * s.lam(n, 0) / (2.0 * sig * s2v);
  }

  // --- exterior dthat: per-line decay of the interior interface trace
  {
    for (int n = 0; n < N; ++n)
      if (g.region(n) == Region::kExterior)
        for (int J = 0; J < 4; ++J) c.dthat(n, J) = 0.0;
    const Real rfar = g.config().r_far;
    const Real wdecay = 0.6 * (rfar - 1.0) + 1e-30;
    for (const Block& b : g.blocks()) {
      if (b.region != Region::kExterior) continue;
      for (int j = 0; j < b.n[1]; ++j) {
        for (int k = 0; k < b.n[2]; ++k) {
          // find the interface pair whose exterior member lies on this line
          int line_iface_int = -1;
          int i_at_iface = 0;
          for (auto& pr : g.interface_pairs()) {
            int ne = pr.second;
            int off = ne - b.node0;
            if (off < 0 || off >= b.nnodes()) continue;
            int i0 = off / (b.n[1] * b.n[2]);
            int j0 = (off / b.n[2]) % b.n[1];
            int k0 = off % b.n[2];
            if (j0 == j && k0 == k) {
              line_iface_int = pr.first;
              i_at_iface = i0;
              break;
            }
          }
          if (line_iface_int < 0) continue;
          V4<Real> tr = get_v4(c.dthat, line_iface_int);
          for (int i = 0; i < b.n[0]; ++i) {
            int n = b.node0 + (i * b.n[1] + j) * b.n[2] + k;
            Real dist = std::abs(i - i_at_iface) * b.dq[0];
            Real chi = 1.0 - smoothstep5(dist / wdecay);
            for (int J = 0; J < 4; ++J) c.dthat(n, J) = chi * tr[J];
          }
        }
      }
    }
    for (int i = 0; i < dim; ++i)
      for (int J = 0; J < 4; ++J) g.dx(c.that, J, i, dxthat, i * 4 + J);
  }

  // --- directional That derivatives and the transport values for e
  for (int n = 0; n < N; ++n) {
    M4<Real> e = get_m4(s.e, n);
    C4<Real> gm = get_c4(c.gmfull, n);
    V4<Real> that = get_v4(c.that, n);
    for (int I = 0; I < 4; ++I)
      for (int J = 0; J < 4; ++J) {
        Real d = e[I][0] * c.dthat(n, J);
        for (int i = 0; i < 3; ++i) d += e[I][1 + i] * dxthat(n, i * 4 + J);
        c.dthat_dir(n, I * 4 + J) = d;
      }
    std::array<V4<Real>, 3> DT;
    for (int It = 1; It < 4; ++It)
      for (int J = 0; J < 4; ++J) DT[It - 1][J] = c.dthat_dir(n, It * 4 + J);
    auto dts = transport_e_rhs(e, gm, that, DT);
    V4<Real> D0T = get_v4(c.dthat_dir, n, 0);
    V4<Real> dt0 = transport_e0_rhs(e, gm, that, D0T);
    for (int m = 0; m < 4; ++m) c.dte(n, m) = dt0[m];
    for (int It = 0; It < 3; ++It)
      for (int m = 0; m < 4; ++m) c.dte(n, 4 * (It + 1) + m) = dts[It][m];
    // C_I^J = D_I That^J + That^K Gamma_{IK}^J
    for (int I = 0; I < 4; ++I)
      for (int J = 0; J < 4; ++J) {
        Real v = c.dthat_dir(n, I * 4 + J);
        for (int K = 0; K < 4; ++K) v += that[K] * gm[conn_idx(I, K, J)];
        c.cIJ(n, I * 4 + J) = v;
      }
  }

  // --- second enthalpy derivatives D_I D_J sigma^2 (interior)
  {
    Field dxds2(N, 12);
    for (int i = 0; i < dim; ++i)
      for (int J = 0; J < 4; ++J) g.dx(c.ds2, J, i, dxds2, i * 4 + J);
    for (int n = 0; n < N; ++n) {
      if (g.region(n) != Region::kInterior) continue;
      M4<Real> e = get_m4(s.e, n);
      for (int J = 0; J < 4; ++J) {
        // dt(D_J sigma^2) = D_J Lambda - C_J^K D_K sigma^2
        Real dtd = c.dlamf(n, J);
        for (int K = 0; K < 4; ++K) dtd -= c.cIJ(n, J * 4 + K) * c.ds2(n, K);
        for (int I = 0; I < 4; ++I) {
          Real v = e[I][0] * dtd;
          for (int i = 0; i < 3; ++i) v += e[I][1 + i] * dxds2(n, i * 4 + J);
          c.dds2(n, I * 4 + J) = v;
        }
      }
    }
  }

  // --- checked frame, its connection, tetrad, curvature
  Field dxchec(N, 48);
  c.kappa_min = 1.0;
  for (int n = 0; n < N; ++n) {
    V4<Dual> that;
    for (int I = 0; I < 4; ++I) that[I] = Dual(c.that(n, I), c.dthat(n, I));
    M4<Dual> cc = checked_frame_coeffs(that, cfg.thr.gram_det);
    M4<Dual> e = dual_m4(s.e, c.dte, n);
    for (int I = 0; I < 4; ++I)
      for (int J = 0; J < 4; ++J) {
        c.chec(n, I * 4 + J) = cc[I][J].v;
        c.dtchec(n, I * 4 + J) = cc[I][J].d;
      }
    M4<Dual> che = checked_frame_components(cc, e);
    for (int I = 0; I < 4; ++I)
      for (int m = 0; m < 4; ++m) {
        c.che(n, I * 4 + m) = che[I][m].v;
        c.dtche(n, I * 4 + m) = che[I][m].d;
      }
    Real k2 = 0.0;
    for (int It = 1; It < 4; ++It) k2 += che[It][0].v * che[It][0].v;
    Real kap = 1.0 - std::sqrt(k2);
    c.kappa(n, 0) = kap;
    if (kap < c.kappa_min) c.kappa_min = kap;
  }
  for (int i = 0; i < dim; ++i)
    for (int jc = 0; jc < 16; ++jc) g.dx(c.chec, jc, i, dxchec, i * 16 + jc);

  for (int n = 0; n < N; ++n) {
    // checked connection from the coefficient change
    M4<Real> e = get_m4(s.e, n);
    M4<Real> cc = get_m4(c.chec, n);
    C4<Real> gm = get_c4(c.gmfull, n);
    std::array<std::array<V4<Real>, 4>, 4> Dc{};
    for (int L = 0; L < 4; ++L)
      for (int J = 0; J < 4; ++J)
        for (int M = 0; M < 4; ++M) {
          Real v = e[L][0] * c.dtchec(n, J * 4 + M);
          for (int i = 0; i < 3; ++i) v += e[L][1 + i] * dxchec(n, i * 16 + J * 4 + M);
          Dc[L][J][M] = v;
        }
    C4<Real> gch = frame_connection_change(cc, gm, Dc);
    for (int i = 0; i < 64; ++i) c.gmch(n, i) = gch[i];

    // Theta in the checked frame (fluid region; zero outside)
    if (g.region(n) == Region::kInterior) {
      for (int I = 0; I < 4; ++I) {
        Real v = 0.0, dv = 0.0;
        for (int J = 0; J < 4; ++J) {
          v += sgn(I) * cc[I][J] * sgn(J) * s.th(n, J);
          dv += sgn(I) * (c.dtchec(n, I * 4 + J) * sgn(J) * s.th(n, J) +
                          cc[I][J] * sgn(J) * s.tht(n, J));
        }
        c.thch(n, I) = v;
        c.dtthch(n, I) = dv;
      }
    } else {
      for (int I = 0; I < 4; ++I) {
        c.thch(n, I) = 0.0;
        c.dtthch(n, I) = 0.0;
      }
    }

    // tetrad in checked-frame components (dual-propagated time derivative)
    Vec4 wc, vc, yc;
    reference_covectors(g.pos(n), wc, vc, yc);
    M4<Dual> cheD = dual_m4(c.che, c.dtche, n);
    Tetrad<Dual> tet = tetrad_from_covectors(cheD, wc, vc, yc, cfg.thr.gram_det);
    for (int a = 0; a < 4; ++a)
      for (int I = 0; I < 4; ++I) {
        c.tet(n, a * 4 + I) = tet.leg(a)[I].v;
        c.dttet(n, a * 4 + I) = tet.leg(a)[I].d;
      }

    // curvature: recover in checked frame, then transform to the e-frame
    TetradR tr;
    for (int a = 0; a < 4; ++a)
      for (int I = 0; I < 4; ++I) tr.leg(a)[I] = tet.leg(a)[I].v;
    std::array<std::array<Real, 6>, 3> w;
    for (int p = 0; p < 3; ++p)
      for (int k = 0; k < 6; ++k) w[p][k] = s.w(n, p * 6 + k);
    V4<Real> thch = get_v4(c.thch, n);
    RiemR rch = recover_curvature(w, tr, thch, g.region(n) == Region::kInterior);
    for (int i = 0; i < 36; ++i) c.riem_ch(n, i) = rch.m[i];
    // e_I = cinv_I^J che_J
    M4<Real> cinv = inverse4(cc, det4(cc));
    RiemR re = transform_riemann(rch, cinv);
    for (int i = 0; i < 36; ++i) c.riem(n, i) = re.m[i];

    // metric time derivatives
    M4<Real> dte = get_m4(c.dte, n);
    M4<Real> dgi{};
    for (int m = 0; m < 4; ++m)
      for (int nu = 0; nu < 4; ++nu) {
        Real v = 0.0;
        for (int I = 0; I < 4; ++I)
          v += sgn(I) * (dte[I][m] * e[I][nu] + e[I][m] * dte[I][nu]);
        dgi[m][nu] = v;
      }
    set_m4(c.dtginv, n, dgi);
    M4<Real> gmet = get_m4(c.gmet, n);
    Real tr_g = 0.0;
    for (int m = 0; m < 4; ++m)
      for (int nu = 0; nu < 4; ++nu) tr_g += gmet[m][nu] * dgi[nu][m];
    c.dtsqg(n, 0) = -0.5 * c.sqg(n, 0) * tr_g;

    // Gamma transport values, all I (time row used by commutators/diagnostics)
    V4<Real> that = get_v4(c.that, n);
    for (int I = 0; I < 4; ++I)
      for (int J = 0; J < 4; ++J)
        for (int K = 0; K < 4; ++K) {
          Real v = 0.0;
          for (int L = 0; L < 4; ++L) {
            Real rr = sgn(K) * re.get(K, J, L, I);
            Real gg = 0.0;
            for (int M = 0; M < 4; ++M)
              gg += gm[conn_idx(M, J, K)] * gm[conn_idx(I, L, M)];
            v += that[L] * (rr - gg);
            v -= gm[conn_idx(L, J, K)] * c.dthat_dir(n, I * 4 + L);
          }
          c.dtgm(n, conn_idx(I, J, K)) = v;
        }
  }

  // --- Taylor monitor over the boundary
  c.taylor_min = 1e300;
  for (const auto& b : g.boundary()) {
    Real a2 = 0.0;
    for (int I = 0; I < 4; ++I) a2 += sgn(I) * c.ds2(b.node, I) * c.ds2(b.node, I);
    if (a2 < c.taylor_min) c.taylor_min = a2;
  }
}

//----------------------------------------------------------------------------------------
void wave_to_first_order(const DomainGrid& g, const StepConfig& cfg, const DerivedCache& c,
                         const Field& u, int uc, const Field& ut, int utc, const Field& F,
                         int Fc, Field& out, int oc) {
  const int N = g.nnodes();
  Field dxu(N, 3), dxut(N, 3), dxxu(N, 9);
  for (int i = 0; i < 3; ++i) {
    g.dx(u, uc, i, dxu, i);
    g.dx(ut, utc, i, dxut, i);
    for (int j = i; j < 3; ++j) {
      Field tmp(N, 1);
      g.dxx(u, uc, i, j, tmp, 0);
      for (int n = 0; n < N; ++n) {
        dxxu(n, 3 * i + j) = tmp(n, 0);
        dxxu(n, 3 * j + i) = tmp(n, 0);
      }
    }
  }
  // b^nu = (1/sqg) d_mu (sqg ginv^{mu nu})
  Field A(N, 16);
  for (int n = 0; n < N; ++n)
    for (int k = 0; k < 16; ++k) A(n, k) = c.sqg(n, 0) * c.ginv(n, k);
  Field divA(N, 4);
  for (int nu = 0; nu < 4; ++nu) {
    // time part
    for (int n = 0; n < N; ++n)
      divA(n, nu) = c.dtsqg(n, 0) * c.ginv(n, 0 * 4 + nu) + c.sqg(n, 0) * c.dtginv(n, 0 * 4 + nu);
    Field tmp(N, 1);
    for (int j = 0; j < 3; ++j) {
      g.dx(A, (1 + j) * 4 + nu, j, tmp, 0);
      for (int n = 0; n < N; ++n) divA(n, nu) += tmp(n, 0);
    }
  }
  std::vector<unsigned char> isb(N, 0);
  for (const auto& b : g.boundary()) isb[b.node] = 1;
  for (int n = 0; n < N; ++n) {
    if (g.region(n) != Region::kInterior || isb[n]) continue;
    Real g00 = c.ginv(n, 0);
    if (g00 > -cfg.thr.division_floor)
      throw DegenerateTimeCoefficient("(g^-1)^{00} not negative");
    Real rhs = F(n, Fc);
    for (int j = 0; j < 3; ++j) rhs -= 2.0 * c.ginv(n, 0 * 4 + 1 + j) * dxut(n, j);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) rhs -= c.ginv(n, (1 + i) * 4 + 1 + j) * dxxu(n, 3 * i + j);
    Real b0 = divA(n, 0) / c.sqg(n, 0);
    rhs -= b0 * ut(n, utc);
    for (int j = 0; j < 3; ++j) rhs -= (divA(n, 1 + j) / c.sqg(n, 0)) * dxu(n, j);
    out(n, oc) = rhs / g00;
  }
}

//----------------------------------------------------------------------------------------
void compute_rhs(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& coeff,
                 const DerivedCache& cc, const EvolutionState& lin, Real t_stage,
                 EvolutionState& out) {
  const int N = g.nnodes();
  out.t = 1.0;  // dt/dt

  // geometry transport (frozen at coeff)
  if (cfg.geometry == GeometryMode::kCoupled) {
    for (int n = 0; n < N; ++n) {
      for (int k = 0; k < 16; ++k) out.e(n, k) = cc.dte(n, k);
      for (int It = 1; It < 4; ++It)
        for (int J = 0; J < 4; ++J)
          for (int K = 0; K < 4; ++K)
            out.gm(n, ((It - 1) * 4 + J) * 4 + K) = cc.dtgm(n, conn_idx(It, J, K));
    }
    Field K(N, 18);
    maxwell_sources(g, cfg, coeff, cc, K);
    curvature_rhs(g, cfg, coeff, cc, lin, K, out.w);
  } else {
    out.e.fill(0.0);
    out.gm.fill(0.0);
    out.w.fill(0.0);
  }

  // fluid
  Field Fth(N, 4), Flam(N, 1);
  fluid_wave_sources(g, cfg, coeff, cc, Fth, Flam);
  if (cfg.forcing != nullptr) {
    Field add(N, 4);
    cfg.forcing->theta(t_stage, g, add);
    for (int n = 0; n < N; ++n)
      for (int J = 0; J < 4; ++J) Fth(n, J) += add(n, J);
    Field addl(N, 1);
    cfg.forcing->lambda(t_stage, g, addl);
    for (int n = 0; n < N; ++n) Flam(n, 0) += addl(n, 0);
  }
  out.th.fill(0.0);
  out.tht.fill(0.0);
  out.s2.fill(0.0);
  out.lam.fill(0.0);
  out.lamt.fill(0.0);
  for (int n = 0; n < N; ++n) {
    if (g.region(n) != Region::kInterior) continue;
    for (int J = 0; J < 4; ++J) out.th(n, J) = lin.tht(n, J);
    out.s2(n, 0) = lin.lam(n, 0);
    out.lam(n, 0) = lin.lamt(n, 0);
  }
  for (int J = 0; J < 4; ++J)
    wave_to_first_order(g, cfg, cc, lin.th, J, lin.tht, J, Fth, J, out.tht, J);
  wave_to_first_order(g, cfg, cc, lin.lam, 0, lin.lamt, 0, Flam, 0, out.lamt, 0);

  // boundary evolution for Theta; Dirichlet pinning for sigma^2 family
  theta_boundary_rhs(g, cfg, coeff, cc, lin, out.tht);
  for (const auto& b : g.boundary()) {
    out.s2(b.node, 0) = 0.0;
    out.lam(b.node, 0) = 0.0;
    out.lamt(b.node, 0) = 0.0;
  }

  // far-field band held fixed
  for (int n = 0; n < N; ++n) {
    if (!g.pinned(n)) continue;
    for (int k = 0; k < 16; ++k) out.e(n, k) = 0.0;
    for (int k = 0; k < 48; ++k) out.gm(n, k) = 0.0;
    for (int k = 0; k < 18; ++k) out.w(n, k) = 0.0;
  }
}

//----------------------------------------------------------------------------------------
void state_copy(EvolutionState& dst, const EvolutionState& src) { dst = src; }

void state_axpy(EvolutionState& y, Real a, const EvolutionState& x) {
  auto ax = [a](Field& yf, const Field& xf) {
    for (size_t i = 0; i < yf.size(); ++i) yf.data()[i] += a * xf.data()[i];
  };
  y.t += a * x.t;
  ax(y.e, x.e);
  ax(y.gm, x.gm);
  ax(y.w, x.w);
  ax(y.th, x.th);
  ax(y.tht, x.tht);
  ax(y.s2, x.s2);
  ax(y.lam, x.lam);
  ax(y.lamt, x.lamt);
}

Real state_distance(const DomainGrid& g, const EvolutionState& a, const EvolutionState& b) {
  (void)g;
  Real m = 0.0;
  auto dist = [&m](const Field& x, const Field& y) {
    for (size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x.data()[i] - y.data()[i]));
  };
  dist(a.e, b.e);
  dist(a.gm, b.gm);
  dist(a.w, b.w);
  dist(a.th, b.th);
  dist(a.tht, b.tht);
  dist(a.s2, b.s2);
  dist(a.lam, b.lam);
  dist(a.lamt, b.lamt);
  return m;
}

//----------------------------------------------------------------------------------------
Real cfl_dt(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& s,
            const DerivedCache& c) {
  (void)s;
  Real vmax = 1e-12;
  Real gmax = 1e-12;
  const int N = g.nnodes();
  for (int n = 0; n < N; ++n) {
    Real g00 = std::abs(c.ginv(n, 0));
    for (int j = 0; j < 3; ++j) {
      Real g0j = c.ginv(n, 0 * 4 + 1 + j);
      Real gjj = std::max(c.ginv(n, (1 + j) * 4 + 1 + j), 0.0);
      Real v = (std::abs(g0j) + std::sqrt(g0j * g0j + g00 * gjj)) / std::max(g00, 1e-12);
      vmax = std::max(vmax, v);
    }
    // checked hyperbolic system speeds: |B^j| / lambda_min(B0) <= sum |che_It^j| / kappa
    Real kap = std::max(c.kappa(n, 0), 1e-6);
    for (int j = 0; j < 3; ++j) {
      Real bj = 0.0;
      for (int It = 1; It < 4; ++It) bj += std::abs(c.che(n, It * 4 + 1 + j));
      vmax = std::max(vmax, bj / kap);
    }
  }
  for (const auto& b : g.boundary()) {
    Real a2 = 0.0;
    for (int I = 0; I < 4; ++I) a2 += sgn(I) * c.ds2(b.node, I) * c.ds2(b.node, I);
    if (a2 > 0.0) {
      Real s2v = std::max(s.s2(b.node, 0), cfg.thr.division_floor);
      gmax = std::max(gmax, std::sqrt(a2) / (2.0 * s2v));
    }
  }
  Real dt_adv = cfg.thr.cfl_limit * g.hmin() / vmax;
  Real dt_bdr = 0.5 * std::sqrt(g.hmin() / gmax);
  return std::min(dt_adv, dt_bdr);
}

//----------------------------------------------------------------------------------------
namespace {

//! classic RK4 with per-stage refresh; coefficient source selectable per stage
template <class CoeffAt>
void rk4_sweep(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& y0,
               CoeffAt&& coeff_at, EvolutionState& out) {
  static const Real cb[4] = {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};
  static const Real ca[4] = {0.0, 0.5, 0.5, 1.0};
  EvolutionState y = y0;
  EvolutionState k(g), acc = y0;
  for (int st = 0; st < 4; ++st) {
    if (st > 0) {
      y = y0;
      state_axpy(y, ca[st] * cfg.dt, k);
    }
    auto [cs, ccache] = coeff_at(st, y);
    compute_rhs(g, cfg, *cs, *ccache, y, y0.t + ca[st] * cfg.dt, k);
    state_axpy(acc, cb[st] * cfg.dt, k);
  }
  out = acc;
}

}  // namespace

void picard_sweep(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& y0,
                  const StageSet& prev, EvolutionState& out, StageSet& stages) {
  rk4_sweep(
      g, cfg, y0,
      [&](int st, EvolutionState& ystage) {
        // freeze coefficients at the previous iterate's stage; record the new stage state
        stages.y[st] = ystage;
        StepConfig c2 = cfg;
        refresh_derived(g, c2, stages.y[st], stages.c[st]);
        return std::pair<const EvolutionState*, const DerivedCache*>(&prev.y[st], &prev.c[st]);
      },
      out);
}

StepStats step(const DomainGrid& g, const StepConfig& cfg, EvolutionState& s) {
  StepStats stats;
  DerivedCache c0(g);
  refresh_derived(g, cfg, s, c0);
  stats.kappa_min = c0.kappa_min;
  stats.taylor_min = c0.taylor_min;
  if (c0.kappa_min < cfg.thr.kappa_min)
    throw HyperbolicityLoss("kappa below floor before step");
  if (cfg.geometry == GeometryMode::kCoupled && cfg.fatal_taylor &&
      c0.taylor_min < cfg.thr.c0 * cfg.thr.c0)
    throw TaylorViolation("Taylor monitor below c0^2 before step");
  if (cfg.check_cfl) {
    Real lim = cfl_dt(g, cfg, s, c0);
    if (cfg.dt > lim) throw CFLViolation("dt above the CFL limit");
  }

  // explicit predictor, recording stage snapshots for optional sweeps
  StageSet stages;
  for (int st = 0; st < 4; ++st) {
    stages.y[st] = EvolutionState(g);
    stages.c[st] = DerivedCache(g);
  }
  EvolutionState ynext(g);
  rk4_sweep(
      g, cfg, s,
      [&](int st, EvolutionState& ystage) {
        stages.y[st] = ystage;
        refresh_derived(g, cfg, stages.y[st], stages.c[st]);
        return std::pair<const EvolutionState*, const DerivedCache*>(&stages.y[st],
                                                                     &stages.c[st]);
      },
      ynext);

  if (cfg.picard_iters > 0) {
    EvolutionState prev_out = ynext;
    Real dist_prev = -1.0;
    for (int m = 0; m < cfg.picard_iters; ++m) {
      StageSet next;
      for (int st = 0; st < 4; ++st) {
        next.y[st] = EvolutionState(g);
        next.c[st] = DerivedCache(g);
      }
      EvolutionState out(g);
      picard_sweep(g, cfg, s, stages, out, next);
      Real d = state_distance(g, out, prev_out);
      if (dist_prev > 0.0 && dist_prev > 1e-300) stats.contraction = d / dist_prev;
      if (dist_prev >= 0.0 && d > 10.0 * dist_prev && d > cfg.picard_tol)
        throw NoConvergence("Picard iterate distance not contracting");
      dist_prev = d;
      stats.picard_sweeps = m + 1;
      prev_out = out;
      stages = next;
      ynext = out;
      if (d < cfg.picard_tol) break;
    }
  }

  s = ynext;
  return stats;
}

}  // namespace hardphase
