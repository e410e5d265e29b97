//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file fluid.cpp
//  \brief fluid right-hand sides and commutator diagnostics

#include "hardphase/fluid.hpp"

#include <cmath>

namespace hardphase {

namespace {
inline int ci(int i, int j, int k) { return conn_idx(i, j, k); }
}

//----------------------------------------------------------------------------------------
void frame_derivative(const DomainGrid& g, const Field& e, const Field& f, int fc,
                      const Field& ft, int ftc, Field& out, int obase) {
  const int N = g.nnodes();
  Field dxf(N, 3);
  for (int i = 0; i < 3; ++i) g.dx(f, fc, i, dxf, i);
  for (int n = 0; n < N; ++n) {
    for (int I = 0; I < 4; ++I) {
      Real v = e(n, I * 4 + 0) * ft(n, ftc);
      for (int i = 0; i < 3; ++i) v += e(n, I * 4 + 1 + i) * dxf(n, i);
      out(n, obase + I) = v;
    }
  }
}

//----------------------------------------------------------------------------------------
//! interior wave sources [coupled:  Box Theta^I = (1/2 - s2) Theta^I + Gamma terms,
//!                         Box Lambda = potential + gradient/cubic/curvature terms]
void fluid_wave_sources(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& s,
                        const DerivedCache& c, Field& Ftheta, Field& Flam) {
  const int N = g.nnodes();
  const bool coupled = (cfg.geometry == GeometryMode::kCoupled);
  // directional derivatives of the connection: D_K Gamma_{KI}^J (K summed)
  Field dxgm(N, 3 * 64);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 64; ++a) g.dx(c.gmfull, a, i, dxgm, i * 64 + a);

  Ftheta.fill(0.0);
  Flam.fill(0.0);
  for (int n = 0; n < N; ++n) {
    if (g.region(n) != Region::kInterior) continue;
    const Real s2 = s.s2(n, 0);
    const Real sig = std::sqrt(s2);
    const Real lam = s.lam(n, 0);

    // ---- Theta source
    for (int I = 0; I < 4; ++I) {
      Real v = coupled ? (0.5 - s2) * s.th(n, I) : 0.0;
      Real corr = 0.0;
      for (int K = 0; K < 4; ++K) {
        for (int J = 0; J < 4; ++J) {
          Real gKIJ = c.gmfull(n, ci(K, I, J));
          Real t = 2.0 * c.nT(n, K * 4 + J) * gKIJ;
          // D_K Gamma_{KI}^J
          Real dg = s.e(n, K * 4 + 0) * c.dtgm(n, ci(K, I, J));
          for (int i = 0; i < 3; ++i) dg += s.e(n, K * 4 + 1 + i) * dxgm(n, i * 64 + ci(K, I, J));
          Real quad = 0.0;
          for (int M = 0; M < 4; ++M)
            quad += gKIJ * 0.0 + c.gmfull(n, ci(K, I, M)) * c.gmfull(n, ci(K, M, J)) -
                    c.gmfull(n, ci(K, K, M)) * c.gmfull(n, ci(M, I, J));
          t += s.th(n, J) * (dg + quad);
          corr += sgn(K) * sgn(J) * t;
        }
      }
      Ftheta(n, I) = v + sgn(I) * corr;
    }

    // ---- Lambda source
    Real P = 0.0, C3 = 0.0, RT = 0.0, NV2 = 0.0;
    for (int I = 0; I < 4; ++I) {
      for (int J = 0; J < 4; ++J) {
        Real nt = c.nT(n, I * 4 + J);
        Real hf = c.dds2(n, I * 4 + J);
        for (int K = 0; K < 4; ++K) hf -= c.gmfull(n, ci(I, J, K)) * c.ds2(n, K);
        P += sgn(I) * nt * hf;
        NV2 += sgn(I) * sgn(J) * nt * nt;
        for (int K = 0; K < 4; ++K)
          C3 += sgn(I) * sgn(J) * nt * c.nT(n, I * 4 + K) * c.nT(n, K * 4 + J);
      }
    }
    if (coupled) {
      RiemR r;
      for (int i = 0; i < 36; ++i) r.m[i] = c.riem(n, i);
      for (int L = 0; L < 4; ++L)
        for (int I = 0; I < 4; ++I)
          for (int J = 0; J < 4; ++J)
            for (int K = 0; K < 4; ++K) {
              if (L == I || J == K) continue;
              RT += sgn(I) * r.get(L, I, J, K) * c.nT(n, I * 4 + J) * s.th(n, K) * s.th(n, L);
            }
    }
    Real ds2n = 0.0, dl = 0.0;
    for (int I = 0; I < 4; ++I) {
      ds2n += sgn(I) * c.ds2(n, I) * c.ds2(n, I);
      dl += sgn(I) * c.ds2(n, I) * c.dlamf(n, I);
    }
    Real v = (4.0 / sig) * (P + C3 - RT) - dl / s2 + lam * ds2n / (4.0 * s2 * s2) +
             (lam / s2) * NV2;
    if (coupled) v += (2.0 - 6.0 * s2) * lam - 0.5 * lam + s2 * lam;
    Flam(n, 0) = v;
  }
}

Real sigma_rhs_point(Real s2, Real nv2, bool coupled) {
  Real v = -2.0 * nv2;
  if (coupled) v += s2 - 2.0 * s2 * s2;
  return v;
}

//----------------------------------------------------------------------------------------
//! boundary evolution law:
//!   dt(tht)^I = gDn Theta^I + (1/2s2) eps_J D_J(s2) Gamma_{JM}^I Theta^M
//!             - (eps_I/2s2) D_I(sigma Lambda) - (Lambda/2s2) tht^I
//! gDn u := (eps_J/2s2)(D_J s2) D_J u with one-sided interior stencils.
Real theta_boundary_rhs(const DomainGrid& g, const StepConfig& cfg,
                        const EvolutionState& coeff, const DerivedCache& cc,
                        const EvolutionState& lin, Field& out) {
  const int N = g.nnodes();
  Field dxth(N, 12);
  for (int i = 0; i < 3; ++i)
    for (int J = 0; J < 4; ++J) g.dx(lin.th, J, i, dxth, i * 4 + J);
  Real taylor_min = 1e300;
  for (const auto& b : g.boundary()) {
    const int n = b.node;
    const Real s2 = coeff.s2(n, 0);
    const Real sig = std::sqrt(s2);
    const Real lam = coeff.lam(n, 0);
    Real a2 = 0.0;
    for (int I = 0; I < 4; ++I) a2 += sgn(I) * cc.ds2(n, I) * cc.ds2(n, I);
    taylor_min = std::min(taylor_min, a2);
    if (cfg.fatal_taylor && a2 < cfg.thr.c0 * cfg.thr.c0)
      throw TaylorViolation("boundary evolution outside the Taylor regime");
    for (int I = 0; I < 4; ++I) {
      // gDn on the lin unknown
      Real gdn = 0.0;
      for (int J = 0; J < 4; ++J) {
        Real dj = coeff.e(n, J * 4 + 0) * lin.tht(n, I);
        for (int i = 0; i < 3; ++i) dj += coeff.e(n, J * 4 + 1 + i) * dxth(n, i * 4 + I);
        gdn += sgn(J) * cc.ds2(n, J) * dj;
      }
      gdn /= 2.0 * s2;
      Real t2 = 0.0;
      for (int J = 0; J < 4; ++J)
        for (int M = 0; M < 4; ++M)
          t2 += sgn(J) * cc.ds2(n, J) * cc.gmfull(n, ci(J, M, I)) * coeff.th(n, M);
      t2 /= 2.0 * s2;
      // D_I(sigma*Lambda) = sigma D_I Lambda + (Lambda/2 sigma) D_I s2
      Real dvl = sig * cc.dlamf(n, I) + lam / (2.0 * sig) * cc.ds2(n, I);
      Real t3 = -sgn(I) * dvl / (2.0 * s2);
      Real t4 = -lam / (2.0 * s2) * lin.tht(n, I);
      out(n, I) = gdn + t2 + t3 + t4;
    }
  }
  return taylor_min;
}

//----------------------------------------------------------------------------------------
//! frame form of the wave operator: Box u = sum eps_I (D_I D_I u - Gamma_{II}^K D_K u)
void box_frame(const DomainGrid& g, const EvolutionState& s, const DerivedCache& c,
               const Field& u, const Field& ut, const Field& utt, Field& out, int oc) {
  const int N = g.nnodes();
  Field Du(N, 4), dtDu(N, 4), dxu(N, 3), dxut(N, 3);
  for (int i = 0; i < 3; ++i) {
    g.dx(u, 0, i, dxu, i);
    g.dx(ut, 0, i, dxut, i);
  }
  for (int n = 0; n < N; ++n)
    for (int I = 0; I < 4; ++I) {
      Real du = s.e(n, I * 4 + 0) * ut(n, 0);
      Real cm = c.dte(n, I * 4 + 0) * ut(n, 0);
      Real dut = s.e(n, I * 4 + 0) * utt(n, 0);
      for (int i = 0; i < 3; ++i) {
        du += s.e(n, I * 4 + 1 + i) * dxu(n, i);
        cm += c.dte(n, I * 4 + 1 + i) * dxu(n, i);
        dut += s.e(n, I * 4 + 1 + i) * dxut(n, i);
      }
      Du(n, I) = du;
      dtDu(n, I) = cm + dut;  // dt(D_I u) = [dt,D_I]u + D_I(ut)
    }
  Field dxDu(N, 12);
  for (int i = 0; i < 3; ++i)
    for (int I = 0; I < 4; ++I) g.dx(Du, I, i, dxDu, i * 4 + I);
  for (int n = 0; n < N; ++n) {
    Real v = 0.0;
    for (int I = 0; I < 4; ++I) {
      Real dd = s.e(n, I * 4 + 0) * dtDu(n, I);
      for (int i = 0; i < 3; ++i) dd += s.e(n, I * 4 + 1 + i) * dxDu(n, i * 4 + I);
      v += sgn(I) * dd;
      for (int K = 0; K < 4; ++K) v -= sgn(I) * c.gmfull(n, ci(I, I, K)) * Du(n, K);
    }
    out(n, oc) = v;
  }
}

//! gDn u = (eps_I/2 s2)(D_I s2) D_I u (fluid region)
void gdn_frame(const DomainGrid& g, const EvolutionState& s, const DerivedCache& c,
               const Field& u, const Field& ut, Field& out, int oc) {
  const int N = g.nnodes();
  Field dxu(N, 3);
  for (int i = 0; i < 3; ++i) g.dx(u, 0, i, dxu, i);
  for (int n = 0; n < N; ++n) {
    if (g.region(n) != Region::kInterior) {
      out(n, oc) = 0.0;
      continue;
    }
    Real v = 0.0;
    for (int I = 0; I < 4; ++I) {
      Real du = s.e(n, I * 4 + 0) * ut(n, 0);
      for (int i = 0; i < 3; ++i) du += s.e(n, I * 4 + 1 + i) * dxu(n, i);
      v += sgn(I) * c.ds2(n, I) * du;
    }
    out(n, oc) = v / (2.0 * s.s2(n, 0));
  }
}

//----------------------------------------------------------------------------------------
//! commutator identity residuals. The caller supplies the time derivatives of the
//! operators applied to the probe (dt_boxu = dt(Box u), dt_gdnu = dt(gDn u)), e.g. by
//! time differencing over a manufactured family; the identity sides are assembled here
//! from first-order data.
void commutator_residual(const DomainGrid& g, const EvolutionState& s, const DerivedCache& c,
                         const Field& u, const Field& ut, const Field& utt, const Field& uttt,
                         const Field& d2that, const Field& dt_boxu, const Field& dt_gdnu,
                         Field& out) {
  const int N = g.nnodes();
  Field Du(N, 4), dtDu(N, 4), comm(N, 4), dxu(N, 3), dxut(N, 3);
  for (int i = 0; i < 3; ++i) {
    g.dx(u, 0, i, dxu, i);
    g.dx(ut, 0, i, dxut, i);
  }
  for (int n = 0; n < N; ++n)
    for (int I = 0; I < 4; ++I) {
      Real du = s.e(n, I * 4 + 0) * ut(n, 0);
      Real cm = c.dte(n, I * 4 + 0) * ut(n, 0);
      Real dut = s.e(n, I * 4 + 0) * utt(n, 0);
      for (int i = 0; i < 3; ++i) {
        du += s.e(n, I * 4 + 1 + i) * dxu(n, i);
        cm += c.dte(n, I * 4 + 1 + i) * dxu(n, i);
        dut += s.e(n, I * 4 + 1 + i) * dxut(n, i);
      }
      Du(n, I) = du;
      comm(n, I) = cm;
      dtDu(n, I) = cm + dut;
    }
  // residual 1: [dt,D_I]u + C_I^J D_J u
  for (int n = 0; n < N; ++n)
    for (int I = 0; I < 4; ++I) {
      Real r = comm(n, I);
      for (int J = 0; J < 4; ++J) r += c.cIJ(n, I * 4 + J) * Du(n, J);
      out(n, I) = r;
    }
  // residual 2: dt(Box u) - Box(ut) - identity expansion
  Field boxut(N, 1);
  box_frame(g, s, c, ut, utt, uttt, boxut, 0);
  Field dxDu(N, 12), dxC(N, 48), dxthat(N, 12), dxdthat(N, 12);
  for (int i = 0; i < 3; ++i) {
    for (int I = 0; I < 4; ++I) g.dx(Du, I, i, dxDu, i * 4 + I);
    for (int a = 0; a < 16; ++a) g.dx(c.cIJ, a, i, dxC, i * 16 + a);
    for (int J = 0; J < 4; ++J) {
      g.dx(c.that, J, i, dxthat, i * 4 + J);
      g.dx(c.dthat, J, i, dxdthat, i * 4 + J);
    }
  }
  for (int n = 0; n < N; ++n) {
    Real rhs = 0.0;
    for (int I = 0; I < 4; ++I) {
      for (int J = 0; J < 4; ++J) {
        Real CIJ = c.cIJ(n, I * 4 + J);
        Real dJDI = s.e(n, J * 4 + 0) * dtDu(n, I);
        Real dIDJ = s.e(n, I * 4 + 0) * dtDu(n, J);
        for (int i = 0; i < 3; ++i) {
          dJDI += s.e(n, J * 4 + 1 + i) * dxDu(n, i * 4 + I);
          dIDJ += s.e(n, I * 4 + 1 + i) * dxDu(n, i * 4 + J);
        }
        rhs -= sgn(I) * CIJ * (dJDI + dIDJ);
        // D_I C_I^J with its time part:
        //   dt C_I^J = (dt e_I^mu) d_mu That^J + D_I(dt That^J)
        //            + (dt That^K) Gamma_{IK}^J + That^K dt Gamma_{IK}^J
        Real dtC = c.dte(n, I * 4 + 0) * c.dthat(n, J);
        Real dId = s.e(n, I * 4 + 0) * d2that(n, J);
        for (int i = 0; i < 3; ++i) {
          dtC += c.dte(n, I * 4 + 1 + i) * dxthat(n, i * 4 + J);
          dId += s.e(n, I * 4 + 1 + i) * dxdthat(n, i * 4 + J);
        }
        dtC += dId;
        for (int K = 0; K < 4; ++K)
          dtC += c.dthat(n, K) * c.gmfull(n, ci(I, K, J)) + c.that(n, K) * c.dtgm(n, ci(I, K, J));
        Real dC = s.e(n, I * 4 + 0) * dtC;
        for (int i = 0; i < 3; ++i) dC += s.e(n, I * 4 + 1 + i) * dxC(n, i * 16 + I * 4 + J);
        rhs -= sgn(I) * dC * Du(n, J);
        for (int K = 0; K < 4; ++K)
          rhs += sgn(I) * c.gmfull(n, ci(I, I, K)) * c.cIJ(n, K * 4 + J) * Du(n, J);
      }
      for (int K = 0; K < 4; ++K)
        rhs -= sgn(I) * c.dtgm(n, ci(I, I, K)) * Du(n, K);
    }
    out(n, 4) = dt_boxu(n, 0) - boxut(n, 0) - rhs;
  }
  // residual 3: dt(gDn u) - gDn(ut) - identity expansion
  Field gdnut(N, 1);
  gdn_frame(g, s, c, ut, utt, gdnut, 0);
  for (int n = 0; n < N; ++n) {
    if (g.region(n) != Region::kInterior) {
      out(n, 5) = 0.0;
      continue;
    }
    Real s2 = s.s2(n, 0);
    Real lam = s.lam(n, 0);
    Real rhs = 0.0;
    for (int I = 0; I < 4; ++I) {
      Real commu = 0.0;
      for (int J = 0; J < 4; ++J) commu += c.cIJ(n, I * 4 + J) * c.ds2(n, J);
      Real dtP = sgn(I) * ((c.dlamf(n, I) - commu) / (2.0 * s2) -
                           c.ds2(n, I) * lam / (2.0 * s2 * s2));
      rhs += dtP * Du(n, I);
      Real PI = sgn(I) * c.ds2(n, I) / (2.0 * s2);
      for (int J = 0; J < 4; ++J) rhs -= PI * c.cIJ(n, I * 4 + J) * Du(n, J);
    }
    out(n, 5) = dt_gdnu(n, 0) - gdnut(n, 0) - rhs;
  }
}

}  // namespace hardphase
