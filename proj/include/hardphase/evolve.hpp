//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file evolve.hpp
//  \brief coupled evolution state, algebraic closures + derived caches, the RK4 stepper
//         with optional frozen-coefficient sweeps, and the CFL guard.
//
//  Evolved on all of Sigma:   e_I^mu (the interior time leg is re-closed algebraically),
//                             Gamma_{It J}^K, and the checked two-forms W per pair.
//  Evolved on the fluid ball: (Theta, dtTheta), sigma^2, (Lambda, dtLambda).
//  Everything else is an algebraic closure recomputed by refresh_derived; closures are
//  idempotent. All RHS assembly is node-parallel over immutable snapshots; the stepper
//  is single-writer per field.

#ifndef HARDPHASE_EVOLVE_HPP_
#define HARDPHASE_EVOLVE_HPP_

#include <functional>
#include <memory>

#include "field.hpp"
#include "frame.hpp"
#include "grid.hpp"
#include "riemann.hpp"
#include "tetrad.hpp"
#include "types.hpp"

namespace hardphase {

enum class GeometryMode { kTestFluid, kCoupled };

//! manufactured-solution forcing hooks (test use): added to the named wave operators
struct Forcing {
  virtual ~Forcing() = default;
  virtual void theta(Real t, const DomainGrid& g, Field& add) const = 0;   // 4 comps
  virtual void lambda(Real t, const DomainGrid& g, Field& add) const = 0;  // 1 comp
};

struct StepConfig {
  Real dt = 1e-3;
  int picard_iters = 0;  // 0 = fully explicit RK4
  GeometryMode geometry = GeometryMode::kCoupled;
  Thresholds thr;
  Real picard_tol = 1e-12;
  bool check_cfl = true;
  bool fatal_taylor = true;  // downgrade to report-only in test-fluid mode
  const Forcing* forcing = nullptr;
};

//----------------------------------------------------------------------------------------
struct EvolutionState {
  Real t = 0.0;
  Field e;           // 16: e_I^mu
  Field gm;          // 48: Gamma_{It J}^K, It = 1..3
  Field w;           // 18: checked-frame two-forms, pairs (01),(02),(12) x (E,H)
  Field th, tht;     // 4 + 4
  Field s2, lam, lamt;  // 1 + 1 + 1

  EvolutionState() = default;
  explicit EvolutionState(const DomainGrid& g)
      : e(g.nnodes(), 16), gm(g.nnodes(), 48), w(g.nnodes(), 18),
        th(g.nnodes(), 4), tht(g.nnodes(), 4),
        s2(g.nnodes(), 1), lam(g.nnodes(), 1), lamt(g.nnodes(), 1) {}
};

//! derived algebraic closures and stencil workspaces; refreshed from a state snapshot
struct DerivedCache {
  Field that, dthat;     // 4 + 4
  Field gmfull;          // 64 (time row closed)
  Field dte;             // 16: transport values for all legs
  Field dtgm;            // 64: transport values (all I; time row by chain rule)
  Field ginv, gmet;      // 16 + 16
  Field sqg, dtsqg;      // 1 + 1
  Field dtginv;          // 16
  Field chec, dtchec;    // 16 + 16: checked-frame coefficients and their time derivative
  Field che, dtche;      // 16 + 16: checked-frame coordinate components
  Field gmch;            // 64: checked-frame connection
  Field thch, dtthch;    // 4 + 4: Theta components in the checked frame (fluid region)
  Field tet, dttet;      // 16 + 16: (X0,X1,X2,n) in checked-frame components
  Field riem_ch;         // 36: recovered curvature, checked-frame components
  Field riem;            // 36: curvature, e-frame components
  Field kappa;           // 1: 1 - |che^0| hyperbolicity margin
  // fluid workspace (interior region)
  Field dth;             // 16: D_I Theta^J
  Field ds2, dlamf;      // 4 + 4: D_I sigma2, D_I Lambda
  Field nT;              // 16: nabla_I Theta^J
  Field dthat_dir;       // 16: D_I That^J
  Field cIJ;             // 16: C_I^J = D_I That^J + That^K Gamma_{IK}^J
  Field dds2;            // 16: D_I D_J sigma2
  Real kappa_min = 1.0;
  Real taylor_min = 0.0;

  DerivedCache() = default;
  explicit DerivedCache(const DomainGrid& g);
};

//! closures + caches; overwrites the interior time leg with its algebraic closure
void refresh_derived(const DomainGrid& g, const StepConfig& cfg, EvolutionState& s,
                     DerivedCache& c);

//----------------------------------------------------------------------------------------
//! time derivative of the full state. `coeff` supplies every coefficient and source
//! (with its cache); `lin` supplies the differentiated unknowns of the principal parts.
//! For plain stepping coeff == lin.
void compute_rhs(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& coeff,
                 const DerivedCache& cc, const EvolutionState& lin, Real t_stage,
                 EvolutionState& out);

//! CFL-limited maximum dt for the current state
Real cfl_dt(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& s,
            const DerivedCache& c);

//! one RK4 step (optionally with frozen-coefficient sweeps); returns the last cache
struct StepStats {
  int picard_sweeps = 0;
  Real contraction = 0.0;  // last measured iterate-distance ratio
  Real kappa_min = 1.0;
  Real taylor_min = 0.0;
};
StepStats step(const DomainGrid& g, const StepConfig& cfg, EvolutionState& s);

//! one frozen-coefficient sweep given the previous iterate's stage snapshots
struct StageSet {
  std::array<EvolutionState, 4> y;
  std::array<DerivedCache, 4> c;
};
void picard_sweep(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& y0,
                  const StageSet& prev, EvolutionState& out, StageSet& stages);

//! sup distance between two states (per-field max-norm over evolved variables)
Real state_distance(const DomainGrid& g, const EvolutionState& a, const EvolutionState& b);

// state algebra for the integrator
void state_axpy(EvolutionState& y, Real a, const EvolutionState& x);
void state_copy(EvolutionState& dst, const EvolutionState& src);

//----------------------------------------------------------------------------------------
//! scalar wave operator split: du_t/dt from Box u = F using the coordinate decomposition
//! with the elliptic spatial part and mixed time-space corrections. Fills `out` on
//! interior non-boundary nodes only.
void wave_to_first_order(const DomainGrid& g, const StepConfig& cfg, const DerivedCache& c,
                         const Field& u, int uc, const Field& ut, int utc, const Field& F,
                         int Fc, Field& out, int oc);

}  // namespace hardphase

#endif  // HARDPHASE_EVOLVE_HPP_
