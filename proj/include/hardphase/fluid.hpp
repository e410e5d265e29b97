//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file fluid.hpp
//  \brief right-hand sides of the fluid subsystem: the boundary evolution for Theta, the
//         interior wave equation for Theta, and the wave equations for sigma^2 and
//         Lambda = dt sigma^2. Also frame-directional derivatives and the commutator
//         residual diagnostics.

#ifndef HARDPHASE_FLUID_HPP_
#define HARDPHASE_FLUID_HPP_

#include "evolve.hpp"

namespace hardphase {

//! D_I f = e_I^mu d_mu f for a scalar component; ft supplies the stored time derivative
void frame_derivative(const DomainGrid& g, const Field& e, const Field& f, int fc,
                      const Field& ft, int ftc, Field& out, int obase);

//! interior wave sources: Box Theta^I = Ftheta, Box Lambda = Flam (fluid region)
void fluid_wave_sources(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& s,
                        const DerivedCache& c, Field& Ftheta, Field& Flam);

//! boundary evolution: writes d(tht)/dt at fluid-boundary nodes into out (4 comps).
//! Sources and coefficients from (coeff, cc); the normal-derivative principal part acts
//! on `lin`. Returns the minimum Taylor monitor value over the boundary.
Real theta_boundary_rhs(const DomainGrid& g, const StepConfig& cfg,
                        const EvolutionState& coeff, const DerivedCache& cc,
                        const EvolutionState& lin, Field& out);

//! sigma^2 wave-equation source at one node, from gathered frame values (exposed for
//! tests): nv2 = eps_I eps_J (nabla_I Theta^J)^2
Real sigma_rhs_point(Real s2, Real nv2, bool coupled);

//! frame form of the wave operator applied to a probe with stored time jets
void box_frame(const DomainGrid& g, const EvolutionState& s, const DerivedCache& c,
               const Field& u, const Field& ut, const Field& utt, Field& out, int oc);
//! gDn u = (eps_I/2 sigma^2)(D_I sigma^2) D_I u on the fluid region
void gdn_frame(const DomainGrid& g, const EvolutionState& s, const DerivedCache& c,
               const Field& u, const Field& ut, Field& out, int oc);

//! commutator identity residuals for a probe with time jets (u, ut, utt, uttt).
//! dt_boxu and dt_gdnu are the time derivatives of Box u and gDn u supplied by the
//! caller (time differencing over a manufactured family or stored stage derivatives);
//! d2that is the second time derivative of hat Theta.
//! out comps: 0..3 residual of [dt,D_I]u, 4 of [dt,Box]u, 5 of [dt, dtt + gDn]u
void commutator_residual(const DomainGrid& g, const EvolutionState& s, const DerivedCache& c,
                         const Field& u, const Field& ut, const Field& utt, const Field& uttt,
                         const Field& d2that, const Field& dt_boxu, const Field& dt_gdnu,
                         Field& out);

}  // namespace hardphase

#endif  // HARDPHASE_FLUID_HPP_
