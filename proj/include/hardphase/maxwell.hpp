//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file maxwell.hpp
//  \brief the Maxwell form of the contracted Bianchi equations for the six two-forms:
//         constant symmetric matrices A^It, the assembled time/space matrices for the
//         plain and time-adapted frames, the sources (I, J*), the coordinate-space E/H
//         split, and the div-curl residual diagnostics.

#ifndef HARDPHASE_MAXWELL_HPP_
#define HARDPHASE_MAXWELL_HPP_

#include "evolve.hpp"

namespace hardphase {

//! the three constant symmetric 6x6 matrices entering the first-order system
const std::array<std::array<std::array<Real, 6>, 6>, 3>& curl_matrices();

//! B^0 = c0 * 1 + sum_It cIt * A^It for frame time components (c0, c1..c3)
std::array<std::array<Real, 6>, 6> assemble_b_matrix(Real c0, const Vec3& cIt);

//! checked-frame hyperbolic data at a node: B0 (SPD), B^j, and the spectral margin kappa
struct HyperbolicPoint {
  std::array<std::array<Real, 6>, 6> b0;
  std::array<std::array<std::array<Real, 6>, 6>, 3> bj;
  Real kappa;
};
HyperbolicPoint assemble_hyperbolic(const Vec4 che_time_components[3], const Mat4& che_spatial,
                                    bool checked, Real kappa_min);

//! sources K = (I_1,I_2,I_3, J*_1,J*_2,J*_3) per pair, checked-frame quantities (18 comps)
void maxwell_sources(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& s,
                     const DerivedCache& c, Field& K);

//! dW/dt = (B0)^-1 (K - B^j d_j W); principal part on lin, everything else from coeff
void curvature_rhs(const DomainGrid& g, const StepConfig& cfg, const EvolutionState& coeff,
                   const DerivedCache& cc, const EvolutionState& lin, const Field& K,
                   Field& dw, Real* kappa_min_out = nullptr);

//! coordinate-space electric/magnetic split of a two-form given in coordinate components
//! F (pair storage on coordinate index pairs): Ebar_i = F_{it}, Hbar^k = -1/2 eps^{ijk}F_{ij}
void coordinate_em(const std::array<Real, 6>& f_coord, Vec3& ebar, Vec3& hbar);

//! div-curl residuals of the coordinate E/H system for one pair; fields are
//! Ebar (3), Hbar (3), their stored time derivatives, metric jet from the cache, and the
//! coordinate-space sources (Jt, Ji, Itij...) assembled by the caller; returns residual
//! fields: 0 div E, 1 div H, 2..4 curl H rows, 5..7 curl E rows
void divcurl_residuals(const DomainGrid& g, const DerivedCache& c, const Field& ebar,
                       const Field& hbar, const Field& dtebar, const Field& dthbar,
                       const Field& jt, const Field& ji, const Field& iijk, Field& out);

}  // namespace hardphase

#endif  // HARDPHASE_MAXWELL_HPP_
