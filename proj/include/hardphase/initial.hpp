//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file initial.hpp
//  \brief construction of the full compatible initial state from constraint data
//         (gbar, k, phi0, phi1): lapse/shift choices, the time derivative of the spatial
//         metric from the second fundamental form, coordinate Christoffels, curvature
//         from the Gauss/Codazzi relations with the matter substitution, the initial
//         orthonormal frame and its connection, and the compatibility report.

#ifndef HARDPHASE_INITIAL_HPP_
#define HARDPHASE_INITIAL_HPP_

#include <string>
#include <vector>

#include "evolve.hpp"

namespace hardphase {

//! constraint data on the grid (symmetric 3x3 fields stored as 6 comps: xx,xy,xz,yy,yz,zz)
struct ConstraintData {
  Field gbar;  // 6
  Field kk;    // 6
  Field phi0;  // 1
  Field phi1;  // 1

  ConstraintData() = default;
  explicit ConstraintData(const DomainGrid& g)
      : gbar(g.nnodes(), 6), kk(g.nnodes(), 6), phi0(g.nnodes(), 1), phi1(g.nnodes(), 1) {}
};

inline constexpr int kSym3I[6] = {0, 0, 0, 1, 1, 2};
inline constexpr int kSym3J[6] = {0, 1, 2, 1, 2, 2};
inline constexpr int kSym3Idx[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};

//! residual norms of the Hamiltonian and momentum constraints for given data
struct ConstraintResidual {
  Real hamiltonian_sup = 0.0;
  Real momentum_sup = 0.0;
};
ConstraintResidual constraint_residuals(const DomainGrid& g, const ConstraintData& cd);

struct InitialState {
  Field g0;    // 16: 4-metric at t=0
  Field dtg;   // 16: its time derivative
  Field chr;   // 64: coordinate Christoffels Gamma_{alpha beta}^gamma, [a][b][g]
  Field riem_coord;  // 36: coordinate curvature, pair storage
  EvolutionState state;
};

//! stage outputs (exposed for unit tests)
void build_lapse_shift_data(const DomainGrid& g, const ConstraintData& cd, Field& g0,
                            Field& v0);
void build_dtgij(const DomainGrid& g, const ConstraintData& cd, const Field& g0, Field& dtg);
void build_christoffels(const DomainGrid& g, const ConstraintData& cd, const Field& g0,
                        const Field& v0, Field& dtg, Field& chr);
void build_curvature_data(const DomainGrid& g, const ConstraintData& cd, const Field& g0,
                          const Field& v0, Field& riem_coord);

//! full pipeline
InitialState build_initial_state(const DomainGrid& g, const StepConfig& cfg,
                                 const ConstraintData& cd);

//----------------------------------------------------------------------------------------
//! compatibility report: bounds, Taylor monitor, and initial vanishing-quantity norms
struct CompatEntry {
  std::string name;
  Real value = 0.0;
  Real tolerance = 0.0;
  bool pass = true;
};
struct CompatReport {
  std::vector<CompatEntry> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};
CompatReport check_compatibility(const DomainGrid& g, const StepConfig& cfg,
                                 InitialState& init, Real monitor_tol);

}  // namespace hardphase

#endif  // HARDPHASE_INITIAL_HPP_
