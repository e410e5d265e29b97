//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file grid.hpp
//  \brief Lagrangian product-domain grid: interior ball, exterior shell up to a far-field
//         cutoff, duplicated interface nodes, one-sided stencils per block.
//
//  Two charts share all operator code:
//    radial  — 1D symmetry reduction; the "ball" is the segment [-1,1] on the x-axis,
//              with exterior segments out to +-r_far (disjoint blocks, twin nodes at +-1)
//    ball3d  — spherical-polar (r,theta,phi) ball plus shell; cell-centered in r and
//              theta (no coordinate poles on the grid), periodic in phi

#ifndef HARDPHASE_GRID_HPP_
#define HARDPHASE_GRID_HPP_

#include <utility>
#include <vector>

#include "field.hpp"
#include "stencil.hpp"
#include "types.hpp"

namespace hardphase {

enum class GridMode { kRadial, kBall3d };
enum class Region : unsigned char { kInterior = 0, kExterior = 1 };

struct GridConfig {
  GridMode mode = GridMode::kRadial;
  int order = 4;        // stencil order p
  int n_interior = 65;  // radial: nodes across [-1,1] (use odd); ball3d: nodes in r
  Real r_far = 1.4;     // far-field cutoff (adjusted to the grid spacing)
  int n_theta = 6;      // ball3d only
  int n_phi = 12;       // ball3d only
};

struct Block {
  Region region = Region::kInterior;
  std::array<int, 3> n = {1, 1, 1};
  std::array<Real, 3> q0 = {0.0, 0.0, 0.0};
  std::array<Real, 3> dq = {1.0, 1.0, 1.0};
  std::array<bool, 3> periodic = {false, false, false};
  int node0 = 0;
  int nnodes() const { return n[0] * n[1] * n[2]; }
};

//! a fluid-boundary node with its outward coordinate conormal and surface weight
struct BoundaryNode {
  int node = 0;
  Vec3 nout = {0.0, 0.0, 0.0};
  Real ws = 1.0;
};

class DomainGrid {
 public:
  explicit DomainGrid(const GridConfig& cfg);

  const GridConfig& config() const { return cfg_; }
  int nnodes() const { return nnodes_; }
  int order() const { return cfg_.order; }
  GridMode mode() const { return cfg_.mode; }
  Real hmin() const { return hmin_; }

  const std::vector<Block>& blocks() const { return blocks_; }
  const Vec3& pos(int n) const { return pos_[n]; }
  Region region(int n) const { return region_[n]; }
  bool pinned(int n) const { return pinned_[n] != 0; }
  Real weight(int n) const { return wq_[n]; }  // coordinate volume weight
  const std::vector<BoundaryNode>& boundary() const { return boundary_; }
  const std::vector<std::pair<int, int>>& interface_pairs() const { return iface_; }

  //! first cartesian derivative d/dx_i of one component, all nodes
  void dx(const Field& f, int comp, int i, Field& out, int ocomp) const;
  //! second cartesian derivative d2/dx_i dx_j (same or mixed axes)
  void dxx(const Field& f, int comp, int i, int j, Field& out, int ocomp) const;
  //! derivative in grid coordinate q_axis (m = 1 or 2), all nodes
  void dq(const Field& f, int comp, int axis, int m, Field& out, int ocomp) const;

  //! integral over a region of (component) * weight, plain coordinate measure
  Real integrate(const Field& f, int comp, Region reg) const;
  Real integrate_all(const Field& f, int comp) const;

  //! number of active axes (1 for radial, 3 for ball3d)
  int dim() const { return cfg_.mode == GridMode::kRadial ? 1 : 3; }

 private:
  void build_radial();
  void build_ball3d();
  void build_tables();

  GridConfig cfg_;
  int nnodes_ = 0;
  Real hmin_ = 1.0;
  std::vector<Block> blocks_;
  std::vector<Vec3> pos_;
  std::vector<Real> wq_;
  std::vector<Region> region_;
  std::vector<unsigned char> pinned_;
  std::vector<BoundaryNode> boundary_;
  std::vector<std::pair<int, int>> iface_;
  // per block, per axis, per m-1: stencil rows
  std::vector<std::array<std::array<std::vector<StencilRow>, 3>, 2>> tables_;
  // per node chart jacobian dq^a/dx^i and its q-gradient (ball3d; identity for radial)
  std::vector<M3<Real>> jac_;
  std::vector<std::array<M3<Real>, 3>> djac_;  // [b][a][i] = d/dq_b (dq^a/dx^i)
  bool curvilinear_ = false;

  void apply_axis(const Field& f, int comp, int axis, int m, Field& out, int ocomp) const;
};

}  // namespace hardphase

#endif  // HARDPHASE_GRID_HPP_
