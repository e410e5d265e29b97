//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file grid.cpp
//  \brief DomainGrid construction and stencil application

#include "hardphase/grid.hpp"

#include <cmath>

namespace hardphase {

DomainGrid::DomainGrid(const GridConfig& cfg) : cfg_(cfg) {
  if (cfg_.order < 2 || cfg_.order % 2 != 0) throw ConfigError("stencil order must be even and >= 2");
  if (cfg_.mode == GridMode::kRadial) {
    build_radial();
  } else {
    build_ball3d();
  }
  build_tables();
}

//----------------------------------------------------------------------------------------
void DomainGrid::build_radial() {
  curvilinear_ = false;
  const int ni = cfg_.n_interior;
  if (ni < cfg_.order + 3) throw ConfigError("n_interior too small for stencil order");
  const Real h = 2.0 / (ni - 1);
  int nex = static_cast<int>(std::lround((cfg_.r_far - 1.0) / h)) + 1;
  nex = std::max(nex, cfg_.order + 3);
  const Real rfar = 1.0 + h * (nex - 1);
  cfg_.r_far = rfar;
  hmin_ = h;

  Block b0;  // interior ball [-1,1]
  b0.region = Region::kInterior;
  b0.n = {ni, 1, 1};
  b0.q0 = {-1.0, 0.0, 0.0};
  b0.dq = {h, 1.0, 1.0};
  b0.node0 = 0;
  Block b1;  // right exterior [1, rfar]
  b1.region = Region::kExterior;
  b1.n = {nex, 1, 1};
  b1.q0 = {1.0, 0.0, 0.0};
  b1.dq = {h, 1.0, 1.0};
  b1.node0 = ni;
  Block b2;  // left exterior [-rfar, -1]
  b2.region = Region::kExterior;
  b2.n = {nex, 1, 1};
  b2.q0 = {-rfar, 0.0, 0.0};
  b2.dq = {h, 1.0, 1.0};
  b2.node0 = ni + nex;
  blocks_ = {b0, b1, b2};
  nnodes_ = ni + 2 * nex;

  pos_.assign(nnodes_, {0.0, 0.0, 0.0});
  wq_.assign(nnodes_, 0.0);
  region_.assign(nnodes_, Region::kInterior);
  pinned_.assign(nnodes_, 0);
  for (const Block& b : blocks_) {
    auto w = gregory_weights(b.n[0], b.dq[0], false);
    for (int i = 0; i < b.n[0]; ++i) {
      int n = b.node0 + i;
      pos_[n] = {b.q0[0] + i * b.dq[0], 0.0, 0.0};
      wq_[n] = w[i];
      region_[n] = b.region;
    }
  }
  const int pw = cfg_.order + 2;
  for (int i = 0; i < nex; ++i) {
    if (i >= nex - pw) pinned_[b1.node0 + i] = 1;
    if (i < pw) pinned_[b2.node0 + i] = 1;
  }
  boundary_.push_back({b0.node0, {-1.0, 0.0, 0.0}, 1.0});
  boundary_.push_back({b0.node0 + ni - 1, {1.0, 0.0, 0.0}, 1.0});
  iface_.push_back({b0.node0 + ni - 1, b1.node0});
  iface_.push_back({b0.node0, b2.node0 + nex - 1});
}

//----------------------------------------------------------------------------------------
void DomainGrid::build_ball3d() {
  curvilinear_ = true;
  const int nr = cfg_.n_interior, nt = cfg_.n_theta, np = cfg_.n_phi;
  if (nr < cfg_.order + 3 || nt < cfg_.order + 2 || np < cfg_.order + 2)
    throw ConfigError("ball3d grid too small for stencil order");
  const Real dr = 1.0 / (nr - 0.5);
  int nex = static_cast<int>(std::lround((cfg_.r_far - 1.0) / dr)) + 1;
  nex = std::max(nex, cfg_.order + 3);
  cfg_.r_far = 1.0 + dr * (nex - 1);
  const Real dt = M_PI / nt;
  const Real dp = 2.0 * M_PI / np;
  hmin_ = std::min(dr, std::min(0.5 * dr * dt, 0.5 * dr * dt * dp));

  Block b0;
  b0.region = Region::kInterior;
  b0.n = {nr, nt, np};
  b0.q0 = {0.5 * dr, 0.5 * dt, 0.0};
  b0.dq = {dr, dt, dp};
  b0.periodic = {false, false, true};
  b0.node0 = 0;
  Block b1 = b0;
  b1.region = Region::kExterior;
  b1.n = {nex, nt, np};
  b1.q0 = {1.0, 0.5 * dt, 0.0};
  b1.node0 = b0.nnodes();
  blocks_ = {b0, b1};
  nnodes_ = b0.nnodes() + b1.nnodes();

  pos_.assign(nnodes_, {0.0, 0.0, 0.0});
  wq_.assign(nnodes_, 0.0);
  region_.assign(nnodes_, Region::kInterior);
  pinned_.assign(nnodes_, 0);
  jac_.assign(nnodes_, M3<Real>{});
  djac_.assign(nnodes_, std::array<M3<Real>, 3>{});

  const int pw = cfg_.order + 2;
  for (const Block& b : blocks_) {
    auto wr = gregory_weights(b.n[0], b.dq[0], false);
    auto wt = gregory_weights(b.n[1], b.dq[1], false);
    auto wp = gregory_weights(b.n[2], b.dq[2], true);
    for (int i = 0; i < b.n[0]; ++i) {
      for (int j = 0; j < b.n[1]; ++j) {
        for (int k = 0; k < b.n[2]; ++k) {
          int n = b.node0 + (i * b.n[1] + j) * b.n[2] + k;
          Real r = b.q0[0] + i * b.dq[0];
          Real th = b.q0[1] + j * b.dq[1];
          Real ph = b.q0[2] + k * b.dq[2];
          Real st = std::sin(th), ct = std::cos(th), sp = std::sin(ph), cp = std::cos(ph);
          pos_[n] = {r * st * cp, r * st * sp, r * ct};
          wq_[n] = wr[i] * wt[j] * wp[k] * r * r * st;
          region_[n] = b.region;
          if (b.region == Region::kExterior && i >= b.n[0] - pw) pinned_[n] = 1;
          M3<Real>& J = jac_[n];
          J[0] = {st * cp, st * sp, ct};
          J[1] = {ct * cp / r, ct * sp / r, -st / r};
          J[2] = {-sp / (r * st), cp / (r * st), 0.0};
          auto& dJ = djac_[n];
          dJ[0][0] = {0.0, 0.0, 0.0};
          dJ[0][1] = {-ct * cp / (r * r), -ct * sp / (r * r), st / (r * r)};
          dJ[0][2] = {sp / (r * r * st), -cp / (r * r * st), 0.0};
          dJ[1][0] = {ct * cp, ct * sp, -st};
          dJ[1][1] = {-st * cp / r, -st * sp / r, -ct / r};
          dJ[1][2] = {sp * ct / (r * st * st), -cp * ct / (r * st * st), 0.0};
          dJ[2][0] = {-st * sp, st * cp, 0.0};
          dJ[2][1] = {-ct * sp / r, ct * cp / r, 0.0};
          dJ[2][2] = {-cp / (r * st), -sp / (r * st), 0.0};
        }
      }
    }
  }
  const Block& b0r = blocks_[0];
  const Block& b1r = blocks_[1];
  for (int j = 0; j < nt; ++j) {
    for (int k = 0; k < np; ++k) {
      int nb = b0r.node0 + ((nr - 1) * nt + j) * np + k;
      int ne = b1r.node0 + (0 * nt + j) * np + k;
      Real th = b0r.q0[1] + j * b0r.dq[1];
      Real ph = k * b0r.dq[2];
      Vec3 nout = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
      boundary_.push_back({nb, nout, std::sin(th) * dt * dp});
      iface_.push_back({nb, ne});
    }
  }
}

//----------------------------------------------------------------------------------------
void DomainGrid::build_tables() {
  tables_.resize(blocks_.size());
  for (size_t b = 0; b < blocks_.size(); ++b) {
    for (int axis = 0; axis < 3; ++axis) {
      if (blocks_[b].n[axis] < 2) continue;
      for (int m = 1; m <= 2; ++m) {
        tables_[b][m - 1][axis] =
            stencil_table(blocks_[b].n[axis], blocks_[b].dq[axis], cfg_.order, m, blocks_[b].periodic[axis]);
      }
    }
  }
}

//----------------------------------------------------------------------------------------
void DomainGrid::apply_axis(const Field& f, int comp, int axis, int m, Field& out, int ocomp) const {
  for (size_t b = 0; b < blocks_.size(); ++b) {
    const Block& blk = blocks_[b];
    if (blk.n[axis] < 2) {  // collapsed axis: derivative vanishes
      for (int n = blk.node0; n < blk.node0 + blk.nnodes(); ++n) out(n, ocomp) = 0.0;
      continue;
    }
    const auto& rows = tables_[b][m - 1][axis];
    const int n0 = blk.n[0], n1 = blk.n[1], n2 = blk.n[2];
    const int len = blk.n[axis];
    int stride;
    if (axis == 0) stride = n1 * n2;
    else if (axis == 1) stride = n2;
    else stride = 1;
    // iterate over all lines along 'axis'
    int la = (axis == 0) ? n1 : n0;
    int lb = (axis == 2) ? n1 : n2;
    for (int ia = 0; ia < la; ++ia) {
      for (int ib = 0; ib < lb; ++ib) {
        int base;
        if (axis == 0) base = blk.node0 + ia * n2 + ib;           // (j=ia, k=ib)
        else if (axis == 1) base = blk.node0 + ia * n1 * n2 + ib; // (i=ia, k=ib)
        else base = blk.node0 + (ia * n1 + ib) * n2;              // (i=ia, j=ib)
        for (int i = 0; i < len; ++i) {
          const StencilRow& row = rows[i];
          Real s = 0.0;
          for (size_t k = 0; k < row.w.size(); ++k) {
            int idx = row.start + static_cast<int>(k);
            if (blk.periodic[axis]) idx = (idx % len + len) % len;
            s += row.w[k] * f(base + idx * stride, comp);
          }
          out(base + i * stride, ocomp) = s;
        }
      }
    }
  }
}

void DomainGrid::dq(const Field& f, int comp, int axis, int m, Field& out, int ocomp) const {
  apply_axis(f, comp, axis, m, out, ocomp);
}

void DomainGrid::dx(const Field& f, int comp, int i, Field& out, int ocomp) const {
  if (!curvilinear_) {
    if (i == 0) {
      apply_axis(f, comp, 0, 1, out, ocomp);
    } else {
      for (int n = 0; n < nnodes_; ++n) out(n, ocomp) = 0.0;
    }
    return;
  }
  Field tmp(nnodes_, 3);
  for (int a = 0; a < 3; ++a) apply_axis(f, comp, a, 1, tmp, a);
  for (int n = 0; n < nnodes_; ++n) {
    Real s = 0.0;
    for (int a = 0; a < 3; ++a) s += jac_[n][a][i] * tmp(n, a);
    out(n, ocomp) = s;
  }
}

void DomainGrid::dxx(const Field& f, int comp, int i, int j, Field& out, int ocomp) const {
  if (!curvilinear_) {
    if (i == 0 && j == 0) {
      apply_axis(f, comp, 0, 2, out, ocomp);
    } else {
      for (int n = 0; n < nnodes_; ++n) out(n, ocomp) = 0.0;
    }
    return;
  }
  Field d1(nnodes_, 3);
  for (int a = 0; a < 3; ++a) apply_axis(f, comp, a, 1, d1, a);
  // second q-derivatives: same-axis via m=2, mixed by composition
  Field d2(nnodes_, 9);
  Field tmp(nnodes_, 1);
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      if (a == b) {
        apply_axis(f, comp, a, 2, d2, 3 * a + a);
      } else {
        apply_axis(d1, a, b, 1, tmp, 0);
        for (int n = 0; n < nnodes_; ++n) {
          d2(n, 3 * a + b) = tmp(n, 0);
          d2(n, 3 * b + a) = tmp(n, 0);
        }
      }
    }
  }
  for (int n = 0; n < nnodes_; ++n) {
    Real s = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) s += jac_[n][a][i] * jac_[n][b][j] * d2(n, 3 * a + b);
      // chain-rule correction: (d/dx_i J^a_j) d_qa f = J^b_i (d_qb J^a_j) d_qa f
      for (int b = 0; b < 3; ++b) s += jac_[n][b][i] * djac_[n][b][a][j] * d1(n, a);
    }
    out(n, ocomp) = s;
  }
}

Real DomainGrid::integrate(const Field& f, int comp, Region reg) const {
  Real s = 0.0;
  for (int n = 0; n < nnodes_; ++n)
    if (region_[n] == reg) s += wq_[n] * f(n, comp);
  return s;
}

Real DomainGrid::integrate_all(const Field& f, int comp) const {
  Real s = 0.0;
  for (int n = 0; n < nnodes_; ++n) s += wq_[n] * f(n, comp);
  return s;
}

}  // namespace hardphase
