//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file field.hpp
//  \brief flat grid-field container: nnodes x ncomp reals, node-major

#ifndef HARDPHASE_FIELD_HPP_
#define HARDPHASE_FIELD_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "types.hpp"

namespace hardphase {

class Field {
 public:
  Field() = default;
  Field(int nnodes, int ncomp) : nn_(nnodes), nc_(ncomp), a_(static_cast<size_t>(nnodes) * ncomp, 0.0) {}

  int nnodes() const { return nn_; }
  int ncomp() const { return nc_; }

  Real& operator()(int n, int c = 0) { return a_[static_cast<size_t>(n) * nc_ + c]; }
  Real operator()(int n, int c = 0) const { return a_[static_cast<size_t>(n) * nc_ + c]; }
  Real* node(int n) { return a_.data() + static_cast<size_t>(n) * nc_; }
  const Real* node(int n) const { return a_.data() + static_cast<size_t>(n) * nc_; }

  Real* data() { return a_.data(); }
  const Real* data() const { return a_.data(); }
  size_t size() const { return a_.size(); }

  void fill(Real v) { for (auto& x : a_) x = v; }
  bool finite() const {
    for (auto x : a_)
      if (!std::isfinite(x)) return false;
    return true;
  }

 private:
  int nn_ = 0, nc_ = 0;
  std::vector<Real> a_;
};

}  // namespace hardphase

#endif  // HARDPHASE_FIELD_HPP_
