//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file stencil.hpp
//  \brief finite-difference weight generation (Fornberg) and Gregory quadrature weights

#ifndef HARDPHASE_STENCIL_HPP_
#define HARDPHASE_STENCIL_HPP_

#include <vector>

#include "types.hpp"

namespace hardphase {

//----------------------------------------------------------------------------------------
//! \fn fd_weights
//  \brief weights for the m-th derivative at z from samples at nodes x[0..n-1]

inline std::vector<Real> fd_weights(Real z, const std::vector<Real>& x, int m) {
  const int n = static_cast<int>(x.size());
  std::vector<Real> c(static_cast<size_t>(n) * (m + 1), 0.0);
  auto C = [&](int i, int j) -> Real& { return c[static_cast<size_t>(i) * (m + 1) + j]; };
  Real c1 = 1.0;
  Real c4 = x[0] - z;
  C(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = (i < m) ? i : m;
    Real c2 = 1.0;
    Real c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      Real c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
        C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
      C(j, 0) = c4 * C(j, 0) / c3;
    }
    c1 = c2;
  }
  std::vector<Real> w(n);
  for (int i = 0; i < n; ++i) w[i] = C(i, m);
  return w;
}

//! one row of a 1D stencil table: out = sum_k w[k] * f[start + k]
struct StencilRow {
  int start = 0;
  std::vector<Real> w;
};

//----------------------------------------------------------------------------------------
//! \fn stencil_table
//  \brief per-index rows for the m-th derivative on a uniform line of n nodes, spacing h,
//         interior-centered of order p, one-sided (same order) near the edges

inline std::vector<StencilRow> stencil_table(int n, Real h, int p, int m, bool periodic) {
  const int width = p + m;               // points for order-p m-th derivative, one-sided
  const int cw = (m == 1) ? p + 1 : p + 1;  // centered width (odd), order p for even p
  std::vector<StencilRow> rows(n);
  const int ch = cw / 2;
  for (int i = 0; i < n; ++i) {
    StencilRow row;
    int w0;
    int nw;
    if (periodic) {
      w0 = i - ch;
      nw = cw;
    } else if (i - ch >= 0 && i + ch < n) {
      w0 = i - ch;
      nw = cw;
    } else {
      nw = (width > n) ? n : width;
      w0 = (i - ch < 0) ? 0 : n - nw;
    }
    std::vector<Real> x(nw);
    for (int k = 0; k < nw; ++k) x[k] = (w0 + k - i) * h;
    row.start = w0;  // may be negative/overflow for periodic; caller wraps
    row.w = fd_weights(0.0, x, m);
    rows[i] = row;
  }
  return rows;
}

//----------------------------------------------------------------------------------------
//! \fn gregory_weights
//  \brief composite quadrature weights of order 4 on a uniform line (endpoint-corrected
//         trapezoid); falls back to trapezoid for very short lines

inline std::vector<Real> gregory_weights(int n, Real h, bool periodic) {
  std::vector<Real> w(n, h);
  if (periodic) return w;
  if (n < 8) {
    w[0] = w[n - 1] = 0.5 * h;
    return w;
  }
  static const Real e[4] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0, 1.0};
  for (int k = 0; k < 4; ++k) {
    w[k] = e[k] * h;
    w[n - 1 - k] = e[k] * h;
  }
  return w;
}

}  // namespace hardphase

#endif  // HARDPHASE_STENCIL_HPP_
