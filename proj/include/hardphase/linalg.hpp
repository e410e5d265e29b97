//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file linalg.hpp
//  \brief small fixed-size dense kernels: determinants, inverses, symmetric eigensolve

#ifndef HARDPHASE_LINALG_HPP_
#define HARDPHASE_LINALG_HPP_

#include <algorithm>
#include <cmath>

#include "types.hpp"

namespace hardphase {

template <class S>
S det3(const M3<S>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <class S>
M3<S> inverse3(const M3<S>& m, const S& det) {
  M3<S> inv;
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

template <class S>
S det4(const M4<S>& m) {
  S d(0.0);
  // cofactor expansion along the first row
  for (int j = 0; j < 4; ++j) {
    M3<S> sub;
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int c = 0; c < 4; ++c) {
        if (c == j) continue;
        sub[r - 1][cc++] = m[r][c];
      }
    }
    S cof = det3(sub);
    d = d + ((j % 2 == 0) ? m[0][j] * cof : S(0.0) - m[0][j] * cof);
  }
  return d;
}

template <class S>
M4<S> inverse4(const M4<S>& m, const S& det) {
  M4<S> inv;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      M3<S> sub;
      int rr = 0;
      for (int r = 0; r < 4; ++r) {
        if (r == i) continue;
        int cc = 0;
        for (int c = 0; c < 4; ++c) {
          if (c == j) continue;
          sub[rr][cc++] = m[r][c];
        }
        ++rr;
      }
      S cof = det3(sub);
      if ((i + j) % 2 == 1) cof = S(0.0) - cof;
      inv[j][i] = cof / det;
    }
  }
  return inv;
}

//----------------------------------------------------------------------------------------
//! \fn sym_eigenvalues
//  \brief eigenvalues of a symmetric NxN matrix (N<=6) by cyclic Jacobi rotations

template <int N>
std::array<Real, N> sym_eigenvalues(std::array<std::array<Real, N>, N> a) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    Real off = 0.0;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (int p = 0; p < N; ++p) {
      for (int q = p + 1; q < N; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        Real theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        Real t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        Real c = 1.0 / std::sqrt(t * t + 1.0);
        Real s = t * c;
        for (int k = 0; k < N; ++k) {
          Real akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < N; ++k) {
          Real apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::array<Real, N> ev;
  for (int i = 0; i < N; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

//----------------------------------------------------------------------------------------
//! \fn solve_spd6
//  \brief solve A x = b for symmetric positive definite 6x6 A by Cholesky

inline std::array<Real, 6> solve_spd6(const std::array<std::array<Real, 6>, 6>& a,
                                      const std::array<Real, 6>& b) {
  std::array<std::array<Real, 6>, 6> L{};
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j <= i; ++j) {
      Real s = a[i][j];
      for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
      if (i == j) {
        if (s <= 0.0) throw HyperbolicityLoss("time matrix not positive definite");
        L[i][i] = std::sqrt(s);
      } else {
        L[i][j] = s / L[j][j];
      }
    }
  }
  std::array<Real, 6> y{}, x{};
  for (int i = 0; i < 6; ++i) {
    Real s = b[i];
    for (int k = 0; k < i; ++k) s -= L[i][k] * y[k];
    y[i] = s / L[i][i];
  }
  for (int i = 5; i >= 0; --i) {
    Real s = y[i];
    for (int k = i + 1; k < 6; ++k) s -= L[k][i] * x[k];
    x[i] = s / L[i][i];
  }
  return x;
}

//! solve a general small linear system in place (partial pivoting); n <= 4 uses
inline void solve_dense(int n, Real* a /*n*n row-major*/, Real* b) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-300) throw DegenerateFrame("singular small system");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    Real d = a[col * n + col];
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Real f = a[r * n + col] / d;
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (int i = 0; i < n; ++i) b[i] /= a[i * n + i];
}

}  // namespace hardphase

#endif  // HARDPHASE_LINALG_HPP_
