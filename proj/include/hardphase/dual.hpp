//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file dual.hpp
//  \brief forward-mode dual number; used to push exact time derivatives through the
//         pointwise algebraic closures (tetrads, Gram-Schmidt, curvature recovery)

#ifndef HARDPHASE_DUAL_HPP_
#define HARDPHASE_DUAL_HPP_

#include <cmath>

namespace hardphase {

struct Dual {
  double v = 0.0;  // value
  double d = 0.0;  // derivative seed

  Dual() = default;
  Dual(double value) : v(value), d(0.0) {}  // NOLINT(google-explicit-constructor)
  Dual(double value, double deriv) : v(value), d(deriv) {}

  Dual operator-() const { return {-v, -d}; }
  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
};

inline Dual operator+(Dual a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(const Dual& a, const Dual& b) {
  double inv = 1.0 / b.v;
  return {a.v * inv, (a.d - a.v * b.d * inv) * inv};
}
inline bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
inline bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }

inline double value(double x) { return x; }
inline double value(const Dual& x) { return x.v; }

inline double sqrt_s(double x) { return std::sqrt(x); }
inline Dual sqrt_s(const Dual& x) {
  double r = std::sqrt(x.v);
  return {r, 0.5 * x.d / r};
}
inline double abs_s(double x) { return std::abs(x); }
inline Dual abs_s(const Dual& x) { return (x.v < 0.0) ? Dual{-x.v, -x.d} : x; }

}  // namespace hardphase

#endif  // HARDPHASE_DUAL_HPP_
