//========================================================================================
// hardphase — free-boundary relativistic fluid evolution in a comoving frame
// Licensed under the 3-clause BSD License, see LICENSE file for details
//========================================================================================
//! \file types.hpp
//  \brief core scalar/tensor aliases, the frame signature, and error types

#ifndef HARDPHASE_TYPES_HPP_
#define HARDPHASE_TYPES_HPP_

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hardphase {

using Real = double;

template <class S> using V3 = std::array<S, 3>;
template <class S> using V4 = std::array<S, 4>;
template <class S> using M3 = std::array<std::array<S, 3>, 3>;
template <class S> using M4 = std::array<std::array<S, 4>, 4>;
// connection coefficients Gamma_{IJ}^K, flat [I][J][K]
template <class S> using C4 = std::array<S, 64>;

using Vec3 = V3<Real>;
using Vec4 = V4<Real>;
using Mat3 = M3<Real>;
using Mat4 = M4<Real>;
using Conn = C4<Real>;

inline constexpr int conn_idx(int i, int j, int k) { return (i * 4 + j) * 4 + k; }

//! frame signature: g(e_I, e_I) = eps_I with eps_0 = -1
struct Signature {
  static constexpr std::array<int, 4> eps = {-1, 1, 1, 1};
  static constexpr Real minkowski(int i, int j) { return (i == j) ? Real(eps[i]) : 0.0; }
};
inline constexpr Real sgn(int i) { return Real(Signature::eps[i]); }

// antisymmetric index pairs (I<J) used for two-form / curvature storage
inline constexpr int kPairI[6] = {0, 0, 0, 1, 1, 2};
inline constexpr int kPairJ[6] = {1, 2, 3, 2, 3, 3};
inline constexpr int kPairIdx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
inline constexpr int kPairSgn[4][4] = {{0, 1, 1, 1}, {-1, 0, 1, 1}, {-1, -1, 0, 1}, {-1, -1, -1, 0}};

//----------------------------------------------------------------------------------------
// error types (fatal diagnostics; never silently clamp)

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define HARDPHASE_ERROR_TYPE(Name)                                 \
  struct Name : Error {                                            \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

HARDPHASE_ERROR_TYPE(DegenerateFrame);
HARDPHASE_ERROR_TYPE(DegenerateMetric);
HARDPHASE_ERROR_TYPE(DegenerateProjection);
HARDPHASE_ERROR_TYPE(NonpositiveTheta0);
HARDPHASE_ERROR_TYPE(TaylorViolation);
HARDPHASE_ERROR_TYPE(HyperbolicityLoss);
HARDPHASE_ERROR_TYPE(CFLViolation);
HARDPHASE_ERROR_TYPE(NonfiniteState);
HARDPHASE_ERROR_TYPE(SpacelikeVelocity);
HARDPHASE_ERROR_TYPE(StencilOutOfDomain);
HARDPHASE_ERROR_TYPE(DegenerateTimeCoefficient);
HARDPHASE_ERROR_TYPE(OrderUnavailable);
HARDPHASE_ERROR_TYPE(NoConvergence);
HARDPHASE_ERROR_TYPE(IOError);
HARDPHASE_ERROR_TYPE(ConfigError);

#undef HARDPHASE_ERROR_TYPE

//! numerical floors and thresholds (far above round-off, far below physical scales)
struct Thresholds {
  Real frame_det = 1e-8;       // |det g^{-1}| floor for metric inversion
  Real gram_det = 1e-8;        // Gram determinant floor in orthonormalizations
  Real theta0 = 1e-6;          // \hat Theta^0 floor
  Real division_floor = 1e-8;  // floors for sigma^2, sqrt(sigma^2) divisions
  Real kappa_min = 0.1;        // hyperbolicity floor for the checked time matrix
  Real c0 = 0.1;               // Taylor sign constant (config input)
  Real cfl_limit = 0.5;
};

}  // namespace hardphase

#endif  // HARDPHASE_TYPES_HPP_
