#pragma once

// Principal-branch complex radicals with pinned conventions:
//   arg()  in (-pi, pi]
//   sqrt() in (-pi/2, pi/2]
//   cbrt() in (-pi/3, pi/3]
// std::sqrt/std::arg follow C99 signed-zero semantics on the negative real
// axis (arg(-4 - 0i) = -pi), which would put results on the excluded edge.
// Every entry point below first flushes -0 imaginary parts to +0 so the
// closed upper edge of each interval is the one returned.

#include <array>
#include <cmath>
#include <complex>

namespace cubix {

template <class Real>
using Cx = std::complex<Real>;

using Complex = Cx<double>;

template <class Real>
inline Cx<Real> flush_negative_zero(Cx<Real> z) {
  Real re = z.real() == Real(0) ? Real(0) : z.real();
  Real im = z.imag() == Real(0) ? Real(0) : z.imag();
  return {re, im};
}

template <class Real>
inline Real principal_arg(Cx<Real> z) {
  return std::arg(flush_negative_zero(z));
}

template <class Real>
inline Cx<Real> principal_sqrt(Cx<Real> z) {
  return std::sqrt(flush_negative_zero(z));
}

// Magnitude via real cbrt, phase divided by three. Stays exactly real on the
// positive real axis; arg(result) lands in (-pi/3, pi/3].
template <class Real>
inline Cx<Real> principal_cbrt(Cx<Real> z) {
  z = flush_negative_zero(z);
  Real r = std::abs(z);
  if (r == Real(0)) return {Real(0), Real(0)};
  Real mag = std::cbrt(r);
  Real th = std::arg(z) / Real(3);
  return {mag * std::cos(th), mag * std::sin(th)};
}

template <class Real>
inline Real sqrt3_v() {
  return std::sqrt(Real(3));
}

template <class Real>
inline Real cbrt4_v() {
  return std::cbrt(Real(4));
}

// The index set of the uniform formulas: {-1, (1 - i sqrt 3)/2, (1 + i sqrt 3)/2}.
// Each value cubes to -1.
template <class Real>
inline std::array<Cx<Real>, 3> cube_roots_of_minus_one() {
  const Real h = Real(1) / Real(2);
  const Real s = sqrt3_v<Real>() / Real(2);
  return {Cx<Real>(-1, 0), Cx<Real>(h, -s), Cx<Real>(h, s)};
}

template <class Real>
inline Cx<Real> unit_phase(Real theta) {
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace cubix
