#pragma once

// Durand-Kerner simultaneous iteration: the independent ground-truth root
// oracle. Kept free of any closed-form machinery so it can audit the
// formula-based solvers.

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "cubix/complex_branch.hpp"
#include "cubix/cubic.hpp"
#include "cubix/errors.hpp"

namespace cubix {

template <class Real>
struct OracleOptions {
  int max_iters = 200;
  Real update_tol = Real(1e-14);
  bool retry_on_stall = true;
};

namespace detail {

template <class Real>
inline Real residual_majorant(const CubicPoly<Real>& p, Cx<Real> z) {
  Real az = std::abs(z);
  return az * az * az + std::abs(p.b) * az * az + std::abs(p.c) * az + std::abs(p.d);
}

// One Durand-Kerner run from the given starts. Returns true on convergence.
template <class Real>
inline bool dk_sweeps(const CubicPoly<Real>& p, std::array<Cx<Real>, 3>& z,
                      const OracleOptions<Real>& opt, std::vector<double>& trace) {
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int it = 0; it < opt.max_iters; ++it) {
    Real max_upd = 0;
    std::array<Real, 3> resid{};
    for (int i = 0; i < 3; ++i) {
      Cx<Real> denom(1);
      for (int j = 0; j < 3; ++j)
        if (j != i) denom *= z[i] - z[j];
      if (std::abs(denom) == Real(0)) {
        z[i] += Cx<Real>(Real(1e-6), Real(1e-6)) * std::max(Real(1), std::abs(z[i]));
        denom = Cx<Real>(Real(1));
      }
      const Cx<Real> pv = eval_poly(p, z[i]);
      resid[i] = std::abs(pv);
      const Cx<Real> step = pv / denom;
      z[i] -= step;
      max_upd = std::max(max_upd, std::abs(step));
    }
    trace.push_back(static_cast<double>(max_upd));
    Real zmax = std::max({Real(1), std::abs(z[0]), std::abs(z[1]), std::abs(z[2])});
    if (max_upd < opt.update_tol * zmax) return true;
    // roundoff plateau: residuals at the backward-stable floor, nothing left to gain
    bool floor = true;
    for (int i = 0; i < 3; ++i)
      floor = floor && resid[i] <= Real(16) * eps * residual_majorant(p, z[i]);
    if (floor) return true;
  }
  return false;
}

}  // namespace detail

// Standard non-symmetric starts on a circle whose radius comes from the
// coefficient magnitudes.
template <class Real>
inline std::array<Cx<Real>, 3> oracle_starts(const CubicPoly<Real>& p, Real rot = Real(0),
                                             Real radius_factor = Real(1)) {
  const Real R = (Real(1) + weighted_scale(p)) * radius_factor;
  const Cx<Real> u(Real(0.4), Real(0.9));
  std::array<Cx<Real>, 3> z;
  Cx<Real> w = u;
  for (int k = 0; k < 3; ++k) {
    z[k] = R * (w / std::abs(w)) * unit_phase(rot);
    w *= u;
  }
  return z;
}

template <class Real>
inline RootSet<Real> oracle_roots(const CubicPoly<Real>& p, OracleOptions<Real> opt = {}) {
  std::vector<double> trace;
  auto z = oracle_starts(p, Real(0));
  if (detail::dk_sweeps(p, z, opt, trace)) return make_root_set(p, z);
  if (opt.retry_on_stall) {
    trace.clear();
    z = oracle_starts(p, Real(0.7), Real(1.3));
    if (detail::dk_sweeps(p, z, opt, trace)) return make_root_set(p, z);
  }
  throw NonConvergence("simultaneous iteration stalled after " +
                           std::to_string(opt.max_iters) + " sweeps",
                       trace);
}

}  // namespace cubix
