#pragma once

// Branch-free closed-form cubic roots and the double-root criterion.
//
// Structural note (reviewed): between compute_invariants and the three root
// values there is no conditional of any kind on the discriminant class. The
// zero-band precondition check below rejects the one degenerate DENOMINATOR
// (|d_o|) before the hot path; it does not inspect the sign or class of
// delta_o. The radicals call through principal_sqrt / principal_cbrt, which
// contain no discriminant-dependent dispatch either. All three discriminant
// classes (positive, negative, complex) flow through the identical
// straight-line sequence below.

#include <array>
#include <cassert>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

#include "cubix/complex_branch.hpp"
#include "cubix/cubic.hpp"
#include "cubix/errors.hpp"
#include "cubix/invariants.hpp"

namespace cubix {

template <class Real>
struct UniformTrace {
  CubicInvariants<Real> inv;
  std::array<Cx<Real>, 3> r_l_values{};
  std::array<Cx<Real>, 3> phase1{};      // unit-modulus factor on r1, per m
  std::array<Cx<Real>, 3> phase2{};      // unit-modulus factor on r2, per m
  std::array<Cx<Real>, 3> raw_roots{};   // rationalized form
  std::array<Cx<Real>, 3> final_roots{}; // phase-corrected form
};

template <class Real>
struct UniformOptions {
  Real band_tol = Real(1e-12);
  InvariantOptions<Real> inv{};
};

template <class Real>
struct UniformSolve {
  RootSet<Real> roots;
  UniformTrace<Real> trace;
};

namespace detail {

// The closed-form roots divide by d_o alone; that is the only genuine
// precondition. (The derivation route through the companion matrix also
// needs d, c and d - bc away from zero, but none of them appears as a
// divisor in the final formulas, which remain valid on those surfaces by
// continuity of the underlying polynomial identities.)
template <class Real>
inline void check_uniform_bands(const CubicPoly<Real>& p, Real tol) {
  const Real ws = weighted_scale(p);
  if (std::abs(d_o_poly(p)) <= tol * pow_int(ws, 6))
    throw DegenerateInput("|d_o| inside zero-band");
}

}  // namespace detail

template <class Real>
inline UniformSolve<Real> uniform_roots(const CubicPoly<Real>& p,
                                        UniformOptions<Real> opt = {}) {
  using C = Cx<Real>;
  detail::check_uniform_bands(p, opt.band_tol);
  opt.inv.band_tol = opt.band_tol;

  UniformTrace<Real> tr;
  tr.inv = compute_invariants(p, opt.inv);
  const CubicInvariants<Real>& inv = tr.inv;
  const C U = inv.cbrt_small_delta_l;
  const C U2 = U * U;  // dl^(2/3) always as the square of dl^(1/3)
  const Real c4 = cbrt4_v<Real>();
  const C shift = p.b / Real(3);

  // ---- hot path: straight-line, no discriminant-class conditionals ----
  const Real th1 = principal_arg(inv.a1 * U) - principal_arg(-inv.d_o * inv.r1);
  const Real th2 = principal_arg(inv.a2 * U2) - principal_arg(inv.d_o * inv.d_o * inv.r2);
  const C ph1 = unit_phase(th1);
  const C ph2 = unit_phase(th2);
  const C inv_do2 = Real(1) / (inv.d_o * inv.d_o);
  const auto ms = cube_roots_of_minus_one<Real>();
  for (int k = 0; k < 3; ++k) {
    const C m = ms[k];
    tr.r_l_values[k] = resolvent_r_l(inv, p, m);
    tr.phase1[k] = m * ph1;
    tr.phase2[k] = m * m * ph2;
    tr.final_roots[k] = c4 / Real(2) * (tr.phase1[k] * inv.r1 + tr.phase2[k] * inv.r2) - shift;
    tr.raw_roots[k] =
        -c4 / Real(8) * (m * inv.d_o * inv.a1 * U - m * m * c4 * inv.a2 * U2) * inv_do2 -
        shift;
  }
  // ---- end hot path ----

#ifndef NDEBUG
  // the audit knobs deliberately break these identities; only assert on the
  // production pairing, and only when a side is above its noise floor (both
  // sides of a cube identity can legitimately collapse to ~0, e.g. on the
  // 3c = b^2 surface where a1 and r1 vanish together)
  if (!opt.inv.printed_branches && !opt.inv.o_negative_sign) {
    const Real ws = weighted_scale(p);
    const C lhs1 = inv.a1 * U, rhs1 = Real(-4) * inv.d_o * inv.r1;
    const C lhs2 = inv.a2 * U2, rhs2 = c4 * c4 * inv.d_o * inv.d_o * inv.r2;
    if (std::abs(rhs1) > Real(1e-8) * pow_int(ws, 9))
      assert(std::abs(lhs1 * lhs1 * lhs1 - rhs1 * rhs1 * rhs1) <=
             Real(1e-6) * std::abs(rhs1 * rhs1 * rhs1));
    if (std::abs(rhs2) > Real(1e-8) * pow_int(ws, 17))
      assert(std::abs(lhs2 * lhs2 * lhs2 - rhs2 * rhs2 * rhs2) <=
             Real(1e-6) * std::abs(rhs2 * rhs2 * rhs2));
    for (int k = 0; k < 3; ++k)
      assert(std::abs(tr.raw_roots[k] - tr.final_roots[k]) <= Real(1e-7) * ws);
  }
#endif

  UniformSolve<Real> out;
  // The rationalized route feeds the returned root set: it never takes the
  // cube root of a difference that can cancel (the phase-corrected form does,
  // inside r1/r2). Both forms are kept in the trace and cross-checked.
  out.roots = make_root_set(p, tr.raw_roots);
  out.trace = std::move(tr);
  return out;
}

// Double-root criterion: the bracketed expression vanishes for the index
// pair (m_i, m_j) sharing the double root.
template <class Real>
struct CriterionResult {
  // pair order: (0,1), (0,2), (1,2) over cube_roots_of_minus_one indices
  std::array<Real, 3> magnitudes{};
  std::optional<std::pair<int, int>> double_pair;
  bool triple_root = false;
  int fired_count = 0;
};

template <class Real>
inline CriterionResult<Real> double_root_criterion(const CubicPoly<Real>& p,
                                                   UniformOptions<Real> opt = {}) {
  using C = Cx<Real>;
  const Real ws = weighted_scale(p);

  CriterionResult<Real> res;
  res.triple_root = std::abs(Real(3) * p.c - p.b * p.b) <= Real(1e-8) * ws * ws &&
                    std::abs(depressed_q(p)) <= Real(1e-8) * pow_int(ws, 3);
  if (res.triple_root) {
    // all three formula roots coincide; every pair fires in the limit, and
    // the expression itself is 0/0 there (d_o vanishes on the triple locus)
    res.fired_count = 3;
    return res;
  }

  detail::check_uniform_bands(p, opt.band_tol);
  opt.inv.band_tol = opt.band_tol;
  const auto inv = compute_invariants(p, opt.inv);
  const C U = inv.cbrt_small_delta_l;
  const Real c4 = cbrt4_v<Real>();
  const auto ms = cube_roots_of_minus_one<Real>();
  static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  int fired = -1;
  for (int k = 0; k < 3; ++k) {
    const C sum_m = ms[pairs[k][0]] + ms[pairs[k][1]];
    const C expr = (-inv.d_o * inv.a1 + sum_m * c4 * inv.a2 * U) * U / (inv.d_o * inv.d_o);
    res.magnitudes[k] = std::abs(expr);
    if (res.magnitudes[k] <= Real(1e-8) * ws) {
      ++res.fired_count;
      fired = k;
    }
  }
  if (res.fired_count > 1) {
    std::ostringstream os;
    os << "criterion fired for " << res.fired_count
       << " pairs on a non-triple cubic; magnitudes " << res.magnitudes[0] << ", "
       << res.magnitudes[1] << ", " << res.magnitudes[2];
    throw AmbiguousCriterion(os.str());
  }
  if (res.fired_count == 1)
    res.double_pair = std::make_pair(pairs[fired][0], pairs[fired][1]);
  return res;
}

}  // namespace cubix
