#pragma once

// Spectrum of a general 3x3 complex matrix through the coefficient chain:
// solve the o-quadratic, form the resolvent set, evaluate the closed-form
// eigenvalue expression. Falls back to the cubic solvers on degenerate input.

#include <array>
#include <cmath>
#include <string>

#include "cubix/cardano.hpp"
#include "cubix/coeff_chain.hpp"
#include "cubix/complex_branch.hpp"
#include "cubix/cubic.hpp"
#include "cubix/errors.hpp"
#include "cubix/matrix3.hpp"
#include "cubix/uniform.hpp"

namespace cubix {

template <class Real>
struct OCandidates {
  std::array<Cx<Real>, 2> o{};
  int count = 0;
};

// Roots of (l1^2 - 6 l3) o^2 + 2 (l1 l2 + 6 l4) o + (l2^2 - 6 l5) = 0,
// larger-magnitude numerator first, companion root from the product.
template <class Real>
inline OCandidates<Real> solve_o(const CoeffChain<Real>& ch, Real band_tol = Real(1e-12)) {
  using C = Cx<Real>;
  const C A = ch.l1 * ch.l1 - Real(6) * ch.l3;
  const C B = Real(2) * (ch.l1 * ch.l2 + Real(6) * ch.l4);
  const C Cc = ch.l2 * ch.l2 - Real(6) * ch.l5;
  const Real majA = std::abs(ch.l1) * std::abs(ch.l1) + Real(6) * std::abs(ch.l3) + Real(1);
  const Real majB = Real(2) * (std::abs(ch.l1) * std::abs(ch.l2) + Real(6) * std::abs(ch.l4)) + Real(1);

  OCandidates<Real> out;
  if (std::abs(A) <= band_tol * majA) {
    if (std::abs(B) <= band_tol * majB)
      throw DegenerateQuadratic("o-equation: leading and linear coefficients both vanish");
    out.o[0] = -Cc / B;  // linear case: one root
    out.count = 1;
    return out;
  }
  const C disc = principal_sqrt(B * B - Real(4) * A * Cc);
  const C t = std::abs(-B - disc) >= std::abs(-B + disc) ? -B - disc : -B + disc;
  if (std::abs(t) == Real(0)) {
    out.o[0] = out.o[1] = C(0);
  } else {
    out.o[0] = t / (Real(2) * A);
    out.o[1] = Real(2) * Cc / t;
  }
  out.count = 2;
  return out;
}

template <class Real>
struct ResolventSet {
  Cx<Real> s_l{};
  std::array<Cx<Real>, 3> r_l{};
};

template <class Real>
inline ResolventSet<Real> resolvent_l(const CoeffChain<Real>& ch, Cx<Real> o) {
  using C = Cx<Real>;
  const C w = (ch.l1 * o + ch.l2) / Real(6);
  ResolventSet<Real> rs;
  rs.s_l = principal_cbrt(
      w * w * w - (ch.l6 * o * o * o + ch.l7 * o * o + ch.l8 * o - ch.l9) / Real(2));
  const auto ms = cube_roots_of_minus_one<Real>();
  for (int k = 0; k < 3; ++k) rs.r_l[k] = w + ms[k] * rs.s_l;
  return rs;
}

template <class Real>
struct EigenTrace {
  std::array<Cx<Real>, 2> o_candidates{};
  Cx<Real> chosen_o{};
  Cx<Real> s_l{};
  std::array<Cx<Real>, 3> r_l_values{};
  std::array<Cx<Real>, 3> b_values{};
  std::array<Cx<Real>, 3> sqrt_delta_p_values{};
  std::array<Cx<Real>, 3> eigenvalues{};
  std::string fallback;      // empty: closed form; else "uniform" / "cardano"
  int permutation_index = 0; // which similarity permutation the chain used
  Real cor_disagreement = 0; // audit mode: max |Cor 2.8 - Cor 2.9| eigenvalue
};

template <class Real>
struct SpectrumOptions {
  Cx<Real> a{};  // free parameter; final formulas are a-free, 0 in production
  Real band_tol = Real(1e-12);
  ChainOptions<Real> chain{};
  bool audit_mode = false;  // also evaluate the alternate spectrum form and compare
  Real accept_tol = Real(1e-6);
};

namespace detail {

// Cor 2.8 style eigenvalue for one r_l; false when a denominator degenerates.
template <class Real>
inline bool eigen_from_rl(const CoeffChain<Real>& ch, Cx<Real> o, Cx<Real> rl, Real band_tol,
                          Cx<Real>& p_out, Cx<Real>& b_out) {
  using C = Cx<Real>;
  const C N = ch.d3 * rl * rl + ch.n10 * (Real(1) - o) * rl -
              ch.n9 * o * (Real(1) - o) - ch.d3 * ch.c2 * o * o;
  const C D = (Real(1) - o) * (ch.n10 + ch.n1 * o) - Real(2) * ch.d3 * ch.c1 * o * o +
              ch.d3 * (Real(1) + o) * rl;
  const Real majD = std::abs(ch.n10) + std::abs(ch.n1 * o) + std::abs(ch.d3) * (1 + std::abs(o)) * (1 + std::abs(rl)) +
                    Real(2) * std::abs(ch.d3 * ch.c1 * o * o) + Real(1);
  if (std::abs(D) <= band_tol * majD) return false;
  b_out = ch.a - N / D;
  p_out = ((Real(1) + Real(1) / o) * N / D + Real(2) * ch.m1 - ch.c1 - rl / o) / Real(2);
  return true;
}

// Cor 2.9 style (the rationalized alternate), used by the audit.
template <class Real>
inline bool eigen_from_rl_alt(const CoeffChain<Real>& ch, Cx<Real> o, Cx<Real> rl,
                              Real band_tol, Cx<Real>& p_out, Cx<Real>& b_out) {
  using C = Cx<Real>;
  const C N = ch.n6 * o * o - ch.n5 * o + (ch.r6 - ch.n7 * o) * rl;
  const C D = (ch.n4 - ch.n7) * o + ch.r2 * o * o + ch.r6 + Real(2) * o * rl;
  const Real majD = std::abs((ch.n4 - ch.n7) * o) + std::abs(ch.r2 * o * o) +
                    std::abs(ch.r6) + Real(2) * std::abs(o * rl) + Real(1);
  if (std::abs(D) <= band_tol * majD) return false;
  b_out = ch.a - N / D;
  p_out = ((Real(1) + Real(1) / o) * N / D + Real(2) * ch.m1 - ch.c1 - rl / o) / Real(2);
  return true;
}

}  // namespace detail

template <class Real>
struct SpectrumResult {
  std::array<Cx<Real>, 3> eigenvalues{};
  EigenTrace<Real> trace;
};

template <class Real>
inline SpectrumResult<Real> spectrum(const Matrix3<Real>& M, SpectrumOptions<Real> opt = {}) {
  using C = Cx<Real>;
  const CubicPoly<Real> cp = char_poly(M);
  SpectrumResult<Real> out;

  for (int pi = 0; pi < 6; ++pi) {
    const Matrix3<Real> Mp = pi == 0 ? M : permute_similarity(M, kPermutations3[pi]);
    CoeffChain<Real> ch;
    try {
      auto copt = opt.chain;
      copt.band_tol = opt.band_tol;
      ch = coeff_chain(Mp, opt.a, copt);
    } catch (const DegenerateMatrix&) {
      continue;  // similarity leaves the spectrum alone; try the next layout
    }
    OCandidates<Real> oc;
    try {
      oc = solve_o(ch, opt.band_tol);
    } catch (const DegenerateQuadratic&) {
      continue;
    }
    for (int ci = 0; ci < oc.count; ++ci) {
      const C o = oc.o[ci];
      if (std::abs(o) <= opt.band_tol) continue;
      if (std::abs(Real(1) - o * o) <= opt.band_tol) continue;
      const auto rs = resolvent_l(ch, o);
      EigenTrace<Real> tr;
      tr.o_candidates = oc.o;
      tr.chosen_o = o;
      tr.s_l = rs.s_l;
      tr.r_l_values = rs.r_l;
      tr.permutation_index = pi;
      bool ok = true;
      for (int k = 0; k < 3 && ok; ++k) {
        C p, b;
        ok = detail::eigen_from_rl(ch, o, rs.r_l[k], opt.band_tol, p, b);
        if (!ok) break;
        tr.eigenvalues[k] = p;
        tr.b_values[k] = b;
        tr.sqrt_delta_p_values[k] = -(b + (rs.r_l[k] - ch.a)) / o;
        if (scaled_residual(cp, p) > opt.accept_tol) ok = false;
      }
      if (!ok) continue;
      if (opt.audit_mode) {
        Real dis = 0;
        for (int k = 0; k < 3; ++k) {
          C p2, b2;
          if (detail::eigen_from_rl_alt(ch, o, rs.r_l[k], opt.band_tol, p2, b2))
            dis = std::max(dis, std::abs(p2 - tr.eigenvalues[k]));
        }
        tr.cor_disagreement = dis;
      }
      out.eigenvalues = tr.eigenvalues;
      out.trace = tr;
      return out;
    }
  }

  // every chain/candidate degenerated: solve the characteristic cubic instead
  EigenTrace<Real> tr;
  try {
    auto us = uniform_roots(cp, UniformOptions<Real>{opt.band_tol});
    tr.fallback = "uniform";
    out.eigenvalues = us.roots.roots;
  } catch (const DegenerateInput&) {
    auto rs = cardano_reference(cp);
    tr.fallback = "cardano";
    out.eigenvalues = rs.roots;
  }
  tr.eigenvalues = out.eigenvalues;
  out.trace = tr;
  return out;
}

}  // namespace cubix
