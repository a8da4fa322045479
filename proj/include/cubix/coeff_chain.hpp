#pragma once

// The full coefficient chain of the change-of-variable pipeline: c, e, n, d,
// f, r and l coefficients, all explicit functions of the matrix entries and
// the free parameter a.
//
// FormulaForm::corrected is the production path. Five printed coefficients
// (e2, n1, n3, n8, n4) and one l-coefficient (l3) fail the numeric identity
// audit as published; the corrected forms below were re-derived from the
// construction and are regression-tested against the audit. The published
// forms stay available behind FormulaForm::printed so the audit can
// demonstrate the failures. See docs/ERRATA.md.

#include <cmath>

#include "cubix/complex_branch.hpp"
#include "cubix/errors.hpp"
#include "cubix/matrix3.hpp"

namespace cubix {

enum class FormulaForm { corrected, printed };

template <class Real>
struct ChainOptions {
  Real band_tol = Real(1e-12);
  FormulaForm form = FormulaForm::corrected;
  bool inject_e2_sign_flip = false;  // audit sanity knob: detectable typo
};

template <class Real>
struct CoeffChain {
  Cx<Real> a{};   // the free parameter
  Cx<Real> m1{};  // kept for the spectrum formula (2 m1 - c1 term)
  Cx<Real> c1{}, c2{};
  Cx<Real> e1{}, e2{}, e3{}, e4{};
  Cx<Real> d1{}, d2{}, d3{}, d4{};
  Cx<Real> f1{}, f2{}, f3{}, f4{};
  Cx<Real> n1{}, n2{}, n3{}, n4{}, n5{}, n6{}, n7{}, n8{}, n9{}, n10{};
  Cx<Real> r1{}, r2{}, r3{}, r4{}, r5{}, r6{};
  Cx<Real> l1{}, l2{}, l3{}, l4{}, l5{}, l6{}, l7{}, l8{}, l9{};
  Cx<Real> b_l{}, c_l{}, d_l{};  // l-cubic coefficients, filled per chosen o
};

template <class Real>
struct LCubic {
  Cx<Real> b_l{}, c_l{}, d_l{};
};

// Coefficients of 2 l^3 + c_l l^2 + b_l l + d_l = 0 for a given o.
template <class Real>
inline LCubic<Real> l_cubic_coeffs(const CoeffChain<Real>& ch, Cx<Real> o) {
  const Cx<Real> a = ch.a;
  LCubic<Real> lc;
  lc.b_l = ch.l3 * o * o - Real(2) * (ch.l1 * a + ch.l4) * o + Real(6) * a * a -
           Real(2) * ch.l2 * a + ch.l5;
  lc.c_l = -ch.l1 * o + Real(6) * a - ch.l2;
  lc.d_l = -ch.l6 * o * o * o + (ch.l3 * a - ch.l7) * o * o -
           (ch.l1 * a * a + Real(2) * ch.l4 * a + ch.l8) * o + Real(2) * a * a * a -
           ch.l2 * a * a + ch.l5 * a + ch.l9;
  return lc;
}

template <class Real>
inline void fill_l_cubic(CoeffChain<Real>& ch, Cx<Real> o) {
  const auto lc = l_cubic_coeffs(ch, o);
  ch.b_l = lc.b_l;
  ch.c_l = lc.c_l;
  ch.d_l = lc.d_l;
}

template <class Real>
inline CoeffChain<Real> coeff_chain(const Matrix3<Real>& M, Cx<Real> a,
                                    ChainOptions<Real> opt = {}) {
  using C = Cx<Real>;
  const C m1 = M.m[0], m2 = M.m[1], m3 = M.m[2];
  const C m4 = M.m[3], m5 = M.m[4], m6 = M.m[5];
  const C m7 = M.m[6], m8 = M.m[7], m9 = M.m[8];
  const Real ms = matrix_scale(M);
  const bool printed = opt.form == FormulaForm::printed;

  if (std::abs(m2) <= opt.band_tol * ms)
    throw DegenerateMatrix("divisor m2 inside zero-band");

  const C tr = trace(M);
  const C tr2 = trace_sq(M);
  const C dt = det(M);
  const C pw = tr * tr - tr2;  // Tr(M)^2 - Tr(M^2)

  CoeffChain<Real> ch;
  ch.a = a;
  ch.m1 = m1;
  ch.c1 = m1 - m5 - m3 * m8 / m2;
  ch.c2 = ch.c1 * ch.c1 + Real(4) * (m2 * m4 + m3 * m7);
  const C c1 = ch.c1, c2 = ch.c2;

  ch.e1 = Real(1.5) * (m1 - c1) - tr / Real(2);
  // printed: (3/8)(c2 - c1)^2; corrected: (3/8)(c2 - c1^2)
  C e2_term = printed ? Real(0.375) * (c2 - c1) * (c2 - c1)
                      : Real(0.375) * (c2 - c1 * c1);
  if (opt.inject_e2_sign_flip) e2_term = -e2_term;
  ch.e2 = Real(1.5) * (m1 - c1) * (m1 - c1) + e2_term - (m1 - c1) * tr + pw / Real(4);
  const C g = Real(2) * m1 - c1;
  ch.e3 = (g * g * g + Real(3) * g * c2) / Real(8) - (g * g + c2) * tr / Real(4) +
          g * pw / Real(4) - dt;
  ch.e4 = (Real(3) * g * g + c2) / Real(8) - g * tr / Real(2) + pw / Real(4);

  ch.d3 = m2 * m4 + m3 * m7;
  if (std::abs(ch.d3) <= opt.band_tol * ms * ms)
    throw DegenerateMatrix("divisor d3 = m2 m4 + m3 m7 inside zero-band");
  ch.f3 = (m5 - m1) * m3 * m7 + (m9 - m1) * m2 * m4 - m2 * m6 * m7 - m3 * m4 * m8;
  if (std::abs(ch.f3) <= opt.band_tol * ms * ms * ms)
    throw DegenerateMatrix("divisor f3 inside zero-band");
  const C d3 = ch.d3, f3 = ch.f3;
  const C e1 = ch.e1, e2 = ch.e2, e3 = ch.e3, e4 = ch.e4;

  // printed: c1 c2/2 + c1 e2 + c2 c1 - ...; corrected: c2 e1 in place of c2 c1
  ch.n1 = printed ? c1 * c2 / Real(2) + c1 * e2 + c2 * c1 - Real(2) * c1 * e4 - e3
                  : c1 * c2 / Real(2) + c1 * e2 + c2 * e1 - Real(2) * c1 * e4 - e3;
  ch.n9 = c1 * e3 + c2 * e4;
  ch.n10 = e3 + c1 * e4;
  ch.n2 = c2 * d3 - Real(2) * c1 * c1 * e4 - Real(2) * c1 * e3 - Real(2) * d3 * e2;
  // printed: c1 e2 e4; corrected: c1 c2 e4
  ch.n3 = printed ? c2 * e3 - Real(2) * d3 * e3 + c1 * e2 * e4
                  : c2 * e3 - Real(2) * d3 * e3 + c1 * c2 * e4;
  // printed: e2 e4; corrected: c2 e4 (i.e. n8 = n9 - 2 d3 e4)
  ch.n8 = printed ? c1 * e3 + e2 * e4 - Real(2) * d3 * e4
                  : c1 * e3 + c2 * e4 - Real(2) * d3 * e4;
  // printed: n1/d3 + n2/d3; corrected: n1/d3 + n2/f3
  ch.n4 = printed ? ch.n1 / d3 + ch.n2 / d3 : ch.n1 / d3 + ch.n2 / f3;
  ch.n5 = ch.n9 / d3 + ch.n3 / f3;
  ch.n6 = ch.n9 / d3 - ch.n3 / f3;
  ch.n7 = ch.n10 / d3 - (ch.n9 - Real(2) * d3 * e4) / f3;

  ch.d1 = d3 * a * a + ch.n1 * a + ch.n9;
  ch.d2 = Real(-2) * d3 * a - ch.n1;
  ch.d4 = d3 * a + ch.n10;
  ch.f1 = f3 * a * a + ch.n2 * a + ch.n3;
  ch.f2 = Real(-2) * f3 * a - ch.n2;
  ch.f4 = -f3 * a + ch.n8;

  ch.r2 = -ch.n1 / d3 + ch.n2 / f3;
  ch.r6 = ch.n10 / d3 + ch.n8 / f3;
  ch.r1 = -ch.r2 * a + ch.n6;
  ch.r3 = Real(2) * a + ch.n7;
  ch.r4 = Real(2) * a * a + ch.n4 * a + ch.n5;
  ch.r5 = Real(-4) * a - ch.n4;

  const C n1 = ch.n1, n4 = ch.n4, n5 = ch.n5, n7 = ch.n7, n9 = ch.n9, n10 = ch.n10;
  const C r6 = ch.r6;
  ch.l1 = Real(2) * n1 / d3 - n4 + r6;
  ch.l2 = r6 - n4 - Real(2) * n10 / d3;
  // printed: +2 c1 r6; corrected: -2 c1 n7
  ch.l3 = printed
              ? n5 - Real(2) * c2 + Real(2) * c1 * r6 + (r6 * n1 - n4 * n10) / d3
              : n5 - Real(2) * c2 - Real(2) * c1 * n7 + (r6 * n1 - n4 * n10) / d3;
  ch.l4 = Real(2) * n9 / d3 - n5 - c1 * r6;
  ch.l5 = n5 + (n4 * n10 - r6 * n1) / d3;
  ch.l6 = Real(2) * c1 * n5 + c2 * n4 + (n1 * (n5 - Real(2) * c2) - (Real(4) * c1 + n4) * n9) / d3;
  ch.l7 = Real(2) * c1 * n5 + c2 * (n4 + r6) + ((n5 - Real(2) * c2) * n10 - r6 * n9) / d3;
  ch.l8 = c2 * r6 + (n4 * n9 - n1 * n5) / d3;
  ch.l9 = (n5 * n10 - r6 * n9) / d3;
  return ch;
}

// Delta_p as a function of b-tilde for this chain.
template <class Real>
inline Cx<Real> delta_p(const CoeffChain<Real>& ch, Cx<Real> bt) {
  return bt * bt + Real(2) * (ch.c1 - ch.a) * bt + ch.a * ch.a - Real(2) * ch.c1 * ch.a +
         ch.c2;
}

}  // namespace cubix
