#pragma once

// Closed-form quantities attached to a cubic: discriminant, the degree-9 and
// degree-8 companions, the two cube-root arguments R1/R2 and the resolvent
// scalars o, l_o.
//
// Branch discipline: every radical below is derived from ONE principal
// evaluation S = sqrt(delta_o). In particular sqrt(-delta_o) is taken as
// i*S and sqrt(-3*delta_o) as i*sqrt(3)*S. Taking independent principal
// square roots instead (the literal reading) flips the sign on half the
// domain and breaks the cube identities R1^3 = -A1^3 dl / (64 d_o^3); the
// literal reading stays available behind `printed_branches` for the audit.
//
// All polynomial quantities are evaluated with compensated (double-double)
// arithmetic: their values vanish on interesting loci while their terms stay
// O(scale^k), and downstream radicals amplify absolute evaluation noise.

#include <cmath>

#include "cubix/compensated.hpp"
#include "cubix/complex_branch.hpp"
#include "cubix/cubic.hpp"
#include "cubix/errors.hpp"

namespace cubix {

template <class Real>
struct InvariantOptions {
  Real band_tol = Real(1e-12);
  bool o_negative_sign = false;  // audit-only: flip the sign before c(d-bc)sqrt(-3 delta_o)
  bool printed_branches = false; // audit-only: independent principal sqrt(-delta_o), sqrt(-3 delta_o)
};

template <class Real>
struct CubicInvariants {
  Cx<Real> delta_o{};        // classical discriminant
  Cx<Real> delta_l{};        // weighted degree 12
  Cx<Real> d_o{};            // weighted degree 8, the recurring denominator
  Cx<Real> small_delta_l{};  // delta_l-bar: the cube-root argument of the resolvent
  Cx<Real> a1{}, a2{};       // phase carriers of the two cube-root terms
  Cx<Real> r1{}, r2{};       // the two cube roots of the closed form
  Cx<Real> o{};              // resolvent parameter (positive-sign branch)
  Cx<Real> l_o{};            // centroid of the three resolvent values
  Cx<Real> sqrt_delta_o{};       // cached principal evaluation shared by all fields
  Cx<Real> cbrt_small_delta_l{}; // cached principal cube root; its square is dl^(2/3)
  // o and l_o divide by d_o; they stay zero (and this flag false) when d_o
  // falls inside the zero-band. Every other field is defined unconditionally.
  bool resolvent_defined = false;
};

namespace detail {

template <class Real>
struct InvariantKernels {
  using K = dd::CDD<Real>;
  K b, c, d;
  K b2, b3, b4, c2, c3, d2;
  K bc, bd, cd, bcd;

  explicit InvariantKernels(const CubicPoly<Real>& p)
      : b(dd::cfrom(p.b)), c(dd::cfrom(p.c)), d(dd::cfrom(p.d)) {
    b2 = dd::cmul(b, b);
    b3 = dd::cmul(b2, b);
    b4 = dd::cmul(b2, b2);
    c2 = dd::cmul(c, c);
    c3 = dd::cmul(c2, c);
    d2 = dd::cmul(d, d);
    bc = dd::cmul(b, c);
    bd = dd::cmul(b, d);
    cd = dd::cmul(c, d);
    bcd = dd::cmul(bc, d);
  }

  K delta_o() const {
    using namespace dd;
    // -4 b^3 d + b^2 c^2 + 18 b c d - 4 c^3 - 27 d^2
    K s = cmul(cmul(b3, d), Real(-4));
    s = cadd(s, cmul(b2, c2));
    s = cadd(s, cmul(bcd, Real(18)));
    s = cadd(s, cmul(c3, Real(-4)));
    s = cadd(s, cmul(d2, Real(-27)));
    return s;
  }

  K d_o() const {
    using namespace dd;
    // 4 b^4 c^2 - 4 b^3 c d - 14 b^2 c^3 + b^2 d^2 + 28 b c^2 d + c^4 - 12 c d^2
    K s = cmul(cmul(b4, c2), Real(4));
    s = cadd(s, cmul(cmul(b3, cd), Real(-4)));
    s = cadd(s, cmul(cmul(b2, c3), Real(-14)));
    s = cadd(s, cmul(b2, d2));
    s = cadd(s, cmul(cmul(bc, cd), Real(28)));
    s = cadd(s, cmul(c2, c2));
    s = cadd(s, cmul(cmul(c, d2), Real(-12)));
    return s;
  }

  K delta_l() const {
    using namespace dd;
    // 2 c^3 (8 b^6 + 132 b^3 d + 36 d^2 + c^3 + 33 b^2 c^2 - 66 b c d)
    K inner = cmul(cmul(b3, b3), Real(8));
    inner = cadd(inner, cmul(cmul(b3, d), Real(132)));
    inner = cadd(inner, cmul(d2, Real(36)));
    inner = cadd(inner, c3);
    inner = cadd(inner, cmul(cmul(b2, c2), Real(33)));
    inner = cadd(inner, cmul(bcd, Real(-66)));
    K s = cmul(cmul(c3, inner), Real(2));
    // + 12 b^4 c (d^2 - 7 c^3)
    s = cadd(s, cmul(cmul(cmul(b4, c), csub(d2, cmul(c3, Real(7)))), Real(12)));
    // - b^2 c^2 d (24 b^3 + 291 d)
    s = cadd(s, cneg(cmul(cmul(cmul(b2, c2), d),
                          cadd(cmul(b3, Real(24)), cmul(d, Real(291))))));
    // + d^3 (144 b c - 2 b^3 - 27 d)
    K last = cmul(bc, Real(144));
    last = cadd(last, cmul(b3, Real(-2)));
    last = cadd(last, cmul(d, Real(-27)));
    s = cadd(s, cmul(cmul(d2, d), last));
    return s;
  }

  // (2 b^3 - 9 b c + 27 d) / 27
  K q2() const {
    using namespace dd;
    K s = cmul(b3, Real(2));
    s = cadd(s, cmul(bc, Real(-9)));
    s = cadd(s, cmul(d, Real(27)));
    return cmul(s, dd::ratio<Real>(1, 27));
  }
};

}  // namespace detail

template <class Real>
inline Cx<Real> delta_l_poly(const CubicPoly<Real>& p) {
  return detail::InvariantKernels<Real>(p).delta_l().value();
}

template <class Real>
inline Cx<Real> d_o_poly(const CubicPoly<Real>& p) {
  return detail::InvariantKernels<Real>(p).d_o().value();
}

// Depressed-cubic constant (2b^3 - 9bc + 27d)/27; vanishing together with
// 3c - b^2 characterizes a triple root.
template <class Real>
inline Cx<Real> depressed_q(const CubicPoly<Real>& p) {
  return detail::InvariantKernels<Real>(p).q2().value();
}

template <class Real>
inline CubicInvariants<Real> compute_invariants(const CubicPoly<Real>& p,
                                                InvariantOptions<Real> opt = {}) {
  using namespace dd;
  using K = CDD<Real>;
  const detail::InvariantKernels<Real> k(p);
  const Real ws = weighted_scale(p);
  const DD<Real> s3 = sqrt3_dd<Real>();

  CubicInvariants<Real> inv;
  const K delta_o = k.delta_o();
  const K delta_l = k.delta_l();
  const K d_o = k.d_o();
  inv.delta_o = delta_o.value();
  inv.delta_l = delta_l.value();
  inv.d_o = d_o.value();
  inv.resolvent_defined = std::abs(inv.d_o) > opt.band_tol * pow_int(ws, 6);

  const K S = csqrt_principal(delta_o);
  inv.sqrt_delta_o = S.value();
  const K sqrt_m3do = opt.printed_branches
                          ? cfrom(principal_sqrt(Cx<Real>(-3) * inv.delta_o))
                          : cmul_i(cmul(S, s3));
  const K sqrt_mdo = opt.printed_branches
                         ? cfrom(principal_sqrt(-inv.delta_o))
                         : cmul_i(S);

  // dl-bar = (d - bc) S (4 b^2 c^2 - 4 b c d + 2 c^3 + d^2) + i sqrt(3)/9 delta_l
  K G = cmul(cmul(k.b2, k.c2), Real(4));
  G = cadd(G, cmul(k.bcd, Real(-4)));
  G = cadd(G, cmul(k.c3, Real(2)));
  G = cadd(G, k.d2);
  const K dl = cadd(cmul(cmul(csub(k.d, k.bc), S), G),
                    cmul_i(cmul(cmul(delta_l, s3), dd::ratio<Real>(1, 9))));
  inv.small_delta_l = dl.value();
  inv.cbrt_small_delta_l = principal_cbrt(inv.small_delta_l);

  // a1 = -2 i sqrt(3)/3 (4 b^3 c - 2 d b^2 - 13 b c^2 + 15 d c) + 2 c S
  K a1p = cmul(cmul(k.b3, k.c), Real(4));
  a1p = cadd(a1p, cmul(cmul(k.d, k.b2), Real(-2)));
  a1p = cadd(a1p, cmul(cmul(k.b, k.c2), Real(-13)));
  a1p = cadd(a1p, cmul(k.cd, Real(15)));
  inv.a1 = cadd(cmul_i(cmul(cmul(a1p, s3), dd::ratio<Real>(-2, 3))),
                cmul(cmul(k.c, S), Real(2)))
               .value();

  // a2 = 8 b^5 c^2 - 8 b^4 c d - 40 b^3 c^3 + 2 b^3 d^2 + 116 b^2 c^2 d
  //      + 23 b c^4 - 99 b c d^2 - 21 c^3 d + 27 d^3
  //      - i sqrt(3) (8 b^2 c^2 - 10 b c d + c^3 + 3 d^2) S
  K a2p = cmul(cmul(cmul(k.b4, k.b), k.c2), Real(8));
  a2p = cadd(a2p, cmul(cmul(k.b4, k.cd), Real(-8)));
  a2p = cadd(a2p, cmul(cmul(k.b3, k.c3), Real(-40)));
  a2p = cadd(a2p, cmul(cmul(k.b3, k.d2), Real(2)));
  a2p = cadd(a2p, cmul(cmul(cmul(k.b2, k.c2), k.d), Real(116)));
  a2p = cadd(a2p, cmul(cmul(cmul(k.bc, k.c), k.c2), Real(23)));
  a2p = cadd(a2p, cmul(cmul(k.bc, k.d2), Real(-99)));
  a2p = cadd(a2p, cmul(cmul(k.c3, k.d), Real(-21)));
  a2p = cadd(a2p, cmul(cmul(k.d2, k.d), Real(27)));
  K a2s = cmul(cmul(k.b2, k.c2), Real(8));
  a2s = cadd(a2s, cmul(k.bcd, Real(-10)));
  a2s = cadd(a2s, k.c3);
  a2s = cadd(a2s, cmul(k.d2, Real(3)));
  inv.a2 = csub(a2p, cmul_i(cmul(cmul(a2s, S), s3))).value();

  const K q2 = k.q2();
  const K rterm = cmul(cmul(sqrt_mdo, s3), dd::ratio<Real>(1, 9));
  inv.r1 = principal_cbrt(cadd(rterm, q2).value());
  inv.r2 = principal_cbrt(csub(rterm, q2).value());

  if (inv.resolvent_defined) {
    // o = [b^2 c^3 - c^4 - 3 c d^2 + b^2 d^2 - 2 b^3 c d +- c (d - bc) sqrt(-3 delta_o)] / d_o
    K P = cmul(k.b2, k.c3);
    P = cadd(P, cneg(cmul(k.c2, k.c2)));
    P = cadd(P, cmul(cmul(k.c, k.d2), Real(-3)));
    P = cadd(P, cmul(k.b2, k.d2));
    P = cadd(P, cmul(cmul(k.b3, k.cd), Real(-2)));
    const K Q = cmul(k.c, csub(k.d, k.bc));
    const Real sign = opt.o_negative_sign ? Real(-1) : Real(1);
    inv.o = cadd(P, cmul(cmul(Q, sqrt_m3do), sign)).value() / inv.d_o;

    // l_o = [2 b^4 c d + b^3 c^3 - b^3 d^2 - 5 b^2 c^2 d - 4 b c^4 + 6 b c d^2
    //        + 5 c^3 d + i sqrt(3)/3 c (b^2 c - 2 b d - c^2) S] / d_o
    K L = cmul(cmul(k.b4, k.cd), Real(2));
    L = cadd(L, cmul(k.b3, k.c3));
    L = cadd(L, cneg(cmul(k.b3, k.d2)));
    L = cadd(L, cmul(cmul(cmul(k.b2, k.c2), k.d), Real(-5)));
    L = cadd(L, cmul(cmul(k.bc, k.c3), Real(-4)));
    L = cadd(L, cmul(cmul(k.bc, k.d2), Real(6)));
    L = cadd(L, cmul(cmul(k.c3, k.d), Real(5)));
    K Lt = cmul(k.b2, k.c);
    Lt = cadd(Lt, cmul(k.bd, Real(-2)));
    Lt = cadd(Lt, cneg(k.c2));
    L = cadd(L, cmul_i(cmul(cmul(cmul(cmul(k.c, Lt), S), s3), dd::ratio<Real>(1, 3))));
    inv.l_o = L.value() / inv.d_o;
  }
  return inv;
}

// r_l = l_o - m * 4^(1/3) * c * sqrt(delta_o) * dl^(1/3) / d_o, with the
// cube root shared with compute_invariants (same principal evaluation).
template <class Real>
inline Cx<Real> resolvent_r_l(const CubicInvariants<Real>& inv, const CubicPoly<Real>& p,
                              Cx<Real> m) {
  if (!inv.resolvent_defined)
    throw DegenerateDenominator("d_o inside zero-band: o, l_o and r_l are undefined");
  return inv.l_o - m * cbrt4_v<Real>() / inv.d_o * p.c * inv.sqrt_delta_o *
                       inv.cbrt_small_delta_l;
}

}  // namespace cubix
