#pragma once

// Error-free transformations and a small double-double layer for evaluating
// the invariant polynomials. The closed-form roots divide by d_o and take
// sqrt(delta_o); near a multiple root delta_o -> 0 while its terms stay
// O(scale^6), so naive evaluation noise (eps * term size) is amplified by
// 1/sqrt(delta_o). Compensated products and sums push that noise to the
// eps^2 level. Everything here is ordinary Real arithmetic built on fma; no
// wider scalar type is involved.

#include <cmath>

#include "cubix/complex_branch.hpp"

namespace cubix::dd {

template <class Real>
struct DD {
  Real hi{}, lo{};
  Real value() const { return hi + lo; }
};

template <class Real>
inline DD<Real> quick_two_sum(Real a, Real b) {  // requires |a| >= |b| or a == 0
  const Real s = a + b;
  return {s, b - (s - a)};
}

template <class Real>
inline DD<Real> two_sum(Real a, Real b) {
  const Real s = a + b;
  const Real bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

template <class Real>
inline DD<Real> two_prod(Real a, Real b) {
  const Real p = a * b;
  return {p, std::fma(a, b, -p)};
}

template <class Real>
inline DD<Real> from(Real a) {
  return {a, Real(0)};
}

template <class Real>
inline DD<Real> add(DD<Real> a, DD<Real> b) {
  DD<Real> s = two_sum(a.hi, b.hi);
  return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

template <class Real>
inline DD<Real> sub(DD<Real> a, DD<Real> b) {
  return add(a, DD<Real>{-b.hi, -b.lo});
}

template <class Real>
inline DD<Real> mul(DD<Real> a, DD<Real> b) {
  DD<Real> p = two_prod(a.hi, b.hi);
  return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

template <class Real>
inline DD<Real> mul(DD<Real> a, Real b) {
  DD<Real> p = two_prod(a.hi, b);
  return quick_two_sum(p.hi, p.lo + a.lo * b);
}

// sqrt(3) to double-double accuracy (one Newton correction of the head)
template <class Real>
inline DD<Real> sqrt3_dd() {
  const Real s = std::sqrt(Real(3));
  const Real r = std::fma(s, s, Real(-3));
  return {s, -r / (2 * s)};
}

// p/q for small integers, to double-double accuracy. Plain Real(p)/Real(q)
// constants carry an eps-level relative error that survives any later
// cancellation; these do not.
template <class Real>
inline DD<Real> ratio(int p, int q) {
  const Real hi = Real(p) / Real(q);
  const DD<Real> prod = two_prod(hi, Real(q));
  return {hi, ((Real(p) - prod.hi) - prod.lo) / Real(q)};
}

template <class Real>
struct CDD {
  DD<Real> re{}, im{};
  Cx<Real> value() const { return {re.value(), im.value()}; }
};

template <class Real>
inline CDD<Real> cfrom(Cx<Real> z) {
  return {from(z.real()), from(z.imag())};
}

template <class Real>
inline CDD<Real> cadd(CDD<Real> a, CDD<Real> b) {
  return {add(a.re, b.re), add(a.im, b.im)};
}

template <class Real>
inline CDD<Real> csub(CDD<Real> a, CDD<Real> b) {
  return {sub(a.re, b.re), sub(a.im, b.im)};
}

template <class Real>
inline CDD<Real> cmul(CDD<Real> a, CDD<Real> b) {
  return {sub(mul(a.re, b.re), mul(a.im, b.im)),
          add(mul(a.re, b.im), mul(a.im, b.re))};
}

template <class Real>
inline CDD<Real> cmul(CDD<Real> a, Real s) {
  return {mul(a.re, s), mul(a.im, s)};
}

template <class Real>
inline CDD<Real> cmul(CDD<Real> a, DD<Real> s) {
  return {mul(a.re, s), mul(a.im, s)};
}

template <class Real>
inline CDD<Real> cmul_i(CDD<Real> a) {  // multiply by the imaginary unit
  return {DD<Real>{-a.im.hi, -a.im.lo}, a.re};
}

template <class Real>
inline CDD<Real> cneg(CDD<Real> a) {
  return {DD<Real>{-a.re.hi, -a.re.lo}, DD<Real>{-a.im.hi, -a.im.lo}};
}

// Principal square root refined to double-double accuracy: one complex
// Newton correction of the double-precision head. Exact zeros stay zero.
template <class Real>
inline CDD<Real> csqrt_principal(CDD<Real> x) {
  const Cx<Real> s0 = principal_sqrt(x.value());
  if (std::abs(s0) == Real(0)) return cfrom(Cx<Real>(0));
  const CDD<Real> s0dd = cfrom(s0);
  const Cx<Real> r = csub(x, cmul(s0dd, s0dd)).value();
  const Cx<Real> corr = r / (Real(2) * s0);
  return cadd(s0dd, cfrom(corr));
}

}  // namespace cubix::dd
