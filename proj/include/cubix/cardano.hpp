#pragma once

// Classical multi-case Cardano baseline. This solver is deliberately branchy:
// it dispatches on the discriminant class (multiple root / three real /
// one real / general complex) and serves as the reference the branch-free
// solver is benchmarked against, and as a secondary oracle.

#include <array>
#include <cmath>

#include "cubix/complex_branch.hpp"
#include "cubix/cubic.hpp"

namespace cubix {

template <class Real>
inline RootSet<Real> cardano_reference(const CubicPoly<Real>& p) {
  using C = Cx<Real>;
  const C b = p.b, c = p.c, d = p.d;
  const C shift = b / Real(3);
  // depressed cubic t^3 + pd t + qd, x = t - b/3
  const C pd = c - b * b / Real(3);
  const C qd = Real(2) * b * b * b / Real(27) - b * c / Real(3) + d;

  const Real ws = weighted_scale(p);
  const C delta = discriminant_delta_o(p);
  const Real band = Real(1e-12) * pow_int(ws, 6);

  std::array<C, 3> t;

  if (std::abs(delta) <= band) {
    // multiple-root class
    if (std::abs(pd) <= Real(1e-8) * ws * ws && std::abs(qd) <= Real(1e-8) * ws * ws * ws) {
      t = {C(0), C(0), C(0)};  // triple
    } else {
      // t^3 + pd t + qd = (t - s)^2 (t + 2s) with s = -3 qd / (2 pd)
      const C s = Real(-3) * qd / (Real(2) * pd);
      t = {s, s, Real(-2) * s};
    }
  } else if (b.imag() == Real(0) && c.imag() == Real(0) && d.imag() == Real(0)) {
    const Real pr = pd.real(), qr = qd.real();
    if (delta.real() > Real(0)) {
      // three distinct real roots: trigonometric form
      const Real m = Real(2) * std::sqrt(-pr / Real(3));
      Real arg = Real(3) * qr / (Real(2) * pr) * std::sqrt(Real(-3) / pr);
      arg = std::clamp(arg, Real(-1), Real(1));
      const Real phi = std::acos(arg);
      const Real tau = Real(2) * std::acos(Real(-1)) / Real(3);
      t = {C(m * std::cos(phi / Real(3))), C(m * std::cos(phi / Real(3) - tau)),
           C(m * std::cos(phi / Real(3) - 2 * tau))};
    } else {
      // one real root, conjugate complex pair: real radicals
      const Real disc = std::sqrt(qr * qr / Real(4) + pr * pr * pr / Real(27));
      const Real u3 = qr <= Real(0) ? -qr / Real(2) + disc : -qr / Real(2) - disc;
      const Real u = std::cbrt(u3);
      const Real v = u == Real(0) ? Real(0) : -pr / (Real(3) * u);
      const Real re = -(u + v) / Real(2);
      const Real im = sqrt3_v<Real>() / Real(2) * (u - v);
      t = {C(u + v), C(re, im), C(re, -im)};
    }
  } else {
    // general complex coefficients
    const C disc = principal_sqrt(qd * qd / Real(4) + pd * pd * pd / Real(27));
    const C cand1 = -qd / Real(2) + disc;
    const C cand2 = -qd / Real(2) - disc;
    const C u3 = std::abs(cand1) >= std::abs(cand2) ? cand1 : cand2;
    const C u = principal_cbrt(u3);
    const C v = std::abs(u) == Real(0) ? C(0) : -pd / (Real(3) * u);
    const C w(Real(-0.5), sqrt3_v<Real>() / Real(2));   // primitive cube root of unity
    const C wb = std::conj(w);
    t = {u + v, w * u + wb * v, wb * u + w * v};
  }

  return make_root_set(p, {t[0] - shift, t[1] - shift, t[2] - shift});
}

}  // namespace cubix
