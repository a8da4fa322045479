#pragma once

// Monic cubic x^3 + b x^2 + c x + d over complex coefficients, plus the
// root-set plumbing shared by every solver: scaled residuals, multiplicity
// tags, matched distance, Vieta checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cubix/complex_branch.hpp"

namespace cubix {

template <class Real>
struct CubicPoly {
  Cx<Real> b{}, c{}, d{};
};

using Cubic = CubicPoly<double>;

enum class Multiplicity { simple, double_root, triple_root };

inline const char* to_string(Multiplicity m) {
  switch (m) {
    case Multiplicity::simple: return "simple";
    case Multiplicity::double_root: return "double";
    default: return "triple";
  }
}

template <class Real>
struct RootSet {
  std::array<Cx<Real>, 3> roots{};
  std::array<Real, 3> residuals{};  // |p(x)| / (max(1,|x|)^3 * coefficient_scale)
  std::array<Multiplicity, 3> tags{Multiplicity::simple, Multiplicity::simple,
                                   Multiplicity::simple};
};

template <class Real>
inline Cx<Real> eval_poly(const CubicPoly<Real>& p, Cx<Real> x) {
  return ((x + p.b) * x + p.c) * x + p.d;
}

template <class Real>
inline Real coefficient_scale(const CubicPoly<Real>& p) {
  return std::max({Real(1), std::abs(p.b), std::abs(p.c), std::abs(p.d)});
}

// Weighted scale max(1, |b|, |c|^1/2, |d|^1/3): estimates the root magnitude,
// so a quantity of weighted degree k is compared against scale^k.
template <class Real>
inline Real weighted_scale(const CubicPoly<Real>& p) {
  return std::max({Real(1), std::abs(p.b), std::sqrt(std::abs(p.c)),
                   std::cbrt(std::abs(p.d))});
}

template <class Real>
inline Real pow_int(Real x, int k) {
  Real r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Classical discriminant of the monic cubic; equals the product of squared
// pairwise root differences. Weighted degree 6.
template <class Real>
inline Cx<Real> discriminant_delta_o(const CubicPoly<Real>& p) {
  const Cx<Real> b = p.b, c = p.c, d = p.d;
  return Real(-4) * b * b * b * d + b * b * c * c + Real(18) * b * c * d -
         Real(4) * c * c * c - Real(27) * d * d;
}

template <class Real>
inline Real scaled_residual(const CubicPoly<Real>& p, Cx<Real> x) {
  Real ax = std::max(Real(1), std::abs(x));
  return std::abs(eval_poly(p, x)) / (ax * ax * ax * coefficient_scale(p));
}

template <class Real>
inline void sort_roots_lex(std::array<Cx<Real>, 3>& r) {
  std::sort(r.begin(), r.end(), [](Cx<Real> a, Cx<Real> b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// Tags two roots as a double exactly when they are close AND the
// discriminant is small; the second gate keeps clustered simple roots from
// being mislabeled.
template <class Real>
inline RootSet<Real> make_root_set(const CubicPoly<Real>& p, std::array<Cx<Real>, 3> roots,
                                   bool sort_lex = true) {
  if (sort_lex) sort_roots_lex(roots);
  RootSet<Real> rs;
  rs.roots = roots;
  for (int i = 0; i < 3; ++i) rs.residuals[i] = scaled_residual(p, roots[i]);

  const Real ws = weighted_scale(p);
  const bool disc_small =
      std::abs(discriminant_delta_o(p)) <= Real(1e-8) * pow_int(ws, 6);
  auto close = [&](int i, int j) {
    return std::abs(roots[i] - roots[j]) <=
           Real(1e-6) * std::max(Real(1), std::abs(roots[i]));
  };
  if (disc_small) {
    std::array<int, 3> cluster{0, 1, 2};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < i; ++j)
        if (close(i, j)) cluster[i] = cluster[j];
    std::array<int, 3> count{};
    for (int i = 0; i < 3; ++i) {
      int n = 0;
      for (int j = 0; j < 3; ++j)
        if (cluster[j] == cluster[i]) ++n;
      count[i] = n;
    }
    for (int i = 0; i < 3; ++i)
      rs.tags[i] = count[i] == 3   ? Multiplicity::triple_root
                   : count[i] == 2 ? Multiplicity::double_root
                                   : Multiplicity::simple;
  }
  return rs;
}

// Minimum over the six pairings of the maximum pairwise distance.
template <class Real>
inline Real match_rootsets(const RootSet<Real>& a, const RootSet<Real>& b) {
  static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  Real best = std::numeric_limits<Real>::infinity();
  for (auto& s : perms) {
    Real worst = 0;
    for (int i = 0; i < 3; ++i)
      worst = std::max(worst, std::abs(a.roots[i] - b.roots[s[i]]));
    best = std::min(best, worst);
  }
  return best;
}

template <class Real>
inline Real match_roots(const std::array<Cx<Real>, 3>& a, const std::array<Cx<Real>, 3>& b) {
  RootSet<Real> ra, rb;
  ra.roots = a;
  rb.roots = b;
  return match_rootsets(ra, rb);
}

// |sum x_i + b|, |sum_{i<j} x_i x_j - c|, |prod x_i + d|
template <class Real>
inline std::array<Real, 3> vieta_residuals(const CubicPoly<Real>& p, const RootSet<Real>& rs) {
  const auto& x = rs.roots;
  Cx<Real> s1 = x[0] + x[1] + x[2];
  Cx<Real> s2 = x[0] * x[1] + x[0] * x[2] + x[1] * x[2];
  Cx<Real> s3 = x[0] * x[1] * x[2];
  return {std::abs(s1 + p.b), std::abs(s2 - p.c), std::abs(s3 + p.d)};
}

template <class Real>
inline CubicPoly<Real> cubic_from_roots(Cx<Real> x1, Cx<Real> x2, Cx<Real> x3) {
  return {-(x1 + x2 + x3), x1 * x2 + x1 * x3 + x2 * x3, -(x1 * x2 * x3)};
}

}  // namespace cubix
