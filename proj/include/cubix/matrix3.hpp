#pragma once

// General 3x3 complex matrix with the paper-facing entry layout
// (m1 m2 m3 / m4 m5 m6 / m7 m8 m9), its characteristic cubic, and the
// companion matrix that turns a cubic into an eigenvalue problem.

#include <array>
#include <cmath>

#include "cubix/complex_branch.hpp"
#include "cubix/cubic.hpp"
#include "cubix/errors.hpp"

namespace cubix {

template <class Real>
struct Matrix3 {
  std::array<Cx<Real>, 9> m{};  // row-major

  Cx<Real>& operator()(int r, int c) { return m[3 * r + c]; }
  const Cx<Real>& operator()(int r, int c) const { return m[3 * r + c]; }
};

using Matrix3d = Matrix3<double>;

template <class Real>
inline Cx<Real> trace(const Matrix3<Real>& M) {
  return M.m[0] + M.m[4] + M.m[8];
}

template <class Real>
inline Cx<Real> trace_sq(const Matrix3<Real>& M) {  // Tr(M^2)
  Cx<Real> t{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) t += M(i, k) * M(k, i);
  return t;
}

template <class Real>
inline Cx<Real> det(const Matrix3<Real>& M) {
  return M.m[0] * (M.m[4] * M.m[8] - M.m[5] * M.m[7]) -
         M.m[1] * (M.m[3] * M.m[8] - M.m[5] * M.m[6]) +
         M.m[2] * (M.m[3] * M.m[7] - M.m[4] * M.m[6]);
}

template <class Real>
inline Real matrix_scale(const Matrix3<Real>& M) {
  Real s = 1;
  for (const auto& v : M.m) s = std::max(s, std::abs(v));
  return s;
}

// det(xI - M) = x^3 - Tr(M) x^2 + (Tr(M)^2 - Tr(M^2))/2 x - det(M)
template <class Real>
inline CubicPoly<Real> char_poly(const Matrix3<Real>& M) {
  const Cx<Real> tr = trace(M);
  return {-tr, (tr * tr - trace_sq(M)) / Real(2), -det(M)};
}

// Companion-style matrix whose characteristic cubic is x^3 + b x^2 + c x + d;
// needs d away from zero (the (1,3) entry is c/d).
template <class Real>
inline Matrix3<Real> companion(const CubicPoly<Real>& p, Real band_tol = Real(1e-12)) {
  if (std::abs(p.d) <= band_tol * pow_int(weighted_scale(p), 3))
    throw DegenerateInput("companion matrix needs |d| outside the zero-band");
  Matrix3<Real> A;
  A.m = {-p.b, Cx<Real>(1), p.c / p.d,
         Cx<Real>(0), Cx<Real>(0), Cx<Real>(1),
         -p.d, Cx<Real>(0), Cx<Real>(0)};
  return A;
}

// Similarity by a permutation matrix: out(i,j) = in(perm[i], perm[j]).
// Spectrum-preserving.
template <class Real>
inline Matrix3<Real> permute_similarity(const Matrix3<Real>& M, const std::array<int, 3>& perm) {
  Matrix3<Real> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = M(perm[i], perm[j]);
  return out;
}

inline constexpr std::array<std::array<int, 3>, 6> kPermutations3 = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

}  // namespace cubix
