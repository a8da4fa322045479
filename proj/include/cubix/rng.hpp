#pragma once

// Counter-based pseudo-random generator (splitmix64): output k of a stream is
// a pure function of (seed, k), so ensembles are reproducible and can be
// sharded. Samplers use rejection only (no transcendental calls), keeping the
// generated ensembles bit-identical across libm implementations.

#include <cstdint>
#include <utility>

#include "cubix/complex_branch.hpp"
#include "cubix/cubic.hpp"
#include "cubix/matrix3.hpp"

namespace cubix {

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
  return splitmix64_mix(seed + (k + 1) * kSplitMixGamma);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed ^ splitmix64_mix(stream * 0x8CB92BA72F3D8DD7ull + 1)), k_(0) {}

  std::uint64_t next_u64() { return splitmix64_at(seed_, k_++); }

  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }  // [0,1)

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  Complex in_disk(double radius = 1.0) {
    for (;;) {
      double x = uniform(-1.0, 1.0), y = uniform(-1.0, 1.0);
      if (x * x + y * y <= 1.0) return {radius * x, radius * y};
    }
  }

  Complex in_annulus(double rmin, double rmax) {
    for (;;) {
      Complex z = in_disk(rmax);
      double a = std::abs(z);
      if (a >= rmin && a <= rmax) return z;
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t k_;
};

struct ConstructedCubic {
  Cubic poly;
  std::array<Complex, 3> roots;
};

inline ConstructedCubic random_cubic_from_roots(Rng& rng, double rmin = 0.1,
                                                double rmax = 10.0, double minsep = 1e-3) {
  for (;;) {
    std::array<Complex, 3> r{rng.in_annulus(rmin, rmax), rng.in_annulus(rmin, rmax),
                             rng.in_annulus(rmin, rmax)};
    if (std::abs(r[0] - r[1]) >= minsep && std::abs(r[0] - r[2]) >= minsep &&
        std::abs(r[1] - r[2]) >= minsep)
      return {cubic_from_roots(r[0], r[1], r[2]), r};
  }
}

inline Cubic random_cubic_coeff_disk(Rng& rng, double radius = 5.0) {
  return {rng.in_disk(radius), rng.in_disk(radius), rng.in_disk(radius)};
}

inline Matrix3d random_matrix_unit_disk(Rng& rng) {
  Matrix3d M;
  for (auto& v : M.m) v = rng.in_disk(1.0);
  return M;
}

// Snap to a dyadic grid coarse enough that every term of the degree-6
// discriminant polynomial stays exactly representable (all partial sums fit
// in 53 bits): cubics constructed from such roots carry their multiple root
// exactly in double precision, and delta_o evaluates to exact zero.
inline double snap_dyadic(double x, int bits = 6) {
  const double q = double(1 << bits);
  return std::nearbyint(x * q) / q;
}

inline Complex dyadic_in_disk(Rng& rng, double radius = 2.0, int bits = 6) {
  Complex z = rng.in_disk(radius);
  return {snap_dyadic(z.real(), bits), snap_dyadic(z.imag(), bits)};
}

struct ConstructedDouble {
  Cubic poly;
  Complex double_root, simple_root;
};

inline ConstructedDouble random_double_root_cubic(Rng& rng) {
  for (;;) {
    Complex r1 = dyadic_in_disk(rng), r2 = dyadic_in_disk(rng);
    if (std::abs(r1) < 0.25 || std::abs(r2) < 0.25 || std::abs(r1 - r2) < 0.5) continue;
    Cubic p{-(r1 + r1 + r2), r1 * r1 + 2.0 * r1 * r2, -(r1 * r1 * r2)};
    return {p, r1, r2};
  }
}

inline std::pair<Cubic, Complex> random_triple_root_cubic(Rng& rng) {
  for (;;) {
    Complex r = dyadic_in_disk(rng, 1.5);
    if (std::abs(r) < 0.25) continue;
    return {Cubic{-3.0 * r, 3.0 * r * r, -(r * r * r)}, r};
  }
}

}  // namespace cubix
