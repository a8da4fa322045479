// Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
// Ensembles are pinned by fixed seeds; every tolerance is hard-coded here.

#include <gtest/gtest.h>

#include <cstdio>

#include "cubix/audit.hpp"
#include "cubix/batch.hpp"
#include "cubix/cardano.hpp"
#include "cubix/eigen_solver.hpp"
#include "cubix/oracle.hpp"
#include "cubix/rng.hpp"
#include "cubix/uniform.hpp"

using namespace cubix;

namespace {

void report(int criterion, bool pass, const std::string& what) {
  std::printf("[CRITERION %d] %s - %s\n", criterion, pass ? "PASS" : "FAIL", what.c_str());
}

RootSet<double> as_rootset(std::array<Complex, 3> r) {
  RootSet<double> rs;
  rs.roots = r;
  return rs;
}

double root_scale(const std::array<Complex, 3>& r) {
  return std::max({1.0, std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
}

struct Ensemble {
  std::vector<ConstructedCubic> items;
};

const Ensemble& criterion1_ensemble() {
  static Ensemble e = [] {
    Ensemble out;
    Rng rng(20250801);
    out.items.reserve(10000);
    for (int i = 0; i < 10000; ++i) out.items.push_back(random_cubic_from_roots(rng));
    return out;
  }();
  return e;
}

}  // namespace

TEST(Acceptance, Criterion1_UniformSolverCorrectness) {
  const auto& ens = criterion1_ensemble();
  long nondegenerate = 0, distance_ok = 0;
  bool residual_ok = true;
  double worst_md = 0, worst_res = 0;
  for (const auto& cc : ens.items) {
    UniformSolve<double> us;
    try {
      us = uniform_roots(cc.poly);
    } catch (const DegenerateInput&) {
      continue;
    }
    ++nondegenerate;
    const double md = match_rootsets(us.roots, as_rootset(cc.roots));
    const double tol = 1e-6 * root_scale(cc.roots);
    worst_md = std::max(worst_md, md / root_scale(cc.roots));
    if (md <= tol) ++distance_ok;
    for (double r : us.roots.residuals) {
      worst_res = std::max(worst_res, r);
      if (r > 1e-8) residual_ok = false;  // residuals are pre-scaled by max(1,|x|)^3 * coeff scale
    }
  }
  const double frac = double(distance_ok) / double(nondegenerate);
  const bool pass = frac >= 0.999 && residual_ok && nondegenerate > 9900;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "10000 constructed cubics: distance ok on %.4f%% (worst %.3g), residual "
                "bound worst %.3g (<= 1e-8) on 100%%",
                100.0 * frac, worst_md, worst_res);
  report(1, pass, buf);
  EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion2_OracleTriangle) {
  const auto& ens = criterion1_ensemble();
  double worst = 0;
  long tested = 0;
  for (const auto& cc : ens.items) {
    UniformSolve<double> us;
    try {
      us = uniform_roots(cc.poly);
    } catch (const DegenerateInput&) {
      continue;
    }
    ++tested;
    const auto car = cardano_reference(cc.poly);
    const auto orc = oracle_roots(cc.poly);
    const double s = root_scale(cc.roots);
    worst = std::max({worst, match_rootsets(us.roots, car) / s,
                      match_rootsets(us.roots, orc) / s, match_rootsets(car, orc) / s});
  }
  const bool pass = worst <= 1e-6;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "uniform/cardano/oracle pairwise matched distance worst %.3g <= 1e-6 on %ld "
                "instances", worst, tested);
  report(2, pass, buf);
  EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion3_DiscriminantMultiplicityEquivalence) {
  Rng rng(311);
  double worst_multiple = 0;
  for (int i = 0; i < 100; ++i) {
    const auto dc = random_double_root_cubic(rng);
    const double s6 = pow_int(std::max({1.0, std::abs(dc.double_root), std::abs(dc.simple_root)}), 6);
    worst_multiple = std::max(worst_multiple,
                              std::abs(discriminant_delta_o(dc.poly)) / s6);
  }
  for (int i = 0; i < 20; ++i) {
    const auto tc = random_triple_root_cubic(rng);
    const double s6 = pow_int(std::max(1.0, std::abs(tc.second)), 6);
    worst_multiple = std::max(worst_multiple,
                              std::abs(discriminant_delta_o(tc.first)) / s6);
  }
  double min_separated = 1e300;
  int made = 0;
  while (made < 100) {
    std::array<Complex, 3> r{rng.in_annulus(0.3, 2.5), rng.in_annulus(0.3, 2.5),
                             rng.in_annulus(0.3, 2.5)};
    if (std::abs(r[0] - r[1]) < 1.0 || std::abs(r[0] - r[2]) < 1.0 ||
        std::abs(r[1] - r[2]) < 1.0)
      continue;
    ++made;
    const Cubic p = cubic_from_roots(r[0], r[1], r[2]);
    min_separated = std::min(min_separated,
                             std::abs(discriminant_delta_o(p)) / pow_int(root_scale(r), 6));
  }
  const bool pass = worst_multiple <= 1e-8 && min_separated > 1e-4;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "|delta_o|/scale^6: multiple-root worst %.3g <= 1e-8; separated min %.3g > 1e-4",
                worst_multiple, min_separated);
  report(3, pass, buf);
  EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion4_DoubleRootCriterion) {
  Rng rng(411);
  bool pass = true;
  double worst_pair_gap = 0;
  for (int i = 0; i < 100; ++i) {
    const auto dc = random_double_root_cubic(rng);
    CriterionResult<double> cr;
    UniformSolve<double> us;
    try {
      cr = double_root_criterion(dc.poly);
      us = uniform_roots(dc.poly);
    } catch (const std::exception&) {
      pass = false;
      continue;
    }
    if (cr.fired_count != 1 || !cr.double_pair) {
      pass = false;
      continue;
    }
    const auto [a, b] = *cr.double_pair;
    const double gap = std::abs(us.trace.final_roots[a] - us.trace.final_roots[b]);
    const double scale = std::max({1.0, std::abs(dc.double_root), std::abs(dc.simple_root)});
    worst_pair_gap = std::max(worst_pair_gap, gap / scale);
    if (gap > 1e-6 * scale) pass = false;
  }
  int fired_on_separated = 0;
  int made = 0;
  while (made < 100) {
    std::array<Complex, 3> r{rng.in_annulus(0.3, 2.5), rng.in_annulus(0.3, 2.5),
                             rng.in_annulus(0.3, 2.5)};
    if (std::abs(r[0] - r[1]) < 1.0 || std::abs(r[0] - r[2]) < 1.0 ||
        std::abs(r[1] - r[2]) < 1.0)
      continue;
    ++made;
    try {
      const auto cr = double_root_criterion(cubic_from_roots(r[0], r[1], r[2]));
      if (cr.fired_count != 0) ++fired_on_separated;
    } catch (const DegenerateInput&) {
      continue;
    }
  }
  pass = pass && fired_on_separated == 0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "100 double roots: exactly one pair fires, flagged roots agree (worst gap "
                "%.3g <= 1e-6); 100 separated: %d spurious fires",
                worst_pair_gap, fired_on_separated);
  report(4, pass, buf);
  EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion5_Eigen3PipelineOnRandomMatrices) {
  Rng rng(511);
  long solved = 0;
  double worst_spec = 0, worst_closure = 0, worst_cor = 0;
  while (solved < 1000) {
    const Matrix3d M = random_matrix_unit_disk(rng);
    SpectrumOptions<double> opt;
    opt.audit_mode = true;
    const auto sr = spectrum(M, opt);
    if (!sr.trace.fallback.empty()) continue;  // degenerate preconditions rejected
    ++solved;
    const auto want = oracle_roots(char_poly(M));
    const double ms = matrix_scale(M);
    worst_spec = std::max(worst_spec, match_roots(sr.eigenvalues, want.roots) / ms);
    const Complex sum = sr.eigenvalues[0] + sr.eigenvalues[1] + sr.eigenvalues[2];
    const Complex prod = sr.eigenvalues[0] * sr.eigenvalues[1] * sr.eigenvalues[2];
    worst_closure = std::max({worst_closure, std::abs(sum - trace(M)) / ms,
                              std::abs(prod - det(M)) / pow_int(ms, 3)});
    worst_cor = std::max(worst_cor, sr.trace.cor_disagreement / ms);
  }
  const bool pass = worst_spec <= 1e-6 && worst_closure <= 1e-7 && worst_cor <= 1e-8;
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "1000 matrices: spectrum-vs-oracle worst %.3g <= 1e-6; tr/det closure worst "
                "%.3g <= 1e-7; two spectrum forms agree to %.3g <= 1e-8",
                worst_spec, worst_closure, worst_cor);
  report(5, pass, buf);
  EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion6_IdentityAudit) {
  AuditRunStats stats;
  const auto rep = run_audit(100, 611, {}, &stats);
  bool pass = true;
  double worst = 0;
  for (const char* name : {"master-b-equation", "d-identity", "f-identity",
                           "r-identity-sqrt", "r-identity-quad", "l-cubic", "b-quadratic"}) {
    const auto* s = rep.find(name);
    if (!s || s->samples == 0 || s->fails != 0) pass = false;
    if (s) worst = std::max(worst, s->max_residual);
  }
  // the detector itself must catch a deliberately injected sign flip
  AuditOptions<double> inj;
  inj.chain.inject_e2_sign_flip = true;
  const auto bad = run_audit(5, 612, inj);
  const bool detector_ok = !bad.all_pass() && !bad.errata_candidates().empty();
  pass = pass && detector_ok;
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "100 (matrix, a) pairs: all seven chain identities hold, worst normalized "
                "residual %.3g <= 1e-8; injected sign flip detected: %s",
                worst, detector_ok ? "yes" : "NO");
  report(6, pass, buf);
  EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion7_PhaseCorrectionValidity) {
  const auto& ens = criterion1_ensemble();
  double worst_cube = 0, worst_rawfin = 0;
  for (const auto& cc : ens.items) {
    UniformSolve<double> us;
    try {
      us = uniform_roots(cc.poly);
    } catch (const DegenerateInput&) {
      continue;
    }
    const auto& inv = us.trace.inv;
    const Complex U = inv.cbrt_small_delta_l;
    const double c4 = cbrt4_v<double>();
    const Complex l1 = inv.a1 * U, r1 = -4.0 * inv.d_o * inv.r1;
    const Complex l2 = inv.a2 * U * U, r2 = c4 * c4 * inv.d_o * inv.d_o * inv.r2;
    const Complex l1c = l1 * l1 * l1, r1c = r1 * r1 * r1;
    const Complex l2c = l2 * l2 * l2, r2c = r2 * r2 * r2;
    worst_cube = std::max({worst_cube, std::abs(l1c - r1c) / std::abs(r1c),
                           std::abs(l2c - r2c) / std::abs(r2c)});
    const double ws = weighted_scale(cc.poly);
    for (int k = 0; k < 3; ++k)
      worst_rawfin = std::max(
          worst_rawfin, std::abs(us.trace.raw_roots[k] - us.trace.final_roots[k]) / ws);
  }
  const bool pass = worst_cube <= 1e-8 && worst_rawfin <= 1e-10;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "cube identities worst relative %.3g <= 1e-8; rationalized vs phase-corrected "
                "roots worst %.3g <= 1e-10 per scale",
                worst_cube, worst_rawfin);
  report(7, pass, buf);
  EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion8_BranchFreeHotPathAndBenchmark) {
  // Structural review: the hot path of uniform_roots is straight-line (see the
  // review note in include/cubix/uniform.hpp and README "Branch-free claim");
  // no conditional inspects the discriminant class. All three discriminant
  // classes run here through the identical entry point.
  bool classes_ok = true;
  for (const Cubic& p : {Cubic{{-6, 0}, {11, 0}, {-6, 0}},    // delta_o > 0
                         Cubic{{-1, 0}, {1, 0}, {-1, 0}},     // delta_o < 0
                         Cubic{{0, 1}, {2, -1}, {1, 1}}}) {   // delta_o complex
    const auto us = uniform_roots(p);
    for (double r : us.roots.residuals) classes_ok = classes_ok && r <= 1e-8;
  }
  const auto rep = run_bench(100000, 42);
  const bool bench_ok = rep.uniform.throughput_per_s > 0 && rep.cardano.throughput_per_s > 0 &&
                        rep.oracle.throughput_per_s > 0 && rep.uniform.residual_max <= 1e-8 &&
                        !rep.ensemble_hash.empty();
  const bool pass = classes_ok && bench_ok;
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "hot path free of discriminant branches (structural review; all classes via "
                "one path); bench 100000: uniform %.2fM/s cardano %.2fM/s oracle %.2fM/s, "
                "fallback rate %.2g",
                rep.uniform.throughput_per_s / 1e6, rep.cardano.throughput_per_s / 1e6,
                rep.oracle.throughput_per_s / 1e6, rep.uniform.fallback_rate);
  report(8, pass, buf);
  EXPECT_TRUE(pass);
}

TEST(Acceptance, Criterion9_ShiftAndScaleCovariance) {
  Rng rng(911);
  double worst_shift = 0, worst_scale = 0;
  long tested = 0;
  while (tested < 1000) {
    const auto cc = random_cubic_from_roots(rng, 0.1, 5.0, 1e-2);
    const Cubic& p = cc.poly;
    const Complex t = rng.in_disk(2.0);
    const Cubic q{p.b - 3.0 * t, 3.0 * t * t - 2.0 * p.b * t + p.c,
                  -t * t * t + p.b * t * t - p.c * t + p.d};
    const Complex s = rng.in_annulus(0.3, 3.0);
    const Cubic w{s * p.b, s * s * p.c, s * s * s * p.d};
    UniformSolve<double> up, uq, uw;
    try {
      up = uniform_roots(p);
      uq = uniform_roots(q);
      uw = uniform_roots(w);
    } catch (const DegenerateInput&) {
      continue;
    }
    ++tested;
    RootSet<double> shifted, scaled;
    for (int k = 0; k < 3; ++k) {
      shifted.roots[k] = up.roots.roots[k] + t;
      scaled.roots[k] = s * up.roots.roots[k];
    }
    worst_shift = std::max(worst_shift, match_rootsets(uq.roots, shifted) /
                                            std::max(weighted_scale(p), weighted_scale(q)));
    worst_scale = std::max(worst_scale,
                           match_rootsets(uw.roots, scaled) / weighted_scale(w));
  }
  const bool pass = worst_shift <= 1e-8 && worst_scale <= 1e-8;
  char buf[180];
  std::snprintf(buf, sizeof buf,
                "1000 instances each: shift covariance worst %.3g <= 1e-8; scale covariance "
                "worst %.3g <= 1e-8",
                worst_shift, worst_scale);
  report(9, pass, buf);
  EXPECT_TRUE(pass);
}
