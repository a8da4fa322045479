#include "cubix/audit.hpp"

#include <gtest/gtest.h>

#include "cubix/batch.hpp"
#include "cubix/rng.hpp"

using namespace cubix;

TEST(Audit, HealthyChainPassesEverything) {
  AuditRunStats stats;
  const auto rep = run_audit(25, 9001, {}, &stats);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_TRUE(rep.errata_candidates().empty());
  EXPECT_EQ(rep.instances, 50);  // 25 matrices + 25 cubics
  for (const char* name :
       {"master-b-equation", "d-identity", "f-identity", "r-identity-sqrt",
        "r-identity-quad", "eigenvalue-change-of-variable", "l-cubic", "b-quadratic",
        "resolvent-set", "spectrum-formula", "spectrum-formula-alt",
        "spectrum-forms-agreement", "sqrt-delta-p-consistency", "cube-identity-r1",
        "cube-identity-r2", "raw-vs-phase-roots", "uniform-vs-oracle"}) {
    const auto* s = rep.find(name);
    ASSERT_NE(s, nullptr) << name;
    EXPECT_GT(s->samples, 0) << name;
    EXPECT_EQ(s->fails, 0) << name << " max residual " << s->max_residual;
  }
}

TEST(Audit, PublishedFormsFailTheAudit) {
  // the as-published coefficient chain carries typos; the audit must flag them
  AuditOptions<double> opt;
  opt.chain.form = FormulaForm::printed;
  Rng rng(321);
  AuditReport<double> rep;
  int done = 0;
  while (done < 8) {
    const Matrix3d M = random_matrix_unit_disk(rng);
    const Complex a = rng.in_disk(1.0);
    try {
      rep.merge(audit_identities(M, a, 12, opt));
      ++done;
    } catch (const std::exception&) {
      continue;  // printed forms may stall Newton; keep sampling
    }
  }
  EXPECT_FALSE(rep.all_pass());
  EXPECT_FALSE(rep.errata_candidates().empty());
  // the wrong e2 sends the change of variable off the true spectrum
  const auto* s = rep.find("eigenvalue-change-of-variable");
  ASSERT_NE(s, nullptr);
  EXPECT_GT(s->fails, 0);
}

TEST(Audit, InjectedTypoIsDetected) {
  AuditOptions<double> opt;
  opt.chain.inject_e2_sign_flip = true;
  Rng rng(322);
  AuditReport<double> rep;
  int done = 0;
  while (done < 5) {
    const Matrix3d M = random_matrix_unit_disk(rng);
    const Complex a = rng.in_disk(1.0);
    try {
      rep.merge(audit_identities(M, a, 12, opt));
      ++done;
    } catch (const std::exception&) {
      continue;
    }
  }
  EXPECT_FALSE(rep.all_pass());
  const auto cands = rep.errata_candidates();
  EXPECT_FALSE(cands.empty());
  // the flagged equation carries its worst instance for reproduction
  bool have_worst = false;
  for (const auto& s : rep.stats)
    if (s.fails > 0 && s.worst_kind == "matrix+a" && s.worst_values.size() == 10)
      have_worst = true;
  EXPECT_TRUE(have_worst);
}

TEST(Audit, LiteralBranchReadingBreaksCubeIdentities) {
  // reading sqrt(-delta_o) as an independent principal root (instead of
  // i * sqrt(delta_o)) flips sign on half the domain
  AuditOptions<double> printed, paired;
  printed.inv.printed_branches = true;
  Rng rng(323);
  long printed_fails = 0, paired_fails = 0;
  int done = 0;
  while (done < 120) {
    const Cubic p = random_cubic_from_roots(rng).poly;
    try {
      const auto rp = audit_uniform_cubic(p, printed);
      const auto rg = audit_uniform_cubic(p, paired);
      printed_fails += rp.find("cube-identity-r1")->fails + rp.find("cube-identity-r2")->fails;
      paired_fails += rg.find("cube-identity-r1")->fails + rg.find("cube-identity-r2")->fails;
      ++done;
    } catch (const std::exception&) {
      continue;
    }
  }
  EXPECT_EQ(paired_fails, 0);
  EXPECT_GT(printed_fails, 20);  // roughly half the instances break
}

TEST(Audit, PublishedL3FailsTheLCubic) {
  AuditOptions<double> opt;
  opt.chain.form = FormulaForm::printed;
  // isolate l3: evaluate the l-cubic residual with printed coefficients at
  // the true solutions obtained from the corrected chain
  Rng rng(324);
  int done = 0;
  double worst_corrected = 0, best_printed = 1e300;
  while (done < 10) {
    const Matrix3d M = random_matrix_unit_disk(rng);
    const Complex a = rng.in_disk(1.0);
    CoeffChain<double> good, bad;
    try {
      good = coeff_chain(M, a);
      bad = coeff_chain(M, a, opt.chain);
    } catch (const DegenerateMatrix&) {
      continue;
    }
    ++done;
    // true b-tilde values from the corrected master equation
    AuditOptions<double> aopt;
    std::vector<double> finals;
    const auto bts = detail::newton_b_solutions(good, matrix_scale(M), 12, aopt, finals);
    ASSERT_FALSE(bts.empty());
    const Complex o = rng.in_disk(1.0);
    const auto lcg = l_cubic_coeffs(good, o);
    const auto lcb = l_cubic_coeffs(bad, o);
    for (const auto& bt : bts) {
      const Complex S = principal_sqrt(delta_p(good, bt));
      const Complex l = -(bt + o * S);
      const double al = std::abs(l);
      const double maj = 2 * al * al * al + std::abs(lcg.c_l) * al * al +
                         std::abs(lcg.b_l) * al + std::abs(lcg.d_l) + 1;
      worst_corrected = std::max(
          worst_corrected,
          std::abs(2.0 * l * l * l + lcg.c_l * l * l + lcg.b_l * l + lcg.d_l) / maj);
      best_printed = std::min(
          best_printed,
          std::abs(2.0 * l * l * l + lcb.c_l * l * l + lcb.b_l * l + lcb.d_l) / maj);
    }
  }
  EXPECT_LE(worst_corrected, 1e-8);
  EXPECT_GT(best_printed, 1e-4);
}

TEST(Audit, VanishingSmallDeltaLSurfaceStaysSound) {
  // On the surface 3c = b^2 the cube argument can vanish while the roots stay
  // distinct; observed behavior: the first cube-root term degenerates through
  // a1 (r1^3 -> 0), the roots stay accurate and the criterion never fires.
  Rng rng(325);
  for (int i = 0; i < 100; ++i) {
    const Complex t = dyadic_in_disk(rng, 1.5);
    const Complex q = rng.in_annulus(0.5, 2.0);
    if (std::abs(t) < 0.3) continue;
    const Cubic p{3.0 * t, 3.0 * t * t, t * t * t + q};
    UniformSolve<double> us;
    CriterionResult<double> cr;
    try {
      us = uniform_roots(p);
      cr = double_root_criterion(p);
    } catch (const DegenerateInput&) {
      continue;
    } catch (const AmbiguousCriterion&) {
      ADD_FAILURE() << "criterion fired spuriously on the 3c = b^2 surface";
      continue;
    }
    for (double r : us.roots.residuals) EXPECT_LE(r, 1e-8);
    EXPECT_EQ(cr.fired_count, 0);
  }
}

TEST(Audit, NewtonNonConvergenceReportsPerStart) {
  AuditOptions<double> opt;
  opt.newton_iters = 1;
  opt.newton_tol = 1e-30;
  Rng rng(326);
  const Matrix3d M = random_matrix_unit_disk(rng);
  try {
    audit_identities(M, rng.in_disk(1.0), 12, opt);
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.trace.size(), 12u);  // one final residual per start point
  }
}

TEST(Audit, ExtendedPrecisionReRun) {
  // the audit path can re-run in extended precision; acceptance stays double
  const CubicPoly<long double> p{{-6.0L, 0.0L}, {11.0L, 0.0L}, {-6.0L, 0.0L}};
  AuditOptions<long double> opt;
  const auto rep = audit_uniform_cubic(p, opt);
  EXPECT_TRUE(rep.all_pass());
}
