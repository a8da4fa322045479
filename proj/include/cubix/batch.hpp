#pragma once

// Batch solving, benchmark and audit drivers shared by the CLI and the
// acceptance suite.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubix/audit.hpp"
#include "cubix/cardano.hpp"
#include "cubix/eigen_solver.hpp"
#include "cubix/io.hpp"
#include "cubix/oracle.hpp"
#include "cubix/rng.hpp"
#include "cubix/uniform.hpp"

namespace cubix {

struct BatchOptions {
  double band_tol = 1e-12;
};

namespace detail {

inline std::int64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

inline volatile double benchmark_sink = 0.0;

inline SolveRecord solve_one(const SolveInput& in, Method method, const BatchOptions& opt) {
  SolveRecord rec;
  rec.input = in;
  rec.method = method;
  const std::int64_t t0 = now_ns();
  try {
    if (method == Method::eigen3) {
      const Matrix3d M = in.is_matrix ? in.matrix : companion(in.cubic, opt.band_tol);
      SpectrumOptions<double> sopt;
      sopt.band_tol = opt.band_tol;
      const auto sr = spectrum(M, sopt);
      rec.roots = make_root_set(char_poly(M), sr.eigenvalues);
      if (!sr.trace.fallback.empty()) rec.degeneracy = "fallback-" + sr.trace.fallback;
    } else {
      const Cubic p = in.is_matrix ? char_poly(in.matrix) : in.cubic;
      if (method == Method::uniform) {
        try {
          UniformOptions<double> uo;
          uo.band_tol = opt.band_tol;
          auto us = uniform_roots(p, uo);
          rec.roots = us.roots;
          rec.has_invariants = true;
          rec.invariants = us.trace.inv;
        } catch (const DegenerateInput& e) {
          rec.method = Method::fallback_cardano;
          rec.degeneracy = e.what();
          rec.roots = cardano_reference(p);
        }
      } else if (method == Method::cardano) {
        rec.roots = cardano_reference(p);
      } else {
        rec.roots = oracle_roots(p);
      }
    }
    rec.residual_max =
        std::max({rec.roots.residuals[0], rec.roots.residuals[1], rec.roots.residuals[2]});
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.wall_time_ns = now_ns() - t0;
  return rec;
}

}  // namespace detail

// One record per input line, emitted in input order; solver errors are
// captured per record and never abort the batch. Throws ParseError.
inline long run_batch(std::istream& is, Method method, const BatchOptions& opt,
                      std::ostream& os) {
  std::string line;
  long line_no = 0, emitted = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto in = parse_input_line(line, line_no);
    if (!in) continue;
    os << record_to_jsonl(detail::solve_one(*in, method, opt)) << "\n";
    ++emitted;
  }
  return emitted;
}

inline long run_check(std::istream& is, const BatchOptions& opt, std::ostream& os) {
  std::string line;
  long line_no = 0, emitted = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto in = parse_input_line(line, line_no);
    if (!in) continue;
    CheckRecord rec;
    rec.input = *in;
    const std::int64_t t0 = detail::now_ns();
    try {
      const Cubic p = in->is_matrix ? char_poly(in->matrix) : in->cubic;
      UniformOptions<double> uo;
      uo.band_tol = opt.band_tol;
      rec.criterion = double_root_criterion(p, uo);
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    rec.wall_time_ns = detail::now_ns() - t0;
    os << check_record_to_jsonl(rec) << "\n";
    ++emitted;
  }
  return emitted;
}

enum class BenchDistribution { root_annulus, coeff_disk };

inline const char* to_string(BenchDistribution d) {
  return d == BenchDistribution::root_annulus ? "root-annulus" : "coeff-disk";
}

struct MethodBench {
  double throughput_per_s = 0;
  double residual_p50 = 0, residual_p99 = 0, residual_max = 0;
  double fallback_rate = 0;
  long timed_count = 0;
};

struct BenchReport {
  long count = 0;
  std::uint64_t seed = 0;
  std::string distribution;
  std::string ensemble_hash;
  MethodBench uniform, cardano, oracle;
};

namespace detail {

inline double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<size_t>(q * double(v.size() - 1));
  return v[idx];
}

inline std::string fnv1a_hex(const std::vector<Cubic>& ensemble) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  auto eat = [&](double x) {
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof x);
    std::memcpy(&bits, &x, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xFF;
      h *= 0x100000001B3ull;
    }
  };
  for (const auto& p : ensemble) {
    eat(p.b.real()); eat(p.b.imag());
    eat(p.c.real()); eat(p.c.imag());
    eat(p.d.real()); eat(p.d.imag());
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <class Solve>
inline MethodBench bench_method(const std::vector<Cubic>& pool, Solve&& solve) {
  MethodBench mb;
  std::vector<double> residuals;
  residuals.reserve(pool.size());
  const std::int64_t t0 = now_ns();
  for (const auto& p : pool) {
    const RootSet<double> rs = solve(p);
    benchmark_sink = benchmark_sink + rs.roots[0].real();
    residuals.push_back(
        std::max({rs.residuals[0], rs.residuals[1], rs.residuals[2]}));
  }
  const std::int64_t t1 = now_ns();
  mb.timed_count = long(pool.size());
  mb.throughput_per_s = t1 > t0 ? double(pool.size()) * 1e9 / double(t1 - t0) : 0.0;
  mb.residual_p50 = percentile(residuals, 0.50);
  mb.residual_p99 = percentile(residuals, 0.99);
  mb.residual_max = residuals.empty() ? 0 : *std::max_element(residuals.begin(), residuals.end());
  return mb;
}

}  // namespace detail

// Times uniform, cardano and oracle on the identical ensemble. Degenerate
// instances (uniform zero-bands) are excluded from the uniform timing pool
// and reported as the fallback rate.
inline BenchReport run_bench(long count, std::uint64_t seed,
                             BenchDistribution dist = BenchDistribution::root_annulus,
                             const BatchOptions& opt = {}) {
  if (count < 1) throw std::invalid_argument("bench count must be >= 1");
  BenchReport rep;
  rep.count = count;
  rep.seed = seed;
  rep.distribution = to_string(dist);

  Rng rng(seed);
  std::vector<Cubic> ensemble;
  ensemble.reserve(size_t(count));
  for (long i = 0; i < count; ++i)
    ensemble.push_back(dist == BenchDistribution::root_annulus
                           ? random_cubic_from_roots(rng).poly
                           : random_cubic_coeff_disk(rng));
  rep.ensemble_hash = detail::fnv1a_hex(ensemble);

  std::vector<Cubic> uniform_pool;
  uniform_pool.reserve(ensemble.size());
  long fallbacks = 0;
  for (const auto& p : ensemble) {
    try {
      detail::check_uniform_bands(p, opt.band_tol);
      uniform_pool.push_back(p);
    } catch (const DegenerateInput&) {
      ++fallbacks;
    }
  }

  UniformOptions<double> uo;
  uo.band_tol = opt.band_tol;
  rep.uniform = detail::bench_method(
      uniform_pool, [&](const Cubic& p) { return uniform_roots(p, uo).roots; });
  rep.uniform.fallback_rate = double(fallbacks) / double(count);
  rep.cardano = detail::bench_method(
      ensemble, [](const Cubic& p) { return cardano_reference(p); });
  rep.oracle = detail::bench_method(
      ensemble, [](const Cubic& p) { return oracle_roots(p); });
  return rep;
}

inline nlohmann::ordered_json bench_to_json(const BenchReport& r) {
  auto mj = [](const MethodBench& m) {
    return nlohmann::ordered_json{{"throughput_per_s", m.throughput_per_s},
                                  {"residual_p50", m.residual_p50},
                                  {"residual_p99", m.residual_p99},
                                  {"residual_max", m.residual_max},
                                  {"fallback_rate", m.fallback_rate},
                                  {"timed_count", m.timed_count}};
  };
  return nlohmann::ordered_json{
      {"ensemble",
       {{"count", r.count}, {"seed", r.seed}, {"distribution", r.distribution},
        {"hash", r.ensemble_hash}}},
      {"methods",
       {{"uniform", mj(r.uniform)}, {"cardano", mj(r.cardano)}, {"oracle", mj(r.oracle)}}}};
}

struct AuditRunStats {
  long degenerate_skips = 0;
  long nonconvergence_skips = 0;
};

// Drives the identity audit over `count` random (matrix, a) pairs and the
// cubic-side cube-equality audit over `count` random cubics.
inline AuditReport<double> run_audit(long count, std::uint64_t seed,
                                     AuditOptions<double> opt = {},
                                     AuditRunStats* stats = nullptr) {
  if (count < 1) throw std::invalid_argument("audit count must be >= 1");
  AuditReport<double> rep;
  AuditRunStats local;
  AuditRunStats& st = stats ? *stats : local;

  Rng mrng(seed, 1);
  long done = 0, attempts = 0;
  while (done < count && attempts < 20 * count + 100) {
    ++attempts;
    const Matrix3d M = random_matrix_unit_disk(mrng);
    const Complex a = mrng.in_disk(1.0);
    try {
      rep.merge(audit_identities(M, a, 12, opt));
      ++done;
    } catch (const DegenerateMatrix&) {
      ++st.degenerate_skips;
    } catch (const NonConvergence&) {
      ++st.nonconvergence_skips;
    }
  }

  Rng crng(seed, 2);
  done = 0;
  attempts = 0;
  while (done < count && attempts < 20 * count + 100) {
    ++attempts;
    const Cubic p = random_cubic_from_roots(crng).poly;
    try {
      rep.merge(audit_uniform_cubic(p, opt));
      ++done;
    } catch (const DegenerateInput&) {
      ++st.degenerate_skips;
    } catch (const DegenerateDenominator&) {
      ++st.degenerate_skips;
    }
  }
  return rep;
}

inline nlohmann::ordered_json audit_to_json(const AuditReport<double>& rep,
                                            const AuditRunStats* stats = nullptr) {
  nlohmann::ordered_json eqs = nlohmann::ordered_json::array();
  for (const auto& s : rep.stats) {
    nlohmann::ordered_json worst = nlohmann::ordered_json::array();
    for (const auto& v : s.worst_values)
      worst.push_back({v.real(), v.imag()});
    eqs.push_back({{"name", s.name},
                   {"threshold", s.threshold},
                   {"samples", s.samples},
                   {"fails", s.fails},
                   {"max_residual", s.max_residual},
                   {"worst_instance", {{"kind", s.worst_kind}, {"values", worst}}}});
  }
  nlohmann::ordered_json out{{"instances", rep.instances},
                             {"equations", eqs},
                             {"errata_candidates", rep.errata_candidates()},
                             {"all_pass", rep.all_pass()}};
  if (stats)
    out["skips"] = {{"degenerate", stats->degenerate_skips},
                    {"nonconvergence", stats->nonconvergence_skips}};
  return out;
}

}  // namespace cubix
