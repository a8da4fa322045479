#pragma once

// Input parsing (whitespace-decimal and JSON-lines forms) and record
// emission. Records are emitted by a small hand-rolled writer so every
// number is printed with 17 significant digits (round-trip safe) in a
// deterministic key order.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubix/cubic.hpp"
#include "cubix/errors.hpp"
#include "cubix/invariants.hpp"
#include "cubix/matrix3.hpp"
#include "cubix/uniform.hpp"

namespace cubix {

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string fmt_complex(Complex z) {
  return "[" + fmt17(z.real()) + "," + fmt17(z.imag()) + "]";
}

enum class Method { uniform, cardano, oracle, eigen3, fallback_cardano };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::uniform: return "uniform";
    case Method::cardano: return "cardano";
    case Method::oracle: return "oracle";
    case Method::eigen3: return "eigen3";
    default: return "fallback-cardano";
  }
}

inline std::optional<Method> parse_method(const std::string& s) {
  if (s == "uniform") return Method::uniform;
  if (s == "cardano") return Method::cardano;
  if (s == "oracle") return Method::oracle;
  if (s == "eigen3") return Method::eigen3;
  return std::nullopt;
}

struct SolveInput {
  bool is_matrix = false;
  Cubic cubic{};
  Matrix3d matrix{};
};

namespace detail {

inline Complex json_complex(const nlohmann::json& j, long line_no) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(line_no, "complex values must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

// One cubic per line as 6 decimals `b_re b_im c_re c_im d_re d_im`, one
// matrix as 18 decimals row-major, or JSON objects {"b":[re,im],...} /
// {"m":[[[re,im],...],...]}. Blank lines are skipped.
inline std::optional<SolveInput> parse_input_line(const std::string& line, long line_no) {
  std::string s = line;
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return std::nullopt;
  if (s[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, std::string("bad JSON: ") + e.what());
    }
    SolveInput in;
    if (j.contains("m")) {
      const auto& m = j["m"];
      if (!m.is_array() || m.size() != 3) throw ParseError(line_no, "\"m\" must be 3 rows");
      in.is_matrix = true;
      for (int r = 0; r < 3; ++r) {
        if (!m[r].is_array() || m[r].size() != 3)
          throw ParseError(line_no, "\"m\" rows must have 3 entries");
        for (int c = 0; c < 3; ++c)
          in.matrix(r, c) = detail::json_complex(m[r][c], line_no);
      }
      return in;
    }
    if (j.contains("b") && j.contains("c") && j.contains("d")) {
      in.cubic = {detail::json_complex(j["b"], line_no), detail::json_complex(j["c"], line_no),
                  detail::json_complex(j["d"], line_no)};
      return in;
    }
    throw ParseError(line_no, "JSON object needs keys b,c,d or m");
  }

  std::istringstream is(s);
  std::vector<double> vals;
  double v;
  while (is >> v) vals.push_back(v);
  if (!is.eof()) throw ParseError(line_no, "not a decimal number");
  SolveInput in;
  if (vals.size() == 6) {
    in.cubic = {{vals[0], vals[1]}, {vals[2], vals[3]}, {vals[4], vals[5]}};
    return in;
  }
  if (vals.size() == 18) {
    in.is_matrix = true;
    for (int k = 0; k < 9; ++k) in.matrix.m[k] = {vals[2 * k], vals[2 * k + 1]};
    return in;
  }
  throw ParseError(line_no, "expected 6 (cubic) or 18 (matrix) decimals, got " +
                                std::to_string(vals.size()));
}

struct SolveRecord {
  SolveInput input;
  Method method = Method::uniform;
  RootSet<double> roots;
  bool has_invariants = false;
  CubicInvariants<double> invariants;
  double residual_max = 0;
  std::int64_t wall_time_ns = 0;
  std::string degeneracy;  // names the triggering band on fallback
  std::string error;       // per-record solver error, roots absent when set
};

namespace detail {

inline void append_input(std::string& out, const SolveInput& in) {
  out += "\"input\":{";
  if (in.is_matrix) {
    out += "\"m\":[";
    for (int r = 0; r < 3; ++r) {
      out += r ? ",[" : "[";
      for (int c = 0; c < 3; ++c) {
        if (c) out += ",";
        out += fmt_complex(in.matrix(r, c));
      }
      out += "]";
    }
    out += "]";
  } else {
    out += "\"b\":" + fmt_complex(in.cubic.b) + ",\"c\":" + fmt_complex(in.cubic.c) +
           ",\"d\":" + fmt_complex(in.cubic.d);
  }
  out += "}";
}

}  // namespace detail

inline std::string record_to_jsonl(const SolveRecord& r) {
  std::string out = "{";
  detail::append_input(out, r.input);
  out += ",\"method\":\"";
  out += to_string(r.method);
  out += "\"";
  if (r.error.empty()) {
    out += ",\"roots\":[" + fmt_complex(r.roots.roots[0]) + "," +
           fmt_complex(r.roots.roots[1]) + "," + fmt_complex(r.roots.roots[2]) + "]";
    out += ",\"residuals\":[" + fmt17(r.roots.residuals[0]) + "," +
           fmt17(r.roots.residuals[1]) + "," + fmt17(r.roots.residuals[2]) + "]";
    out += ",\"multiplicity\":[";
    for (int i = 0; i < 3; ++i) {
      if (i) out += ",";
      out += std::string("\"") + to_string(r.roots.tags[i]) + "\"";
    }
    out += "]";
    if (r.has_invariants) {
      const auto& v = r.invariants;
      out += ",\"invariants\":{";
      out += "\"delta_o\":" + fmt_complex(v.delta_o);
      out += ",\"delta_l\":" + fmt_complex(v.delta_l);
      out += ",\"d_o\":" + fmt_complex(v.d_o);
      out += ",\"small_delta_l\":" + fmt_complex(v.small_delta_l);
      out += ",\"a1\":" + fmt_complex(v.a1);
      out += ",\"a2\":" + fmt_complex(v.a2);
      out += ",\"r1\":" + fmt_complex(v.r1);
      out += ",\"r2\":" + fmt_complex(v.r2);
      out += ",\"o\":" + fmt_complex(v.o);
      out += ",\"l_o\":" + fmt_complex(v.l_o);
      out += "}";
    }
    out += ",\"residual_max\":" + fmt17(r.residual_max);
  } else {
    out += ",\"error\":" + nlohmann::json(r.error).dump();
  }
  if (!r.degeneracy.empty()) out += ",\"degeneracy\":" + nlohmann::json(r.degeneracy).dump();
  out += ",\"wall_time_ns\":" + std::to_string(r.wall_time_ns);
  out += "}";
  return out;
}

struct CheckRecord {
  SolveInput input;
  CriterionResult<double> criterion;
  std::int64_t wall_time_ns = 0;
  std::string error;
};

inline std::string check_record_to_jsonl(const CheckRecord& r) {
  std::string out = "{";
  detail::append_input(out, r.input);
  if (r.error.empty()) {
    const auto& c = r.criterion;
    out += ",\"criterion\":{\"magnitudes\":[" + fmt17(c.magnitudes[0]) + "," +
           fmt17(c.magnitudes[1]) + "," + fmt17(c.magnitudes[2]) + "]";
    out += ",\"fired_count\":" + std::to_string(c.fired_count);
    out += ",\"double_pair\":";
    if (c.double_pair)
      out += "[" + std::to_string(c.double_pair->first) + "," +
             std::to_string(c.double_pair->second) + "]";
    else
      out += "null";
    out += std::string(",\"triple_root\":") + (c.triple_root ? "true" : "false") + "}";
  } else {
    out += ",\"error\":" + nlohmann::json(r.error).dump();
  }
  out += ",\"wall_time_ns\":" + std::to_string(r.wall_time_ns);
  out += "}";
  return out;
}

}  // namespace cubix
