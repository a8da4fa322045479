#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cubix {

struct DegenerateDenominator : std::runtime_error {
  explicit DegenerateDenominator(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateInput : std::runtime_error {
  explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateMatrix : std::runtime_error {
  explicit DegenerateMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateQuadratic : std::runtime_error {
  explicit DegenerateQuadratic(const std::string& what) : std::runtime_error(what) {}
};

struct AmbiguousCriterion : std::runtime_error {
  explicit AmbiguousCriterion(const std::string& what) : std::runtime_error(what) {}
};

// Simultaneous iteration stalled; carries the per-sweep update norms.
struct NonConvergence : std::runtime_error {
  std::vector<double> trace;
  NonConvergence(const std::string& what, std::vector<double> t)
      : std::runtime_error(what), trace(std::move(t)) {}
};

struct ParseError : std::runtime_error {
  long line = 0;
  ParseError(long line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

}  // namespace cubix
