#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mukit/matrix.hpp"
#include "mukit/mu.hpp"

namespace mukit::cli {

struct Check {
  std::string criterion;  // "G1" .. "G10"
  std::string name;
  std::string expected;
  std::string actual;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct GoldenOptions {
  int grid = 256;                // oracle grid for G8; self-agreement compares grid / 2
  double co_entry_offset = 0.0;  // added to C^o(0, 0) before the G3 checks
  MuOptions mu;
};

struct CriterionSummary {
  std::string criterion;
  std::size_t checks = 0;
  std::size_t failed = 0;
  bool pass() const { return failed == 0; }
};

/// Worked example matrices, entered from their printed entries.
Matrix example_a();
Matrix example_co();
Matrix example_ce();
Matrix example_e();
Matrix example_s();
Matrix example_checkerboard();

std::vector<Check> run_criterion(int criterion, const GoldenOptions& opts);
std::vector<Check> run_golden(const GoldenOptions& opts);

/// One entry per criterion, in first-seen order.
std::vector<CriterionSummary> summarize(const std::vector<Check>& checks);

std::string format_check(const Check& c);

}  // namespace mukit::cli
