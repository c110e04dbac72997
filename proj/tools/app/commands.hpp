#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mukit/mu.hpp"

namespace mukit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,
  kExitInput = 2,
  kExitDimension = 3,
  kExitNonConvergence = 4,
  kExitUnsupported = 5,
};

/// Default optimizer options with MUKIT_TOL applied when set.
MuOptions options_from_env();

struct AnalyzeArgs {
  std::filesystem::path matrix;
  std::vector<std::string> structures;
  unsigned m = 1;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out;  // stdout when absent
};

struct BuildArgs {
  std::string family;
  double a = 1.0;
  double b = 0.0;
  double alpha1 = 0.0;
  std::vector<double> alphas;
  std::size_t n = 0;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> cert;
  std::filesystem::path out;
};

struct VerifyArgs {
  int grid = 256;
  double co_offset = 0.0;
  std::vector<int> only;  // criteria numbers; all when empty
};

struct OracleArgs {
  std::filesystem::path matrix;
  std::string structure;
  int grid = 256;
};

std::vector<std::string> build_families();

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);
int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err);

/// Sidecar written next to a built matrix file.
std::filesystem::path meta_path(const std::filesystem::path& matrix_path);

}  // namespace mukit::cli
