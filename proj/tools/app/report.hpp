#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mukit/block_structure.hpp"
#include "mukit/mu.hpp"
#include "mukit/spectral.hpp"
#include "mukit/stochastic.hpp"

namespace mukit::cli {

struct InputDigest {
  std::size_t n = 0;
  std::string checksum;  // FNV-1a over the raw bits of every (re, im)
  Complex entry_sum;

  friend bool operator==(const InputDigest&, const InputDigest&) = default;
};

InputDigest digest(const Matrix& m);

struct ProfileSummary {
  std::vector<Complex> row_sums;
  std::vector<Complex> col_sums;
  std::optional<Complex> constant_row;
  std::optional<Complex> constant_col;
  double sigma = 0.0;
  bool equimodular_rows = false;
  bool equimodular_cols = false;
  std::vector<double> row_phases;
  std::vector<double> col_phases;

  friend bool operator==(const ProfileSummary&, const ProfileSummary&) = default;
};

struct SpectralSummaryView {
  double sigma_max = 0.0;
  double rho = 0.0;
  std::vector<double> singular_values;
  double frobenius = 0.0;

  friend bool operator==(const SpectralSummaryView&, const SpectralSummaryView&) = default;
};

struct ExactMu {
  double value = 0.0;
  bool guaranteed = false;  // closed form provably equals mu for this m
  bool consistent = false;  // |value - lower| and |value - upper| within 1e-5
  double deviation = 0.0;   // max of those two gaps

  friend bool operator==(const ExactMu&, const ExactMu&) = default;
};

struct StructureResult {
  std::string structure;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_converged = false;
  bool upper_converged = false;
  int lower_iterations = 0;
  int upper_iterations = 0;
  bool mu_near_zero = false;
  Matrix u_witness;
  std::vector<double> d_witness;
  std::optional<Matrix> perturbation;
  double perturbation_norm = 0.0;
  double det_residual = 0.0;  // |det(I + M Delta)|
  std::optional<ExactMu> exact;

  friend bool operator==(const StructureResult&, const StructureResult&) = default;
};

struct ReportFlags {
  bool converged = true;
  bool sandwich_ok = true;     // rho - tol <= lower <= upper + tol <= sigma + tol
  bool certificates_ok = true; // every attached exact value agrees with the bounds

  friend bool operator==(const ReportFlags&, const ReportFlags&) = default;
};

struct AnalysisReport {
  InputDigest input;
  unsigned m = 1;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  ProfileSummary profile;
  SpectralSummaryView spectral;
  std::vector<StructureResult> structures;
  ReportFlags flags;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// Profiles A, then bounds mu(A^m) for each structure. Exact values are
/// attached when the equimodular hypotheses hold for the structure.
AnalysisReport analyze(const Matrix& a, const std::vector<std::string>& structures, unsigned m,
                       const MuOptions& opts);

nlohmann::json report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::json& j);

}  // namespace mukit::cli
