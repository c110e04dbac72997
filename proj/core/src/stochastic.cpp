#include "mukit/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mukit/constructors.hpp"
#include "mukit/error.hpp"
#include "mukit/spectral.hpp"

namespace mukit {
namespace {

constexpr double kColumnTol = 1e-6;

void require_dims(const Matrix& a, const BlockStructure& b) {
  if (a.size() != b.n()) throw Error(ErrorCode::kDimensionMismatch, "matrix and structure sizes differ");
}

bool equal_phases(std::span<const double> phases) {
  for (double p : phases) {
    if (std::abs(std::remainder(p - phases.front(), 2.0 * std::numbers::pi)) > 1e-10) return false;
  }
  return true;
}

std::optional<Complex> constant_value(const std::vector<Complex>& sums, double limit) {
  Complex mean{};
  for (const auto& s : sums) mean += s;
  mean /= static_cast<double>(sums.size());
  for (const auto& s : sums)
    if (std::abs(s - mean) > limit) return std::nullopt;
  return mean;
}

// Extremal constant row sum: returns c, or throws `code`.
Complex extremal_row_sum(const Matrix& a, ErrorCode code, double tol) {
  const auto p = profile(a);
  if (!p.constant_row) throw Error(code, "row sums are not constant");
  if (std::abs(std::abs(*p.constant_row) - p.sigma) > tol * p.scale) {
    throw Error(code, "|c| differs from the spectral norm");
  }
  return *p.constant_row;
}

}  // namespace

StochasticProfile profile(const Matrix& a, double tol) {
  a.validate();
  StochasticProfile p;
  const std::size_t n = a.size();
  p.row_sums = a.row_sums();
  p.col_sums = a.col_sums();
  p.sigma = spectral_norm(a);
  p.scale = std::max(1.0, a.max_abs() * static_cast<double>(n));
  const double limit = tol * p.scale;
  p.constant_row = constant_value(p.row_sums, limit);
  p.constant_col = constant_value(p.col_sums, limit);

  auto equimodular = [&](const std::vector<Complex>& sums, std::vector<double>& phases) {
    for (const auto& s : sums)
      if (std::abs(std::abs(s) - p.sigma) > limit) return false;
    phases.resize(n);
    for (std::size_t i = 0; i < n; ++i) phases[i] = p.sigma == 0.0 ? 0.0 : std::arg(sums[i]);
    return true;
  };
  p.equimodular_rows = equimodular(p.row_sums, p.row_phases);
  p.equimodular_cols = equimodular(p.col_sums, p.col_phases);
  return p;
}

double check_row_bound(const Matrix& a) {
  const auto p = profile(a);
  if (!p.constant_row) throw Error(ErrorCode::kPrecondition, "row sums are not constant");
  return p.sigma - std::abs(*p.constant_row);
}

ExtremalCheck check_extremal_doubly(const Matrix& a, double tol) {
  const Complex c = extremal_row_sum(a, ErrorCode::kPrecondition, tol);
  const auto p = profile(a);
  double residual = 0.0;
  for (const auto& s : p.col_sums) residual = std::max(residual, std::abs(s - c));
  return {residual <= kColumnTol * p.scale, residual};
}

double mu_exact_power(const Matrix& a, unsigned m, const BlockStructure& b) {
  require_dims(a, b);
  if (m < 1) throw Error(ErrorCode::kInput, "power must be >= 1");
  extremal_row_sum(a, ErrorCode::kNotInClass, kExtremalTol);
  return std::pow(spectral_norm(a), static_cast<double>(m));
}

double mu_exact_equimodular(const Matrix& a, unsigned m, const BlockStructure& b) {
  require_dims(a, b);
  if (m < 1) throw Error(ErrorCode::kInput, "power must be >= 1");
  const auto p = profile(a, kExtremalTol);
  if (!p.equimodular_rows && !p.equimodular_cols) {
    throw Error(ErrorCode::kNotInClass, "neither row nor column sums have modulus sigma");
  }
  const bool rows_ok = p.equimodular_rows && contains_diagonal(b, p.row_phases);
  const bool cols_ok = p.equimodular_cols && contains_diagonal(b, p.col_phases);
  if (!rows_ok && !cols_ok) {
    throw Error(ErrorCode::kHypothesis, "structure does not contain the phase diagonal of the sums");
  }
  return std::pow(p.sigma, static_cast<double>(m));
}

bool equimodular_power_exact(const Matrix& a, unsigned m) {
  const auto p = profile(a, kExtremalTol);
  if (!p.equimodular_rows && !p.equimodular_cols) return false;
  if (m == 1) return true;
  return (p.equimodular_rows && equal_phases(p.row_phases)) ||
         (p.equimodular_cols && equal_phases(p.col_phases));
}

Matrix Factorization::reassemble() const {
  return side == FactorSide::kRow ? (w * d_core) * Complex(sigma) : (d_core * w) * Complex(sigma);
}

Factorization decompose_equimodular(const Matrix& a, FactorSide side) {
  const auto p = profile(a, kExtremalTol);
  const std::size_t n = a.size();
  Factorization f;
  f.side = side;
  f.sigma = p.sigma;
  if (p.sigma == 0.0) {
    f.w = Matrix::identity(n);
    f.d_core = Matrix(n);
    return f;
  }
  const bool rows = side == FactorSide::kRow;
  if (rows ? !p.equimodular_rows : !p.equimodular_cols) {
    throw Error(ErrorCode::kNotInClass, rows ? "row sums are not equimodular" : "column sums are not equimodular");
  }
  f.w = Matrix::phase_diagonal(rows ? p.row_phases : p.col_phases);
  const Matrix wh = f.w.adjoint();
  f.d_core = (rows ? wh * a : a * wh) * Complex(1.0 / p.sigma);
  return f;
}

EntryBound entry_bound_check(const Matrix& d) {
  const auto p = profile(d);
  const bool unit_sums = p.constant_row && p.constant_col &&
                         std::abs(*p.constant_row - 1.0) <= kSumTol * p.scale &&
                         std::abs(*p.constant_col - 1.0) <= kSumTol * p.scale;
  if (!unit_sums || std::abs(p.sigma - 1.0) > kExtremalTol) {
    throw Error(ErrorCode::kPrecondition, "expected a 1-generalized doubly stochastic matrix of norm 1");
  }
  const double max_mod = d.max_abs();
  return {max_mod <= 1.0 + 1e-9, max_mod};
}

double mu_exact_class(const OmegaCertificate& cert, const BlockStructure& b) {
  cert.validate();
  if (b.n() != cert.n) throw Error(ErrorCode::kDimensionMismatch, "certificate and structure sizes differ");
  if (!contains_diagonal(b, cert.theta) || !contains_diagonal(b, cert.gamma)) {
    throw Error(ErrorCode::kHypothesis, "structure must contain both W_theta and W_gamma");
  }
  const double r = cone_combo(cert.ds_terms, cert.cir_terms).row_sum;
  return cert.delta * std::pow(r, static_cast<double>(cert.m));
}

}  // namespace mukit
