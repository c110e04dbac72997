#pragma once

#include <optional>
#include <vector>

#include "mukit/block_structure.hpp"
#include "mukit/matrix.hpp"

namespace mukit {

struct OmegaCertificate;

/// Default relative tolerance for "all row sums are equal".
inline constexpr double kSumTol = 1e-9;
/// Tolerance for the extremality test |c| = sigma. Matrices whose margin
/// falls between this and kSumTol are rejected by the exact-mu oracles.
inline constexpr double kExtremalTol = 1e-8;

struct StochasticProfile {
  std::vector<Complex> row_sums;
  std::vector<Complex> col_sums;
  std::optional<Complex> constant_row;
  std::optional<Complex> constant_col;
  double sigma = 0.0;
  double scale = 1.0;  // max(1, max|entry| * n), the tolerance unit
  bool equimodular_rows = false;
  bool equimodular_cols = false;
  std::vector<double> row_phases;  // arg(r_i); populated when equimodular_rows
  std::vector<double> col_phases;  // arg(c_j); populated when equimodular_cols
};

/// Row/column sums and their constancy flags. Sums count as constant when
/// their spread is at most `tol * scale`; they are equimodular when every
/// | |r_i| - sigma | is at most `tol * scale`.
StochasticProfile profile(const Matrix& a, double tol = kSumTol);

/// sigma - |c| for a matrix with constant row sum c. Never negative beyond
/// rounding: |c| <= sigma holds for every such matrix.
double check_row_bound(const Matrix& a);

struct ExtremalCheck {
  bool pass;
  double residual;  // max_j |c_j - c|
};

/// For a constant row sum c with |c| = sigma, the column sums must all equal
/// c as well.
ExtremalCheck check_extremal_doubly(const Matrix& a, double tol = kExtremalTol);

/// Exact mu(A^m) = sigma^m for any structure when the constant row sum has
/// modulus sigma.
double mu_exact_power(const Matrix& a, unsigned m, const BlockStructure& b);

/// sigma^m for matrices whose row (or column) sums all have modulus sigma and
/// whose structure contains the matching phase diagonal. For m = 1 this is
/// always mu(A). For m > 1 the value is the closed form only; it is reached
/// when the phase diagonal is a multiple of the identity and can exceed
/// mu(A^m) otherwise (see `equimodular_power_exact`).
double mu_exact_equimodular(const Matrix& a, unsigned m, const BlockStructure& b);

/// True when `mu_exact_equimodular(a, m, b)` is guaranteed to equal mu(A^m):
/// m == 1, or the relevant phases are all equal.
bool equimodular_power_exact(const Matrix& a, unsigned m);

enum class FactorSide { kRow, kColumn };

struct Factorization {
  double sigma = 0.0;
  Matrix w;       // diagonal phase matrix (W_theta or W_gamma)
  Matrix d_core;  // 1-generalized doubly stochastic, norm 1
  FactorSide side = FactorSide::kRow;

  /// sigma W D (row side) or sigma D W (column side).
  Matrix reassemble() const;
};

Factorization decompose_equimodular(const Matrix& a, FactorSide side);

struct EntryBound {
  bool pass;
  double max_modulus;
};

/// Entries of a 1-generalized doubly stochastic matrix of norm 1 are bounded
/// by 1 in modulus. Throws kPrecondition when `d` is not such a matrix.
EntryBound entry_bound_check(const Matrix& d);

/// delta * r^m for an Omega-class certificate. The structure has to contain
/// both phase diagonals.
double mu_exact_class(const OmegaCertificate& cert, const BlockStructure& b);

}  // namespace mukit
