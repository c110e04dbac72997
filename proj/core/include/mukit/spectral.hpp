#pragma once

#include <vector>

#include "mukit/error.hpp"
#include "mukit/matrix.hpp"

namespace mukit {

/// Thrown when the shifted QR iteration exhausts its budget. The eigenvalues
/// that did deflate are kept so callers can still inspect them.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::vector<Complex> partial)
      : Error(ErrorCode::kNumerical, what), partial_(std::move(partial)) {}

  const std::vector<Complex>& partial() const noexcept { return partial_; }

 private:
  std::vector<Complex> partial_;
};

struct HermitianEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k pairs with values[k]
};

/// Cyclic Jacobi eigendecomposition. Only the upper triangle of `h` is
/// trusted; the matrix is symmetrized before iterating.
HermitianEigen hermitian_eigen(const Matrix& h);

/// All eigenvalues with multiplicity, ordered by modulus descending and then
/// by principal argument ascending. Moduli within 1e-10 (relative) count as
/// ties for the argument ordering.
std::vector<Complex> eigenvalues(const Matrix& m);

std::vector<double> singular_values(const Matrix& m);
double spectral_norm(const Matrix& m);
double spectral_radius(const Matrix& m);
double frobenius_norm(const Matrix& m);

struct NormalityCheck {
  bool normal;
  double residual;  // ||M*M - MM*||_F
};

/// `tol` is relative to `max(1, ||M||_F^2)`.
NormalityCheck is_normal(const Matrix& m, double tol = 1e-10);

struct SpectralSummary {
  double sigma_max;
  double rho;
  std::vector<double> singular_values;
  double frobenius;
};

SpectralSummary spectral_summary(const Matrix& m);

/// Dominant eigenvalue with unit right and left eigenvectors
/// (`M x = lambda x`, `y^H M = lambda y^H`).
struct DominantEigenpair {
  Complex value;
  std::vector<Complex> right;
  std::vector<Complex> left;
};

DominantEigenpair dominant_eigenpair(const Matrix& m);

Complex determinant(const Matrix& m);

/// Unitary factor Q of the polar decomposition X = Q P. Rank-deficient inputs
/// are completed to a unitary; the zero matrix maps to the identity.
Matrix polar_factor(const Matrix& x);

/// Orthonormalizes the columns of `x` (modified Gram-Schmidt), completing
/// with standard basis vectors where a column is numerically dependent.
Matrix orthonormalize_columns(const Matrix& x);

}  // namespace mukit
