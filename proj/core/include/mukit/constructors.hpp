#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mukit/matrix.hpp"

namespace mukit {

enum class Parity { kEven, kOdd };

/// Parameters of the two circulant templates with known spectral norm.
///
/// Even, n = 2(1 + alphas.size()):
///   first row [z, conj z, a2 z, a2 conj z, ..., ak z, ak conj z]
/// Odd, n = 2(1 + alphas.size()) + 1: the even row followed by alpha1.
/// Here z = a + b i and alphas holds a2..ak.
struct CirculantSpec {
  Parity parity = Parity::kEven;
  double a = 1.0;
  double b = 0.0;
  double alpha1 = 0.0;  // odd only
  std::vector<double> alphas;

  std::size_t size() const;
  std::vector<Complex> first_row() const;
  /// 2a(1 + sum alphas) (+ alpha1 when odd): the constant row sum, and the
  /// spectral norm whenever the template's norm condition holds.
  double row_sum() const;
  /// No DFT eigenvalue exceeds the row sum in modulus.
  bool norm_equals_row_sum() const;
  void validate() const;
};

struct CirculantResult {
  Matrix matrix;
  double row_sum = 0.0;  // delta_e or delta_o
  std::optional<std::string> warning;
};

/// Row i is the first row cyclically shifted right by i.
Matrix circulant(std::span<const Complex> first_row);

/// Eigenvalues lambda_j = sum_k row[k] w^{jk}, w = e^{2 pi i / n}, for
/// j = 0..n-1, by direct DFT.
std::vector<Complex> circulant_eigs(std::span<const Complex> first_row);

/// Even template. With `validate_norm` and a >= |b| the norm identity is
/// asserted; with a < |b| a warning is attached instead.
CirculantResult circulant_even(double a, double b, std::span<const double> alphas,
                               bool validate_norm = true);
CirculantResult circulant_odd(double a, double b, double alpha1, std::span<const double> alphas);
CirculantResult build_circulant(const CirculantSpec& spec, bool validate_norm = true);

/// sum_i w_i P_i over explicit permutations (perm[i] = column of the 1 in
/// row i). Weights must be positive; they are used as given.
Matrix permutation_combination(std::span<const std::vector<std::size_t>> perms,
                               std::span<const double> weights);

/// k seeded uniform random permutations mixed with normalized exponential
/// weights. Always doubly stochastic.
Matrix birkhoff(std::size_t n, std::size_t k, std::uint64_t seed);

/// (-1)^{i+j} for odd n: rank one with spectral norm n. Row and column
/// sums alternate between +1 and -1.
Matrix checkerboard(std::size_t n);

struct DoublyStochasticTerm {
  double weight = 0.0;
  Matrix matrix;
};

struct CirculantTerm {
  double weight = 0.0;
  CirculantSpec spec;
};

struct ConeCombination {
  Matrix x;
  double row_sum = 0.0;
};

/// Nonnegative combination of doubly stochastic matrices and norm-certified
/// circulants. The result is radial with constant row and column sum r equal
/// to its spectral norm; this is verified before returning.
ConeCombination cone_combo(std::span<const DoublyStochasticTerm> ds_terms,
                           std::span<const CirculantTerm> cir_terms);

/// delta (W_theta X W_gamma)^m with X from `cone_combo`.
struct OmegaCertificate {
  std::size_t n = 0;
  double delta = 1.0;
  std::vector<double> theta;
  std::vector<double> gamma;
  unsigned m = 1;
  std::vector<DoublyStochasticTerm> ds_terms;
  std::vector<CirculantTerm> cir_terms;
  double r = 0.0;  // filled by omega_build

  double expected_mu() const;
  /// m == 1, or W_gamma W_theta is a multiple of the identity. Outside
  /// these cases delta r^m is only an upper bound on mu.
  bool exact_mu_guaranteed() const;
  void validate() const;
};

struct OmegaInstance {
  Matrix matrix;
  OmegaCertificate certificate;  // with r populated
};

OmegaInstance omega_build(const OmegaCertificate& cert);

/// Complex Gaussian entries (unit variance per component), seeded.
Matrix random_matrix(std::size_t n, std::uint64_t seed);

/// Checks nonnegative real entries with row and column sums 1 within `tol`.
bool is_doubly_stochastic(const Matrix& d, double tol = 1e-10);

}  // namespace mukit
