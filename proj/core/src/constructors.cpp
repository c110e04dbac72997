#include "mukit/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "mukit/error.hpp"
#include "mukit/spectral.hpp"

namespace mukit {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kInput, std::string(name) + " must be a positive finite number");
  }
}

double norm_tolerance(double reference) { return 1e-9 * std::max(1.0, reference); }

}  // namespace

std::size_t CirculantSpec::size() const {
  return 2 * (1 + alphas.size()) + (parity == Parity::kOdd ? 1 : 0);
}

std::vector<Complex> CirculantSpec::first_row() const {
  const Complex z(a, b);
  std::vector<Complex> row{z, std::conj(z)};
  for (double alpha : alphas) {
    row.push_back(alpha * z);
    row.push_back(alpha * std::conj(z));
  }
  if (parity == Parity::kOdd) row.emplace_back(alpha1);
  return row;
}

double CirculantSpec::row_sum() const {
  const double base = 2.0 * a * (1.0 + std::accumulate(alphas.begin(), alphas.end(), 0.0));
  return parity == Parity::kOdd ? base + alpha1 : base;
}

bool CirculantSpec::norm_equals_row_sum() const {
  // Circulants are normal, so the norm is the largest |lambda_j|; lambda_0 is
  // the (positive) row sum.
  const auto eig = circulant_eigs(first_row());
  const double lead = row_sum();
  for (const auto& l : eig) {
    if (std::abs(l) > lead * (1.0 + 1e-12)) return false;
  }
  return true;
}

void CirculantSpec::validate() const {
  require_positive(a, "a");
  if (!std::isfinite(b)) throw Error(ErrorCode::kInput, "b must be finite");
  for (double alpha : alphas) require_positive(alpha, "alpha");
  if (parity == Parity::kOdd) require_positive(alpha1, "alpha1");
}

Matrix circulant(std::span<const Complex> first_row) {
  const std::size_t n = first_row.size();
  if (n == 0) throw Error(ErrorCode::kInput, "circulant needs a non-empty first row");
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = first_row[(j + n - i) % n];
  return out;
}

std::vector<Complex> circulant_eigs(std::span<const Complex> first_row) {
  const std::size_t n = first_row.size();
  if (n == 0) throw Error(ErrorCode::kInput, "circulant needs a non-empty first row");
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc{};
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      acc += first_row[k] * std::polar(1.0, angle);
    }
    out[j] = acc;
  }
  return out;
}

CirculantResult build_circulant(const CirculantSpec& spec, bool validate_norm) {
  spec.validate();
  const auto row = spec.first_row();
  CirculantResult out{circulant(row), spec.row_sum(), std::nullopt};
  if (spec.parity == Parity::kEven && spec.a < std::abs(spec.b)) {
    out.warning = "a < |b|: the spectral norm exceeds the row sum";
    return out;
  }
  if (!spec.norm_equals_row_sum()) {
    out.warning = "a non-principal DFT eigenvalue dominates: the spectral norm exceeds the row sum";
    return out;
  }
  if (validate_norm) {
    const double sigma = spectral_norm(out.matrix);
    if (std::abs(sigma - out.row_sum) > norm_tolerance(out.row_sum)) {
      throw Error(ErrorCode::kNumerical, "circulant norm " + std::to_string(sigma) +
                                             " disagrees with its row sum " + std::to_string(out.row_sum));
    }
  }
  return out;
}

CirculantResult circulant_even(double a, double b, std::span<const double> alphas, bool validate_norm) {
  CirculantSpec spec{Parity::kEven, a, b, 0.0, {alphas.begin(), alphas.end()}};
  return build_circulant(spec, validate_norm);
}

CirculantResult circulant_odd(double a, double b, double alpha1, std::span<const double> alphas) {
  CirculantSpec spec{Parity::kOdd, a, b, alpha1, {alphas.begin(), alphas.end()}};
  return build_circulant(spec, true);
}

Matrix permutation_combination(std::span<const std::vector<std::size_t>> perms, std::span<const double> weights) {
  if (perms.empty() || perms.size() != weights.size()) {
    throw Error(ErrorCode::kInput, "need one weight per permutation and at least one permutation");
  }
  const std::size_t n = perms.front().size();
  if (n == 0) throw Error(ErrorCode::kInput, "permutations must be non-empty");
  Matrix out(n);
  for (std::size_t t = 0; t < perms.size(); ++t) {
    require_positive(weights[t], "permutation weight");
    const auto& p = perms[t];
    std::vector<bool> seen(n, false);
    if (p.size() != n) throw Error(ErrorCode::kDimensionMismatch, "permutation size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] >= n || seen[p[i]]) throw Error(ErrorCode::kInput, "not a permutation");
      seen[p[i]] = true;
      out(i, p[i]) += weights[t];
    }
  }
  return out;
}

Matrix birkhoff(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kInput, "birkhoff: n must be >= 1");
  if (k < 1) throw Error(ErrorCode::kInput, "birkhoff: k must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<std::size_t>> perms(k, std::vector<std::size_t>(n));
  std::vector<double> weights(k);
  double total = 0.0;
  for (std::size_t t = 0; t < k; ++t) {
    std::iota(perms[t].begin(), perms[t].end(), std::size_t{0});
    std::shuffle(perms[t].begin(), perms[t].end(), rng);
    // 1 - u lies in (0, 1], so the weight is finite and nonnegative; add a
    // floor so it stays strictly positive.
    weights[t] = -std::log(1.0 - unit(rng)) + 1e-12;
    total += weights[t];
  }
  for (auto& w : weights) w /= total;
  return permutation_combination(perms, weights);
}

Matrix checkerboard(std::size_t n) {
  if (n == 0 || n % 2 == 0) throw Error(ErrorCode::kInput, "checkerboard needs an odd dimension");
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = (i + j) % 2 == 0 ? 1.0 : -1.0;
  return out;
}

bool is_doubly_stochastic(const Matrix& d, double tol) {
  if (d.empty()) return false;
  for (const auto& z : d.entries()) {
    if (z.real() < -tol || std::abs(z.imag()) > tol) return false;
  }
  for (const auto& s : d.row_sums())
    if (std::abs(s - 1.0) > tol) return false;
  for (const auto& s : d.col_sums())
    if (std::abs(s - 1.0) > tol) return false;
  return true;
}

ConeCombination cone_combo(std::span<const DoublyStochasticTerm> ds_terms,
                           std::span<const CirculantTerm> cir_terms) {
  std::size_t n = 0;
  if (!ds_terms.empty()) {
    n = ds_terms.front().matrix.size();
  } else if (!cir_terms.empty()) {
    n = cir_terms.front().spec.size();
  } else {
    throw Error(ErrorCode::kInput, "cone combination needs at least one term");
  }

  ConeCombination out{Matrix(n), 0.0};
  for (const auto& term : ds_terms) {
    if (term.matrix.size() != n) throw Error(ErrorCode::kDimensionMismatch, "doubly stochastic term size mismatch");
    if (!(term.weight >= 0.0) || !std::isfinite(term.weight)) {
      throw Error(ErrorCode::kInput, "cone weights must be nonnegative");
    }
    if (!is_doubly_stochastic(term.matrix)) {
      throw Error(ErrorCode::kPrecondition, "term is not doubly stochastic");
    }
    out.x += term.matrix * Complex(term.weight);
    out.row_sum += term.weight;
  }
  for (const auto& term : cir_terms) {
    term.spec.validate();
    if (term.spec.size() != n) throw Error(ErrorCode::kDimensionMismatch, "circulant term size mismatch");
    if (!(term.weight >= 0.0) || !std::isfinite(term.weight)) {
      throw Error(ErrorCode::kInput, "cone weights must be nonnegative");
    }
    if (term.spec.parity == Parity::kEven && term.spec.a < std::abs(term.spec.b)) {
      throw Error(ErrorCode::kPrecondition, "even circulant with a < |b| has norm above its row sum");
    }
    if (!term.spec.norm_equals_row_sum()) {
      throw Error(ErrorCode::kPrecondition, "circulant term has norm above its row sum");
    }
    out.x += circulant(term.spec.first_row()) * Complex(term.weight);
    out.row_sum += term.weight * term.spec.row_sum();
  }

  const double r = out.row_sum;
  const double sum_tol = 1e-10 * std::max(1.0, r);
  for (const auto& s : out.x.row_sums())
    if (std::abs(s - r) > sum_tol) throw Error(ErrorCode::kNumerical, "cone combination row sums drift from r");
  for (const auto& s : out.x.col_sums())
    if (std::abs(s - r) > sum_tol) throw Error(ErrorCode::kNumerical, "cone combination column sums drift from r");
  const double sigma = spectral_norm(out.x);
  if (std::abs(sigma - r) > 1e-8 * std::max(1.0, r)) {
    throw Error(ErrorCode::kNumerical, "cone combination norm " + std::to_string(sigma) + " differs from r");
  }
  return out;
}

double OmegaCertificate::expected_mu() const { return delta * std::pow(r, static_cast<double>(m)); }

bool OmegaCertificate::exact_mu_guaranteed() const {
  if (m == 1) return true;
  for (std::size_t i = 1; i < n; ++i) {
    const double gap = std::remainder((theta[i] + gamma[i]) - (theta[0] + gamma[0]), 2.0 * std::numbers::pi);
    if (std::abs(gap) > 1e-10) return false;
  }
  return true;
}

void OmegaCertificate::validate() const {
  if (n == 0) throw Error(ErrorCode::kInput, "certificate dimension must be >= 1");
  require_positive(delta, "delta");
  if (m < 1) throw Error(ErrorCode::kInput, "certificate power m must be >= 1");
  if (theta.size() != n || gamma.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "theta and gamma need n phases each");
  }
  for (double p : theta)
    if (!std::isfinite(p)) throw Error(ErrorCode::kInput, "non-finite phase");
  for (double p : gamma)
    if (!std::isfinite(p)) throw Error(ErrorCode::kInput, "non-finite phase");
}

OmegaInstance omega_build(const OmegaCertificate& cert) {
  cert.validate();
  const auto cone = cone_combo(cert.ds_terms, cert.cir_terms);
  if (cone.x.size() != cert.n) throw Error(ErrorCode::kDimensionMismatch, "certificate terms do not match n");
  const Matrix inner = Matrix::phase_diagonal(cert.theta) * cone.x * Matrix::phase_diagonal(cert.gamma);
  OmegaInstance out{inner.power(cert.m) * Complex(cert.delta), cert};
  out.certificate.r = cone.row_sum;
  return out;
}

Matrix random_matrix(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kInput, "random matrix needs n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix out(n);
  for (auto& z : out.entries()) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = Complex(re, im);
  }
  return out;
}

}  // namespace mukit
