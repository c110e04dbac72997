#include "mukit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mukit/error.hpp"

namespace mukit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInput: return "input";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kNumerical: return "numerical";
    case ErrorCode::kUnsupported: return "unsupported-structure";
    case ErrorCode::kComplexity: return "complexity";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kNotInClass: return "not-in-class";
    case ErrorCode::kHypothesis: return "hypothesis";
    case ErrorCode::kNoPerturbation: return "no-perturbation";
  }
  return "unknown";
}

Matrix::Matrix(std::size_t n) : n_(n), data_(n * n) {}

Matrix::Matrix(std::size_t n, std::vector<Complex> entries)
    : n_(n), data_(std::move(entries)) {
  if (data_.size() != n * n) {
    throw Error(ErrorCode::kInput, "matrix entry count " +
                                       std::to_string(data_.size()) +
                                       " does not match n*n for n=" +
                                       std::to_string(n));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) {
      throw Error(ErrorCode::kInput, "ragged matrix literal");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::phase_diagonal(std::span<const double> phases) {
  Matrix m(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) m(i, i) = std::polar(1.0, phases[i]);
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix Matrix::power(unsigned m) const {
  Matrix result = identity(n_);
  Matrix base = *this;
  while (m > 0) {
    if (m & 1u) result = result * base;
    m >>= 1u;
    if (m > 0) base = base * base;
  }
  return result;
}

std::vector<Complex> Matrix::row_sums() const {
  std::vector<Complex> sums(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) sums[i] += (*this)(i, j);
  return sums;
}

std::vector<Complex> Matrix::col_sums() const {
  std::vector<Complex> sums(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) sums[j] += (*this)(i, j);
  return sums;
}

double Matrix::max_abs() const {
  double out = 0.0;
  for (const auto& z : data_) out = std::max(out, std::abs(z));
  return out;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

void Matrix::validate() const {
  if (n_ == 0) throw Error(ErrorCode::kInput, "matrix must have dimension >= 1");
  if (!all_finite()) throw Error(ErrorCode::kInput, "matrix has non-finite entries");
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (other.n_ != n_) throw Error(ErrorCode::kDimensionMismatch, "matrix sum size mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (other.n_ != n_) throw Error(ErrorCode::kDimensionMismatch, "matrix difference size mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  const std::size_t n = lhs.size();
  if (rhs.size() != n) throw Error(ErrorCode::kDimensionMismatch, "matrix product size mismatch");
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

std::vector<Complex> operator*(const Matrix& m, std::span<const Complex> v) {
  const std::size_t n = m.size();
  if (v.size() != n) throw Error(ErrorCode::kDimensionMismatch, "matrix-vector size mismatch");
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += m(i, j) * v[j];
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "size mismatch");
  double out = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) out = std::max(out, std::abs(ea[k] - eb[k]));
  return out;
}

double tolerance_scale(const Matrix& m) {
  double sum = 0.0;
  for (const auto& z : m.entries()) sum += std::norm(z);
  return std::max(1.0, std::sqrt(sum));
}

}  // namespace mukit
