#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mukit {

using Complex = std::complex<double>;

/// Dense square complex matrix stored row-major.
///
/// A default-constructed matrix has dimension 0 and is only useful as a
/// placeholder; every public numerical routine rejects it through
/// `validate()`.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n);
  Matrix(std::size_t n, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t n) { return Matrix(n); }
  static Matrix diagonal(std::span<const Complex> diag);
  static Matrix phase_diagonal(std::span<const double> phases);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix power(unsigned m) const;

  std::vector<Complex> row_sums() const;
  std::vector<Complex> col_sums() const;
  double max_abs() const;
  bool all_finite() const;

  /// Throws `Error{kInput}` unless the matrix is non-empty and finite.
  void validate() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex s);

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(Matrix lhs, Complex s) { return lhs *= s; }
  friend Matrix operator*(Complex s, Matrix rhs) { return rhs *= s; }
  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

std::vector<Complex> operator*(const Matrix& m, std::span<const Complex> v);

/// Largest entrywise modulus of `a - b`; sizes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Default absolute tolerance scale: `max(1, ||m||_F)`.
double tolerance_scale(const Matrix& m);

}  // namespace mukit
