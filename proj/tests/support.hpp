#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "mukit/matrix.hpp"

namespace mukit::test {

inline const Complex kI{0.0, 1.0};

inline Matrix matrix_a() {
  const Complex w = Complex(1.0, std::sqrt(3.0)) / 40.0;
  return Matrix{{kI / 20.0, 0.0, kI / 20.0}, {-kI / 20.0, -kI / 20.0, 0.0}, {0.0, w, w}};
}

inline Matrix half_core() { return Matrix{{0.5, 0.0, 0.5}, {0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}}; }

inline Matrix matrix_co() {
  const Complex lo = Complex(0.5, -std::sqrt(3.0) / 2) / 10.0;
  const Complex hi = Complex(0.5, std::sqrt(3.0) / 2) / 10.0;
  return Matrix{{lo, hi, 0.9}, {0.9, lo, hi}, {hi, 0.9, lo}};
}

inline Matrix matrix_ce() {
  const Complex p{1.0, -0.5}, q{1.0, 0.5}, s{1.0 / 3, -1.0 / 6}, t{1.0 / 3, 1.0 / 6};
  return Matrix{{p, q, s, t}, {t, p, q, s}, {s, t, p, q}, {q, s, t, p}};
}

inline Matrix matrix_e() {
  const Complex p{1, 2}, q{1, -2}, s{3, 6}, t{3, -6};
  return Matrix{{p, q, s, t}, {t, p, q, s}, {s, t, p, q}, {q, s, t, p}};
}

inline Matrix matrix_s_ds() {
  return Matrix{{0.25, 0.0, 0.375, 0.375},
                {0.25, 0.0, 0.375, 0.375},
                {0.25, 0.5, 5.0 / 32, 3.0 / 32},
                {0.25, 0.5, 3.0 / 32, 5.0 / 32}};
}

inline Matrix matrix_s() { return matrix_ce() + matrix_s_ds(); }

inline Matrix matrix_checkerboard5() {
  Matrix d(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) d(i, j) = (i + j) % 2 == 0 ? 1.0 : -1.0;
  return d;
}

inline Matrix gaussian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(n);
  for (auto& z : m.entries()) z = {g(rng), g(rng)};
  return m;
}

// Closed-form 2x2 spectrum.
inline std::vector<Complex> eig2(const Matrix& m) {
  const Complex tr = m(0, 0) + m(1, 1);
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

// Cubic roots by Durand-Kerner on the characteristic polynomial.
inline std::vector<Complex> eig3(const Matrix& m) {
  const Complex tr = m(0, 0) + m(1, 1) + m(2, 2);
  const Complex minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                         m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  const Complex det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                      m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                      m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  auto p = [&](Complex z) { return ((z - tr) * z + minors) * z - det; };
  const double radius = 1.0 + std::abs(tr) + std::abs(minors) + std::abs(det);
  std::vector<Complex> z{Complex(0.4, 0.9) * radius, std::pow(Complex(0.4, 0.9), 2) * radius,
                         std::pow(Complex(0.4, 0.9), 3) * radius};
  for (int it = 0; it < 2000; ++it) {
    double step = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      Complex denom = 1.0;
      for (std::size_t j = 0; j < 3; ++j)
        if (j != i) denom *= z[i] - z[j];
      const Complex dz = p(z[i]) / denom;
      z[i] -= dz;
      step = std::max(step, std::abs(dz));
    }
    if (step <= 1e-15 * radius) break;
  }
  return z;
}

inline double rho3(const Matrix& m) {
  double best = 0.0;
  for (const auto& z : eig3(m)) best = std::max(best, std::abs(z));
  return best;
}

// Grid over every angle (none held fixed) of rho(M diag(e^{i phi})), 3x3 only.
inline double naive_grid_mu3(const Matrix& m, int grid) {
  double best = 0.0;
  const double h = 2.0 * std::numbers::pi / grid;
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b)
      for (int c = 0; c < grid; ++c) {
        Matrix x = m;
        const Complex ph[3] = {std::polar(1.0, a * h), std::polar(1.0, b * h), std::polar(1.0, c * h)};
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) x(i, j) *= ph[j];
        best = std::max(best, rho3(x));
      }
  return best;
}

inline std::vector<Complex> dft(const std::vector<Complex>& row) {
  const std::size_t n = row.size();
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      out[j] += row[k] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j * k % n) / n);
  return out;
}

// Largest distance in a greedy nearest-neighbour pairing of two multisets.
inline double multiset_gap(const std::vector<Complex>& a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& z : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](Complex p, Complex q) { return std::abs(p - z) < std::abs(q - z); });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

inline double max_dev(const std::vector<Complex>& v, Complex target) {
  double worst = 0.0;
  for (const auto& z : v) worst = std::max(worst, std::abs(z - target));
  return worst;
}

}  // namespace mukit::test
