#include "mukit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace mukit {
namespace {

constexpr double kDeflationTol = 1e-14;
constexpr int kJacobiMaxSweeps = 60;

// Reduces `h` (row-major n x n) to upper Hessenberg form in place.
void reduce_to_hessenberg(std::vector<Complex>& h, std::size_t n) {
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm2 += std::norm(h[i * n + k]);
    const double xnorm = std::sqrt(norm2);
    if (xnorm == 0.0) continue;
    const Complex x0 = h[(k + 1) * n + k];
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0};
    const Complex alpha = -phase * xnorm;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = h[i * n + k];
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double vnorm = std::sqrt(vnorm2);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;

    for (std::size_t j = k; j < n; ++j) {
      Complex s{};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h[i * n + j];
      s *= 2.0;
      for (std::size_t i = k + 1; i < n; ++i) h[i * n + j] -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = k + 1; j < n; ++j) s += h[i * n + j] * v[j];
      s *= 2.0;
      for (std::size_t j = k + 1; j < n; ++j) h[i * n + j] -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h[i * n + k] = 0.0;
  }
}

struct Givens {
  double c;
  Complex s;
};

// Rotation G = [[c, s], [-conj(s), c]] with G [a; b] = [r; 0].
Givens make_givens(Complex a, Complex b) {
  const double aa = std::abs(a);
  const double r = std::hypot(aa, std::abs(b));
  if (r == 0.0) return {1.0, Complex{}};
  if (aa == 0.0) return {0.0, Complex{1.0}};
  return {aa / r, (a / aa) * std::conj(b) / r};
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half = 0.5 * (a - d);
  const Complex disc = std::sqrt(half * half + b * c);
  const Complex mid = 0.5 * (a + d);
  const Complex l1 = mid + disc;
  const Complex l2 = mid - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

std::vector<Complex> hessenberg_qr_eigenvalues(std::vector<Complex> h, std::size_t n,
                                               double scale) {
  std::vector<Complex> eig(n);
  std::vector<Givens> rot(n);
  auto H = [&](std::size_t i, std::size_t j) -> Complex& { return h[i * n + j]; };

  const int max_total = 100 * static_cast<int>(n);
  int total = 0;
  int since_deflation = 0;
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  while (hi >= 0) {
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(H(lo, lo - 1));
      const double neighbours = std::abs(H(lo, lo)) + std::abs(H(lo - 1, lo - 1));
      if (sub <= kDeflationTol * neighbours || sub <= kDeflationTol * scale) {
        H(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[hi] = H(hi, hi);
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++total > max_total) {
      std::vector<Complex> partial(eig.begin() + hi + 1, eig.end());
      throw NonConvergenceError("shifted QR did not converge within " +
                                    std::to_string(max_total) + " iterations",
                                std::move(partial));
    }
    ++since_deflation;

    Complex shift;
    if (since_deflation % 11 == 10) {
      // Exceptional shift to break cycles.
      shift = H(hi, hi) + 0.75 * std::abs(H(hi, hi - 1));
    } else {
      shift = wilkinson_shift(H(hi - 1, hi - 1), H(hi - 1, hi), H(hi, hi - 1), H(hi, hi));
    }

    for (std::ptrdiff_t k = lo; k <= hi; ++k) H(k, k) -= shift;
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const Givens g = make_givens(H(k, k), H(k + 1, k));
      rot[k] = g;
      for (std::ptrdiff_t j = k; j <= hi; ++j) {
        const Complex x = H(k, j);
        const Complex y = H(k + 1, j);
        H(k, j) = g.c * x + g.s * y;
        H(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const Givens g = rot[k];
      const std::ptrdiff_t last = std::min(k + 2, hi);
      for (std::ptrdiff_t i = lo; i <= last; ++i) {
        const Complex x = H(i, k);
        const Complex y = H(i, k + 1);
        H(i, k) = x * g.c + y * std::conj(g.s);
        H(i, k + 1) = -x * g.s + y * g.c;
      }
    }
    for (std::ptrdiff_t k = lo; k <= hi; ++k) H(k, k) += shift;
  }
  return eig;
}

void sort_eigenvalues(std::vector<Complex>& eig) {
  std::stable_sort(eig.begin(), eig.end(), [](const Complex& a, const Complex& b) {
    return std::abs(a) > std::abs(b);
  });
  // Within modulus ties order by argument ascending.
  std::size_t start = 0;
  while (start < eig.size()) {
    std::size_t end = start + 1;
    const double lead = std::abs(eig[start]);
    while (end < eig.size() &&
           lead - std::abs(eig[end]) <= 1e-10 * std::max(1.0, lead)) {
      ++end;
    }
    std::stable_sort(eig.begin() + start, eig.begin() + end,
                     [](const Complex& a, const Complex& b) { return std::arg(a) < std::arg(b); });
    start = end;
  }
}

// Solves (A - shift I) x = b by LU with partial pivoting. Tiny pivots are
// replaced by `floor` so the near-singular solve used by inverse iteration
// stays finite.
std::vector<Complex> shifted_solve(const Matrix& a, Complex shift, std::vector<Complex> b,
                                   double floor) {
  const std::size_t n = a.size();
  std::vector<Complex> lu(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < n; ++i) lu[i * n + i] -= shift;
  std::vector<std::size_t> piv(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu[i * n + k]) > std::abs(lu[p * n + k])) p = i;
    piv[k] = p;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[p * n + j]);
      std::swap(b[k], b[p]);
    }
    if (std::abs(lu[k * n + k]) < floor) lu[k * n + k] = floor;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu[i * n + k] / lu[k * n + k];
      lu[i * n + k] = f;
      for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] -= f * lu[k * n + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<Complex> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Complex s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= lu[ii * n + j] * x[j];
    x[ii] = s / lu[ii * n + ii];
  }
  return x;
}

void normalize(std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  s = std::sqrt(s);
  if (s > 0.0)
    for (auto& z : v) z /= s;
}

std::vector<Complex> inverse_iteration(const Matrix& a, Complex lambda, double scale) {
  const std::size_t n = a.size();
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Complex(1.0 + 0.1 * static_cast<double>(i), 0.05 * static_cast<double>(i % 3));
  normalize(v);
  const double floor = std::numeric_limits<double>::epsilon() * scale;
  for (int it = 0; it < 3; ++it) {
    v = shifted_solve(a, lambda, std::move(v), floor);
    normalize(v);
  }
  return v;
}

}  // namespace

HermitianEigen hermitian_eigen(const Matrix& h) {
  h.validate();
  const std::size_t n = h.size();
  Matrix a = h;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) a(j, i) = std::conj(a(i, j));
  }
  Matrix v = Matrix::identity(n);

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      diag += std::norm(a(p, p));
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    }
    if (off == 0.0 || off <= 1e-32 * diag) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (mag <= 1e-18 * (std::abs(app) + std::abs(aqq)) && sweep > 3) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex phase = std::conj(apq) / mag;  // e^{-i arg(apq)}
        // W = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const Complex w00 = c;
        const Complex w01 = s;
        const Complex w10 = -s * phase;
        const Complex w11 = c * phase;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = a(k, p);
          const Complex y = a(k, q);
          a(k, p) = x * w00 + y * w10;
          a(k, q) = x * w01 + y * w11;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = a(p, k);
          const Complex y = a(q, k);
          a(p, k) = std::conj(w00) * x + std::conj(w10) * y;
          a(q, k) = std::conj(w01) * x + std::conj(w11) * y;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex x = v(k, p);
          const Complex y = v(k, q);
          v(k, p) = x * w00 + y * w10;
          v(k, q) = x * w01 + y * w11;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });
  HermitianEigen out{std::vector<double>(n), Matrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<Complex> eigenvalues(const Matrix& m) {
  m.validate();
  const std::size_t n = m.size();
  std::vector<Complex> h(m.entries().begin(), m.entries().end());
  reduce_to_hessenberg(h, n);
  auto eig = hessenberg_qr_eigenvalues(std::move(h), n, frobenius_norm(m));
  sort_eigenvalues(eig);
  return eig;
}

std::vector<double> singular_values(const Matrix& m) {
  m.validate();
  const auto eig = hermitian_eigen(m.adjoint() * m);
  std::vector<double> out(eig.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(std::max(0.0, eig.values[i]));
  return out;
}

double spectral_norm(const Matrix& m) { return singular_values(m).front(); }

double spectral_radius(const Matrix& m) { return std::abs(eigenvalues(m).front()); }

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

NormalityCheck is_normal(const Matrix& m, double tol) {
  m.validate();
  const Matrix adj = m.adjoint();
  const double residual = frobenius_norm(adj * m - m * adj);
  const double f = frobenius_norm(m);
  return {residual <= tol * std::max(1.0, f * f), residual};
}

SpectralSummary spectral_summary(const Matrix& m) {
  auto sv = singular_values(m);
  const double sigma = sv.front();
  return {sigma, spectral_radius(m), std::move(sv), frobenius_norm(m)};
}

DominantEigenpair dominant_eigenpair(const Matrix& m) {
  const Complex lambda = eigenvalues(m).front();
  const double scale = std::max(frobenius_norm(m), std::numeric_limits<double>::min());
  return {lambda, inverse_iteration(m, lambda, scale),
          inverse_iteration(m.adjoint(), std::conj(lambda), scale)};
}

Complex determinant(const Matrix& m) {
  m.validate();
  const std::size_t n = m.size();
  std::vector<Complex> lu(m.entries().begin(), m.entries().end());
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu[i * n + k]) > std::abs(lu[p * n + k])) p = i;
    if (lu[p * n + k] == Complex{}) return Complex{};
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[p * n + j]);
      det = -det;
    }
    det *= lu[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu[i * n + k] / lu[k * n + k];
      for (std::size_t j = k + 1; j < n; ++j) lu[i * n + j] -= f * lu[k * n + j];
    }
  }
  return det;
}

Matrix orthonormalize_columns(const Matrix& x) {
  const std::size_t n = x.size();
  Matrix q(n);
  std::size_t next_basis = 0;
  const double scale = std::max(x.max_abs(), 1e-300);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Complex> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = x(i, k);
    bool accepted = false;
    for (int attempt = 0; attempt <= static_cast<int>(n) && !accepted; ++attempt) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < k; ++j) {
          Complex dot{};
          for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, j)) * col[i];
          for (std::size_t i = 0; i < n; ++i) col[i] -= dot * q(i, j);
        }
      }
      double norm2 = 0.0;
      for (const auto& z : col) norm2 += std::norm(z);
      const double norm = std::sqrt(norm2);
      const double ref = attempt == 0 ? scale : 1.0;
      if (norm > 1e-10 * ref) {
        for (std::size_t i = 0; i < n; ++i) q(i, k) = col[i] / norm;
        accepted = true;
      } else {
        col.assign(n, Complex{});
        col[next_basis++ % n] = 1.0;
      }
    }
  }
  return q;
}

Matrix polar_factor(const Matrix& x) {
  x.validate();
  const std::size_t n = x.size();
  if (x.max_abs() == 0.0) return Matrix::identity(n);
  const auto eig = hermitian_eigen(x.adjoint() * x);
  const double smax = std::sqrt(std::max(0.0, eig.values.front()));
  Matrix u(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sqrt(std::max(0.0, eig.values[k]));
    if (s <= 1e-12 * smax) continue;  // left as zero, completed below
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc{};
      for (std::size_t j = 0; j < n; ++j) acc += x(i, j) * eig.vectors(j, k);
      u(i, k) = acc / s;
    }
  }
  u = orthonormalize_columns(u);
  return u * eig.vectors.adjoint();
}

}  // namespace mukit
